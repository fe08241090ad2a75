#ifndef KRONMUL_POISSON_HPP
#define KRONMUL_POISSON_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include <kronmul/analysis.hpp>
#include <kronmul/coefficients.hpp>
#include <kronmul/hash_mult.hpp>
#include <kronmul/kronecker.hpp>
#include <kronmul/multiindex.hpp>

namespace kronmul
{

enum class trig_flavor : std::uint8_t { cos = 0, sin = 1 };

template <coefficient_ring C>
struct trig_term {
    C coeff;
    multiindex multipliers;
    trig_flavor flavor;
};

// Fourier series: cos/sin terms over integer combinations of angle
// variables. Canonical form: the highest-index nonzero multiplier of every
// term is positive (equivalently, the raw trig code is nonnegative), no sin
// term has all-zero multipliers, and (multipliers, flavor) pairs are unique.
template <coefficient_ring C>
class poisson_series
{
public:
    poisson_series() : num_trig_vars_(0) {}
    explicit poisson_series(std::size_t num_trig_vars) : num_trig_vars_(num_trig_vars) {}

    std::size_t num_trig_vars() const
    {
        return num_trig_vars_;
    }
    const std::vector<trig_term<C>> &terms() const
    {
        return terms_;
    }
    bool empty() const
    {
        return terms_.empty();
    }
    std::size_t size() const
    {
        return terms_.size();
    }

    void push_term(C coeff, multiindex multipliers, trig_flavor flavor)
    {
        if (multipliers.size() != num_trig_vars_) {
            throw std::invalid_argument("trig multiindex length does not match variable count");
        }
        terms_.push_back({std::move(coeff), std::move(multipliers), flavor});
    }

private:
    std::size_t num_trig_vars_;
    std::vector<trig_term<C>> terms_;
};

namespace detail
{

// Flip the multiplier vector (and the sign, for sin) so the highest-index
// nonzero multiplier is positive; returns false for a vanishing sin(0) term.
template <coefficient_ring C>
bool canonicalize_trig_term(trig_term<C> &t)
{
    std::size_t top = t.multipliers.size();
    for (std::size_t k = t.multipliers.size(); k-- > 0;) {
        if (t.multipliers[k] != 0) {
            top = k;
            break;
        }
    }
    if (top == t.multipliers.size()) {
        return t.flavor == trig_flavor::cos;
    }
    if (t.multipliers[top] < 0) {
        t.multipliers = negate(t.multipliers);
        if (t.flavor == trig_flavor::sin) {
            t.coeff = -t.coeff;
        }
    }
    return true;
}

} // namespace detail

template <coefficient_ring C>
poisson_series<C> canonicalize_poisson(const poisson_series<C> &s)
{
    std::vector<trig_term<C>> terms;
    terms.reserve(s.size());
    for (auto t : s.terms()) {
        if (detail::canonicalize_trig_term(t)) {
            terms.push_back(std::move(t));
        }
    }
    std::sort(terms.begin(), terms.end(), [](const trig_term<C> &a, const trig_term<C> &b) {
        if (a.multipliers != b.multipliers) {
            return a.multipliers < b.multipliers;
        }
        return a.flavor < b.flavor;
    });
    std::vector<trig_term<C>> merged;
    merged.reserve(terms.size());
    for (auto &t : terms) {
        if (!merged.empty() && merged.back().multipliers == t.multipliers
            && merged.back().flavor == t.flavor) {
            merged.back().coeff += t.coeff;
        } else {
            merged.push_back(std::move(t));
        }
    }
    poisson_series<C> result(s.num_trig_vars());
    for (auto &t : merged) {
        if (!coeff_traits<C>::is_zero(t.coeff)) {
            result.push_term(std::move(t.coeff), std::move(t.multipliers), t.flavor);
        }
    }
    return result;
}

template <coefficient_ring C>
std::optional<range_spec> trig_ranges(const poisson_series<C> &s)
{
    if (s.empty()) {
        return std::nullopt;
    }
    range_spec r{s.terms().front().multipliers, s.terms().front().multipliers};
    for (const auto &t : s.terms()) {
        for (std::size_t k = 0; k < t.multipliers.size(); ++k) {
            r.lower[k] = std::min(r.lower[k], t.multipliers[k]);
            r.upper[k] = std::max(r.upper[k], t.multipliers[k]);
        }
    }
    return r;
}

namespace detail
{

// Pair of accumulators keyed by canonical (nonnegative) raw trig codes; the
// sin side drops writes at code 0.
template <coefficient_ring C>
class trig_accumulator_pair
{
public:
    // Dense flavor.
    explicit trig_accumulator_pair(std::int64_t max_raw)
        : dense_(true), cos_dense_(static_cast<std::size_t>(max_raw) + 1),
          sin_dense_(static_cast<std::size_t>(max_raw) + 1)
    {
    }

    // Hash flavor.
    trig_accumulator_pair(const hash_params &params, std::uint64_t expected_inserts)
        : dense_(false), cos_table_(std::in_place, params, expected_inserts),
          sin_table_(std::in_place, params, expected_inserts)
    {
    }

    void add_cos(std::int64_t raw, const C &v)
    {
        if (raw < 0) {
            raw = -raw;
        }
        if (dense_) {
            cos_dense_[static_cast<std::size_t>(raw)] += v;
        } else {
            cos_table_->insert(raw, v);
        }
    }

    void add_sin(std::int64_t raw, const C &v)
    {
        if (raw == 0) {
            return;
        }
        if (raw < 0) {
            if (dense_) {
                sin_dense_[static_cast<std::size_t>(-raw)] += -v;
            } else {
                sin_table_->insert(-raw, -v);
            }
        } else {
            if (dense_) {
                sin_dense_[static_cast<std::size_t>(raw)] += v;
            } else {
                sin_table_->insert(raw, v);
            }
        }
    }

    // (raw code, coefficient) pairs with zeros dropped, ascending by code.
    std::vector<std::pair<std::int64_t, C>> collect(trig_flavor flavor) const
    {
        std::vector<std::pair<std::int64_t, C>> out;
        if (dense_) {
            const auto &arr = flavor == trig_flavor::cos ? cos_dense_ : sin_dense_;
            for (std::size_t i = 0; i < arr.size(); ++i) {
                if (!coeff_traits<C>::is_zero(arr[i])) {
                    out.emplace_back(static_cast<std::int64_t>(i), arr[i]);
                }
            }
        } else {
            const auto &table = flavor == trig_flavor::cos ? cos_table_ : sin_table_;
            for (const auto &e : table->snapshot()) {
                if (!coeff_traits<C>::is_zero(e.coeff)) {
                    out.emplace_back(e.code, e.coeff);
                }
            }
            std::sort(out.begin(), out.end(),
                      [](const auto &a, const auto &b) { return a.first < b.first; });
        }
        return out;
    }

private:
    bool dense_;
    std::vector<C> cos_dense_;
    std::vector<C> sin_dense_;
    std::optional<bucket_table<C>> cos_table_;
    std::optional<bucket_table<C>> sin_table_;
};

} // namespace detail

// Poisson series multiplication through the product-to-sum identities: each
// term pair contributes at the raw-code sum and difference, with the
// half-coefficient applied once at extraction. Negative result codes are
// folded back (cos keeps the coefficient, sin negates it).
template <coefficient_ring C>
poisson_series<C> multiply_poisson(const poisson_series<C> &s1_in, const poisson_series<C> &s2_in,
                                   algo_kind backend = algo_kind::dense,
                                   const hash_params &params = {}, const block_plan &plan = {})
{
    if (s1_in.num_trig_vars() != s2_in.num_trig_vars()) {
        throw std::invalid_argument("multiplying Poisson series with different variable counts");
    }
    const poisson_series<C> s1 = canonicalize_poisson(s1_in);
    const poisson_series<C> s2 = canonicalize_poisson(s2_in);
    if (s1.empty() || s2.empty()) {
        return poisson_series<C>(s1_in.num_trig_vars());
    }

    const codec cd(product_ranges(*trig_ranges(s1), *trig_ranges(s2), combine_mode::subtractive));
    const std::int64_t max_raw = (cd.capacity() - 1) / 2;

    struct flat_term {
        C coeff;
        std::int64_t raw;
        trig_flavor flavor;
    };
    auto flatten = [&cd](const poisson_series<C> &s) {
        std::vector<flat_term> out;
        out.reserve(s.size());
        for (const auto &t : s.terms()) {
            out.push_back({t.coeff, cd.raw_code(t.multipliers), t.flavor});
        }
        std::sort(out.begin(), out.end(),
                  [](const flat_term &a, const flat_term &b) { return a.raw < b.raw; });
        return out;
    };
    const auto f1 = flatten(s1);
    const auto f2 = flatten(s2);

    auto acc = backend == algo_kind::dense
                   ? detail::trig_accumulator_pair<C>(max_raw)
                   : detail::trig_accumulator_pair<C>(
                         params, static_cast<std::uint64_t>(f1.size()) * f2.size());

    const std::size_t nb1 = plan.block_count(f1.size());
    const std::size_t nb2 = plan.block_count(f2.size());
    for (std::size_t b1 = 0; b1 < nb1; ++b1) {
        const std::size_t i0 = plan.block_begin(b1);
        const std::size_t i1 = plan.block_end(f1.size(), b1);
        for (std::size_t b2 = 0; b2 < nb2; ++b2) {
            const std::size_t j0 = plan.block_begin(b2);
            const std::size_t j1 = plan.block_end(f2.size(), b2);
            for (std::size_t i = i0; i < i1; ++i) {
                const C &c1 = f1[i].coeff;
                const std::int64_t r1 = f1[i].raw;
                const bool s1_sin = f1[i].flavor == trig_flavor::sin;
                for (std::size_t j = j0; j < j1; ++j) {
                    const C c = c1 * f2[j].coeff;
                    const std::int64_t rsum = r1 + f2[j].raw;
                    const std::int64_t rdiff = r1 - f2[j].raw;
                    const bool s2_sin = f2[j].flavor == trig_flavor::sin;
                    if (!s1_sin && !s2_sin) {
                        acc.add_cos(rdiff, c);
                        acc.add_cos(rsum, c);
                    } else if (!s1_sin && s2_sin) {
                        acc.add_sin(rsum, c);
                        acc.add_sin(rdiff, -c);
                    } else if (s1_sin && !s2_sin) {
                        acc.add_sin(rdiff, c);
                        acc.add_sin(rsum, c);
                    } else {
                        acc.add_cos(rdiff, c);
                        acc.add_cos(rsum, -c);
                    }
                }
            }
        }
    }

    poisson_series<C> out(s1.num_trig_vars());
    auto emit = [&](trig_flavor flavor) {
        for (auto &entry : acc.collect(flavor)) {
            out.push_term(coeff_traits<C>::halve(entry.second), cd.decode_raw(entry.first), flavor);
        }
    };
    emit(trig_flavor::cos);
    emit(trig_flavor::sin);
    return canonicalize_poisson(out);
}

// Numeric evaluation at an angle vector; the test oracle for the
// multiplication identities.
template <coefficient_ring C>
double evaluate(const poisson_series<C> &s, const std::vector<double> &angles)
{
    if (angles.size() != s.num_trig_vars()) {
        throw std::invalid_argument("angle count does not match trig variable count");
    }
    double total = 0.0;
    for (const auto &t : s.terms()) {
        double arg = 0.0;
        for (std::size_t k = 0; k < angles.size(); ++k) {
            arg += static_cast<double>(t.multipliers[k]) * angles[k];
        }
        const double w = t.flavor == trig_flavor::cos ? std::cos(arg) : std::sin(arg);
        total += coeff_traits<C>::to_double(t.coeff) * w;
    }
    return total;
}

// Seeded synthetic Fourier series: num_terms distinct canonical terms with
// multipliers in [-multiplier_range, multiplier_range] and coefficients in
// [-1, 1].
inline poisson_series<double> random_fourier_series(std::uint64_t seed, std::size_t num_vars,
                                                    std::size_t num_terms,
                                                    std::int64_t multiplier_range)
{
    if (multiplier_range < 0) {
        throw std::invalid_argument("multiplier range must be nonnegative");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> mult_dist(-multiplier_range, multiplier_range);
    std::uniform_real_distribution<double> coeff_dist(-1.0, 1.0);
    std::uniform_int_distribution<int> flavor_dist(0, 1);

    poisson_series<double> out(num_vars);
    std::set<std::pair<multiindex, trig_flavor>> seen;
    const std::size_t max_attempts = 1000 + 200 * num_terms;
    std::size_t attempts = 0;
    while (seen.size() < num_terms) {
        if (++attempts > max_attempts) {
            throw std::invalid_argument("multiplier range too small for the requested term count");
        }
        trig_term<double> t;
        t.coeff = coeff_dist(rng);
        t.multipliers.resize(num_vars);
        for (auto &j : t.multipliers) {
            j = mult_dist(rng);
        }
        t.flavor = flavor_dist(rng) == 0 ? trig_flavor::cos : trig_flavor::sin;
        if (!detail::canonicalize_trig_term(t) || t.coeff == 0.0) {
            continue;
        }
        if (!seen.insert({t.multipliers, t.flavor}).second) {
            continue;
        }
        out.push_term(t.coeff, std::move(t.multipliers), t.flavor);
    }
    return out;
}

} // namespace kronmul

#endif
