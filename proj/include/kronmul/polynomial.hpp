#ifndef KRONMUL_POLYNOMIAL_HPP
#define KRONMUL_POLYNOMIAL_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <kronmul/coefficients.hpp>
#include <kronmul/kronecker.hpp>
#include <kronmul/multiindex.hpp>

namespace kronmul
{

template <coefficient_ring C>
struct poly_term {
    C coeff;
    multiindex exponents;
};

// Sparse multivariate Laurent polynomial. Canonical form: exponent
// multiindices unique, no zero coefficients, term order unspecified.
template <coefficient_ring C>
class laurent_polynomial
{
public:
    laurent_polynomial() : num_vars_(0) {}
    explicit laurent_polynomial(std::size_t num_vars) : num_vars_(num_vars) {}
    laurent_polynomial(std::size_t num_vars, std::vector<poly_term<C>> terms)
        : num_vars_(num_vars), terms_(std::move(terms))
    {
        for (const auto &t : terms_) {
            if (t.exponents.size() != num_vars_) {
                throw std::invalid_argument("term multiindex length does not match variable count");
            }
        }
    }

    std::size_t num_vars() const
    {
        return num_vars_;
    }
    const std::vector<poly_term<C>> &terms() const
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

    void push_term(C coeff, multiindex e)
    {
        if (e.size() != num_vars_) {
            throw std::invalid_argument("term multiindex length does not match variable count");
        }
        terms_.push_back({std::move(coeff), std::move(e)});
    }

private:
    std::size_t num_vars_;
    std::vector<poly_term<C>> terms_;
};

// Merge like terms and drop zero coefficients. Sort-and-merge, so the
// reference-map oracle in the tests stays an independent route.
template <coefficient_ring C>
laurent_polynomial<C> canonicalize_poly(const laurent_polynomial<C> &p)
{
    std::vector<poly_term<C>> terms(p.terms());
    std::sort(terms.begin(), terms.end(),
              [](const poly_term<C> &a, const poly_term<C> &b) { return a.exponents < b.exponents; });
    std::vector<poly_term<C>> out;
    out.reserve(terms.size());
    for (auto &t : terms) {
        if (!out.empty() && out.back().exponents == t.exponents) {
            out.back().coeff = out.back().coeff + t.coeff;
        } else {
            out.push_back(std::move(t));
        }
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const poly_term<C> &t) { return coeff_traits<C>::is_zero(t.coeff); }),
              out.end());
    return laurent_polynomial<C>(p.num_vars(), std::move(out));
}

// Component-wise bounds of the support; empty polynomials have none.
template <coefficient_ring C>
std::optional<range_spec> support_ranges(const laurent_polynomial<C> &p)
{
    if (p.empty()) {
        return std::nullopt;
    }
    range_spec r{p.terms().front().exponents, p.terms().front().exponents};
    for (const auto &t : p.terms()) {
        for (std::size_t k = 0; k < p.num_vars(); ++k) {
            r.lower[k] = std::min(r.lower[k], t.exponents[k]);
            r.upper[k] = std::max(r.upper[k], t.exponents[k]);
        }
    }
    return r;
}

template <coefficient_ring C>
laurent_polynomial<C> add(const laurent_polynomial<C> &p, const laurent_polynomial<C> &q)
{
    if (p.num_vars() != q.num_vars()) {
        throw std::invalid_argument("adding polynomials with different variable counts");
    }
    laurent_polynomial<C> out(p.num_vars());
    for (const auto &t : p.terms()) {
        out.push_term(t.coeff, t.exponents);
    }
    for (const auto &t : q.terms()) {
        out.push_term(t.coeff, t.exponents);
    }
    return canonicalize_poly(out);
}

template <coefficient_ring C>
laurent_polynomial<C> add_constant(const laurent_polynomial<C> &p, const C &c)
{
    laurent_polynomial<C> k(p.num_vars());
    k.push_term(c, multiindex(p.num_vars(), 0));
    return add(p, k);
}

// Restrict to terms of total degree <= limit.
template <coefficient_ring C>
laurent_polynomial<C> filter_by_degree(const laurent_polynomial<C> &p, std::int64_t limit)
{
    laurent_polynomial<C> out(p.num_vars());
    for (const auto &t : p.terms()) {
        if (total_degree(t.exponents) <= limit) {
            out.push_term(t.coeff, t.exponents);
        }
    }
    return out;
}

// Exact term-set equality of canonical forms.
template <coefficient_ring C>
bool poly_equal(const laurent_polynomial<C> &a, const laurent_polynomial<C> &b)
{
    if (a.num_vars() != b.num_vars()) {
        return false;
    }
    auto ca = canonicalize_poly(a).terms();
    auto cb = canonicalize_poly(b).terms();
    auto by_exponents = [](const poly_term<C> &x, const poly_term<C> &y) {
        return x.exponents < y.exponents;
    };
    std::sort(ca.begin(), ca.end(), by_exponents);
    std::sort(cb.begin(), cb.end(), by_exponents);
    if (ca.size() != cb.size()) {
        return false;
    }
    for (std::size_t i = 0; i < ca.size(); ++i) {
        if (ca[i].exponents != cb[i].exponents || !coeff_traits<C>::is_zero(ca[i].coeff + -cb[i].coeff)) {
            return false;
        }
    }
    return true;
}

// Same term sets with coefficients compared to relative tolerance; for
// floating-point cross-checks.
template <coefficient_ring C>
bool poly_close(const laurent_polynomial<C> &a, const laurent_polynomial<C> &b, double rtol)
{
    if (a.num_vars() != b.num_vars()) {
        return false;
    }
    auto ca = canonicalize_poly(a).terms();
    auto cb = canonicalize_poly(b).terms();
    auto by_exponents = [](const poly_term<C> &x, const poly_term<C> &y) {
        return x.exponents < y.exponents;
    };
    std::sort(ca.begin(), ca.end(), by_exponents);
    std::sort(cb.begin(), cb.end(), by_exponents);
    if (ca.size() != cb.size()) {
        return false;
    }
    for (std::size_t i = 0; i < ca.size(); ++i) {
        if (ca[i].exponents != cb[i].exponents) {
            return false;
        }
        const double x = coeff_traits<C>::to_double(ca[i].coeff);
        const double y = coeff_traits<C>::to_double(cb[i].coeff);
        if (std::abs(x - y) > rtol * (1.0 + std::max(std::abs(x), std::abs(y)))) {
            return false;
        }
    }
    return true;
}

// Sum of all coefficients; cheap cross-run checksum.
template <coefficient_ring C>
C coefficient_sum(const laurent_polynomial<C> &p)
{
    C s{};
    for (const auto &t : p.terms()) {
        s = s + t.coeff;
    }
    return s;
}

} // namespace kronmul

#endif
