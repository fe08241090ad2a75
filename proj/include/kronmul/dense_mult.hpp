#ifndef KRONMUL_DENSE_MULT_HPP
#define KRONMUL_DENSE_MULT_HPP

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include <kronmul/blocking.hpp>
#include <kronmul/coefficients.hpp>
#include <kronmul/univariate.hpp>

namespace kronmul
{

// Dense distributed accumulator: one coefficient slot per normalized code,
// zero-initialized. The positional index IS the exponent.
template <coefficient_ring C>
class dense_accumulator
{
public:
    explicit dense_accumulator(codec cd)
        : codec_(std::move(cd)), coeffs_(static_cast<std::size_t>(codec_.capacity()))
    {
    }

    const codec &context() const
    {
        return codec_;
    }

    C &operator[](std::int64_t idx)
    {
        assert(idx >= 0 && idx < codec_.capacity());
        return coeffs_[static_cast<std::size_t>(idx)];
    }

    // Sweep ascending, drop zeros, hand back the sparse form.
    univariate_series<C> extract_sorted() const
    {
        univariate_series<C> out(codec_);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (!coeff_traits<C>::is_zero(coeffs_[i])) {
                out.mutable_terms().push_back({coeffs_[i], static_cast<std::int64_t>(i)});
            }
        }
        return out;
    }

private:
    codec codec_;
    std::vector<C> coeffs_;
};

// One record per monomial-by-monomial multiplication, in execution order:
// which output slot (or bucket) the write touched.
struct trace_entry {
    std::uint64_t step;
    std::int64_t location;
};

inline void write_trace_csv(const std::vector<trace_entry> &trace, std::ostream &os)
{
    os << "step,location\n";
    for (const auto &e : trace) {
        os << e.step << ',' << e.location << '\n';
    }
}

namespace detail
{

template <coefficient_ring C>
void check_shared_context(const univariate_series<C> &u1, const univariate_series<C> &u2)
{
    if (!(u1.context() == u2.context())) {
        throw std::invalid_argument("factors are encoded with different codecs");
    }
}

// Block-by-block schoolbook accumulation. Every term of each block of u1
// multiplies every term of each block of u2 before the next block pair
// starts; the target slot of code pair (n1, n2) is n1 + n2 + chi.
template <coefficient_ring C, typename Sink>
void accumulate_blocked(const univariate_series<C> &u1, const univariate_series<C> &u2,
                        const block_plan &plan, dense_accumulator<C> &acc, Sink &&sink)
{
    const auto &t1 = u1.terms();
    const auto &t2 = u2.terms();
    const std::int64_t chi = u1.context().offset();
    const std::size_t nb1 = plan.block_count(t1.size());
    const std::size_t nb2 = plan.block_count(t2.size());
    std::uint64_t step = 0;
    for (std::size_t b1 = 0; b1 < nb1; ++b1) {
        const std::size_t i0 = plan.block_begin(b1);
        const std::size_t i1 = plan.block_end(t1.size(), b1);
        for (std::size_t b2 = 0; b2 < nb2; ++b2) {
            const std::size_t j0 = plan.block_begin(b2);
            const std::size_t j1 = plan.block_end(t2.size(), b2);
            for (std::size_t i = i0; i < i1; ++i) {
                const C &c1 = t1[i].coeff;
                const std::int64_t base = t1[i].code + chi;
                for (std::size_t j = j0; j < j1; ++j) {
                    const std::int64_t idx = base + t2[j].code;
                    acc[idx] += c1 * t2[j].coeff;
                    sink(step++, idx);
                }
            }
        }
    }
}

struct null_sink {
    void operator()(std::uint64_t, std::int64_t) const {}
};

} // namespace detail

// Moderately-sparse multiplication: schoolbook into a dense coefficient
// array, block by block. Factors must be sorted ascending and share the
// product codec.
template <coefficient_ring C>
univariate_series<C> multiply_dense(const univariate_series<C> &u1, const univariate_series<C> &u2,
                                    const block_plan &plan)
{
    detail::check_shared_context(u1, u2);
    dense_accumulator<C> acc(u1.context());
    detail::accumulate_blocked(u1, u2, plan, acc, detail::null_sink{});
    return acc.extract_sorted();
}

// Same multiplication, recording the target slot of every write.
template <coefficient_ring C>
std::vector<trace_entry> write_trace(const univariate_series<C> &u1, const univariate_series<C> &u2,
                                     const block_plan &plan)
{
    detail::check_shared_context(u1, u2);
    dense_accumulator<C> acc(u1.context());
    std::vector<trace_entry> trace;
    trace.reserve(u1.size() * u2.size());
    detail::accumulate_blocked(u1, u2, plan, acc,
                               [&trace](std::uint64_t step, std::int64_t loc) {
                                   trace.push_back({step, loc});
                               });
    return trace;
}

// Truncated multiplication: only terms of total multivariate degree <= limit
// are produced. Blocks keep their ascending-code boundaries, but terms are
// reordered inside each block by ascending degree so the inner loops can
// break as soon as deg(t1) + deg(t2) exceeds the limit, skipping products
// instead of computing and discarding them.
template <coefficient_ring C>
univariate_series<C> multiply_dense_truncated(const univariate_series<C> &u1,
                                              const univariate_series<C> &u2,
                                              const block_plan &plan, std::int64_t limit)
{
    detail::check_shared_context(u1, u2);
    const codec &cd = u1.context();

    struct work_term {
        C coeff;
        std::int64_t code;
        std::int64_t degree;
    };
    auto prepare = [&cd, &plan](const univariate_series<C> &u) {
        std::vector<work_term> w;
        w.reserve(u.size());
        for (const auto &t : u.terms()) {
            w.push_back({t.coeff, t.code, total_degree(cd.decode(t.code))});
        }
        const std::size_t nb = plan.block_count(w.size());
        for (std::size_t b = 0; b < nb; ++b) {
            std::sort(w.begin() + plan.block_begin(b), w.begin() + plan.block_end(w.size(), b),
                      [](const work_term &a, const work_term &x) {
                          return a.degree != x.degree ? a.degree < x.degree : a.code < x.code;
                      });
        }
        return w;
    };
    const auto w1 = prepare(u1);
    const auto w2 = prepare(u2);

    dense_accumulator<C> acc(cd);
    const std::int64_t chi = cd.offset();
    const std::size_t nb1 = plan.block_count(w1.size());
    const std::size_t nb2 = plan.block_count(w2.size());
    for (std::size_t b1 = 0; b1 < nb1; ++b1) {
        const std::size_t i0 = plan.block_begin(b1);
        const std::size_t i1 = plan.block_end(w1.size(), b1);
        for (std::size_t b2 = 0; b2 < nb2; ++b2) {
            const std::size_t j0 = plan.block_begin(b2);
            const std::size_t j1 = plan.block_end(w2.size(), b2);
            if (j0 == j1) {
                continue;
            }
            const std::int64_t min_deg2 = w2[j0].degree;
            for (std::size_t i = i0; i < i1; ++i) {
                if (w1[i].degree + min_deg2 > limit) {
                    break;
                }
                const C &c1 = w1[i].coeff;
                const std::int64_t deg1 = w1[i].degree;
                const std::int64_t base = w1[i].code + chi;
                for (std::size_t j = j0; j < j1; ++j) {
                    if (deg1 + w2[j].degree > limit) {
                        break;
                    }
                    const std::int64_t idx = base + w2[j].code;
                    acc[idx] += c1 * w2[j].coeff;
                }
            }
        }
    }
    return acc.extract_sorted();
}

} // namespace kronmul

#endif
