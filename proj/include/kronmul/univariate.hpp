#ifndef KRONMUL_UNIVARIATE_HPP
#define KRONMUL_UNIVARIATE_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include <kronmul/coefficients.hpp>
#include <kronmul/kronecker.hpp>
#include <kronmul/polynomial.hpp>

namespace kronmul
{

template <coefficient_ring C>
struct uni_term {
    C coeff;
    std::int64_t code;
};

// Univariate image of a multivariate polynomial under a Kronecker codec:
// sparse distributed form, one (coefficient, code) pair per monomial. Codes
// are normalized (in [0, capacity)) and unique; the dense path keeps them
// sorted ascending, the hash path re-sorts by code modulo the bucket count.
template <coefficient_ring C>
class univariate_series
{
public:
    univariate_series() = default;
    explicit univariate_series(codec cd) : codec_(std::move(cd)) {}
    univariate_series(codec cd, std::vector<uni_term<C>> terms)
        : codec_(std::move(cd)), terms_(std::move(terms))
    {
    }

    const codec &context() const
    {
        return codec_;
    }
    const std::vector<uni_term<C>> &terms() const
    {
        return terms_;
    }
    std::vector<uni_term<C>> &mutable_terms()
    {
        return terms_;
    }
    std::size_t size() const
    {
        return terms_.size();
    }
    bool empty() const
    {
        return terms_.empty();
    }

    void sort_ascending()
    {
        std::sort(terms_.begin(), terms_.end(),
                  [](const uni_term<C> &a, const uni_term<C> &b) { return a.code < b.code; });
    }

private:
    codec codec_;
    std::vector<uni_term<C>> terms_;
};

template <coefficient_ring C>
univariate_series<C> to_univariate(const laurent_polynomial<C> &p, const codec &cd)
{
    univariate_series<C> out(cd);
    out.mutable_terms().reserve(p.size());
    for (const auto &t : p.terms()) {
        out.mutable_terms().push_back({t.coeff, cd.encode(t.exponents)});
    }
    out.sort_ascending();
    return out;
}

template <coefficient_ring C>
laurent_polynomial<C> from_univariate(const univariate_series<C> &u)
{
    laurent_polynomial<C> out(u.context().var_count());
    for (const auto &t : u.terms()) {
        out.push_term(t.coeff, u.context().decode(t.code));
    }
    return out;
}

} // namespace kronmul

#endif
