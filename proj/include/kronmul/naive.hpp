#ifndef KRONMUL_NAIVE_HPP
#define KRONMUL_NAIVE_HPP

#include <map>

#include <kronmul/multiindex.hpp>
#include <kronmul/polynomial.hpp>

namespace kronmul
{

// Reference schoolbook product straight on the multivariate terms, keyed by
// exponent vector. No Kronecker codes anywhere: this is the independent
// route the fast kernels are checked against, and what `verify` runs.
template <coefficient_ring C>
laurent_polynomial<C> naive_multiply(const laurent_polynomial<C> &p1,
                                     const laurent_polynomial<C> &p2)
{
    if (p1.num_vars() != p2.num_vars()) {
        throw std::invalid_argument("multiplying polynomials with different variable counts");
    }
    std::map<multiindex, C> acc;
    for (const auto &t1 : p1.terms()) {
        for (const auto &t2 : p2.terms()) {
            acc[add(t1.exponents, t2.exponents)] += t1.coeff * t2.coeff;
        }
    }
    laurent_polynomial<C> out(p1.num_vars());
    for (auto &[e, c] : acc) {
        if (!coeff_traits<C>::is_zero(c)) {
            out.push_term(c, e);
        }
    }
    return out;
}

} // namespace kronmul

#endif
