#ifndef KRONMUL_BENCHMARK_INPUTS_HPP
#define KRONMUL_BENCHMARK_INPUTS_HPP

#include <cstdint>
#include <stdexcept>
#include <utility>

#include <kronmul/multiply.hpp>
#include <kronmul/poisson.hpp>
#include <kronmul/polynomial.hpp>

namespace kronmul
{

// base^n by binary powering; every multiplication goes through the library's
// own kernels with a fresh product codec sized to the actual supports.
template <coefficient_ring C>
laurent_polynomial<C> power_polynomial(const laurent_polynomial<C> &base, unsigned n,
                                       const mult_options &opts = {})
{
    if (n == 0) {
        laurent_polynomial<C> one(base.num_vars());
        one.push_term(C(1), multiindex(base.num_vars(), 0));
        return one;
    }
    laurent_polynomial<C> result = canonicalize_poly(base);
    laurent_polynomial<C> square = result;
    unsigned remaining = n - 1;
    while (remaining > 0) {
        if (remaining & 1) {
            result = multiply(result, square, opts).product;
        }
        remaining >>= 1;
        if (remaining > 0) {
            square = multiply(square, square, opts).product;
        }
    }
    return result;
}

// f = (1 + x + y + z + t)^n, g = f + 1.
template <coefficient_ring C>
std::pair<laurent_polynomial<C>, laurent_polynomial<C>> gen_fateman(unsigned n)
{
    if (n == 0) {
        throw std::invalid_argument("fateman power must be >= 1");
    }
    // Fail fast when f itself has no representable codec.
    (void)codec(range_spec{multiindex(4, 0), multiindex(4, n)});
    laurent_polynomial<C> base(4);
    base.push_term(C(1), {0, 0, 0, 0});
    base.push_term(C(1), {1, 0, 0, 0});
    base.push_term(C(1), {0, 1, 0, 0});
    base.push_term(C(1), {0, 0, 1, 0});
    base.push_term(C(1), {0, 0, 0, 1});
    auto f = power_polynomial(base, n);
    auto g = add_constant(f, C(1));
    return {std::move(f), std::move(g)};
}

// f = (1 + x + y + 2z^2 + 3t^3 + 5u^5)^n, g with the variables reversed.
template <coefficient_ring C>
std::pair<laurent_polynomial<C>, laurent_polynomial<C>> gen_mp_sparse(unsigned n)
{
    if (n == 0) {
        throw std::invalid_argument("mp-sparse power must be >= 1");
    }
    laurent_polynomial<C> base_f(5);
    base_f.push_term(C(1), {0, 0, 0, 0, 0});
    base_f.push_term(C(1), {1, 0, 0, 0, 0});
    base_f.push_term(C(1), {0, 1, 0, 0, 0});
    base_f.push_term(C(2), {0, 0, 2, 0, 0});
    base_f.push_term(C(3), {0, 0, 0, 3, 0});
    base_f.push_term(C(5), {0, 0, 0, 0, 5});
    laurent_polynomial<C> base_g(5);
    base_g.push_term(C(1), {0, 0, 0, 0, 0});
    base_g.push_term(C(1), {0, 0, 0, 0, 1});
    base_g.push_term(C(1), {0, 0, 0, 1, 0});
    base_g.push_term(C(2), {0, 0, 2, 0, 0});
    base_g.push_term(C(3), {0, 3, 0, 0, 0});
    base_g.push_term(C(5), {5, 0, 0, 0, 0});
    return {power_polynomial(base_f, n), power_polynomial(base_g, n)};
}

// Synthetic Poisson benchmark input: a seeded random Fourier series raised
// to `power` through the Poisson multiplier.
inline poisson_series<double> gen_poisson_bench(std::uint64_t seed, std::size_t terms,
                                                unsigned power, std::size_t num_vars = 4,
                                                std::int64_t multiplier_range = 8)
{
    if (power == 0) {
        throw std::invalid_argument("poisson power must be >= 1");
    }
    const auto base = random_fourier_series(seed, num_vars, terms, multiplier_range);
    poisson_series<double> result = base;
    for (unsigned k = 1; k < power; ++k) {
        result = multiply_poisson(result, base);
    }
    return result;
}

} // namespace kronmul

#endif
