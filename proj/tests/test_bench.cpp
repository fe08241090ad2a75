#include <doctest.h>

#include <cmath>
#include <random>

#include <kronmul/bench.hpp>
#include <kronmul/benchmark_inputs.hpp>
#include <kronmul/naive.hpp>
#include <kronmul/poisson.hpp>

using namespace kronmul;

namespace
{

// Monomials of total degree <= n in d variables.
std::uint64_t simplex_count(std::uint64_t n, std::uint64_t d)
{
    std::uint64_t num = 1, den = 1;
    for (std::uint64_t k = 1; k <= d; ++k) {
        num *= n + k;
        den *= k;
    }
    return num / den;
}

} // namespace

TEST_CASE("fateman generator")
{
    SUBCASE("n = 1 is the five-term base")
    {
        const auto [f, g] = gen_fateman<big_int>(1);
        CHECK(f.size() == 5);
        CHECK(g.size() == 5);
    }
    SUBCASE("term counts follow the simplex formula")
    {
        for (unsigned n : {2u, 3u, 5u, 20u}) {
            const auto [f, g] = gen_fateman<big_int>(n);
            CHECK(f.size() == simplex_count(n, 4));
            CHECK(g.size() == simplex_count(n, 4));
        }
        CHECK(simplex_count(20, 4) == 10626);
    }
    SUBCASE("matches naive repeated multiplication at small n")
    {
        laurent_polynomial<big_int> base(4);
        base.push_term(big_int(1), {0, 0, 0, 0});
        base.push_term(big_int(1), {1, 0, 0, 0});
        base.push_term(big_int(1), {0, 1, 0, 0});
        base.push_term(big_int(1), {0, 0, 1, 0});
        base.push_term(big_int(1), {0, 0, 0, 1});
        auto expected = base;
        for (int k = 1; k < 4; ++k) {
            expected = naive_multiply(expected, base);
        }
        const auto [f, g] = gen_fateman<big_int>(4);
        CHECK(poly_equal(f, expected));
        CHECK(poly_equal(g, add_constant(expected, big_int(1))));
    }
    SUBCASE("power zero is rejected")
    {
        CHECK_THROWS_AS(gen_fateman<big_int>(0), std::invalid_argument);
    }
}

TEST_CASE("mp-sparse generator")
{
    SUBCASE("n = 1 is the six-term base")
    {
        const auto [f, g] = gen_mp_sparse<big_int>(1);
        CHECK(f.size() == 6);
        CHECK(g.size() == 6);
    }
    SUBCASE("n = 4 equals direct naive expansion")
    {
        laurent_polynomial<big_int> base(5);
        base.push_term(big_int(1), {0, 0, 0, 0, 0});
        base.push_term(big_int(1), {1, 0, 0, 0, 0});
        base.push_term(big_int(1), {0, 1, 0, 0, 0});
        base.push_term(big_int(2), {0, 0, 2, 0, 0});
        base.push_term(big_int(3), {0, 0, 0, 3, 0});
        base.push_term(big_int(5), {0, 0, 0, 0, 5});
        auto expected = base;
        for (int k = 1; k < 4; ++k) {
            expected = naive_multiply(expected, base);
        }
        const auto [f, g] = gen_mp_sparse<big_int>(4);
        CHECK(poly_equal(f, expected));
        CHECK(f.size() == simplex_count(4, 5));
    }
}

TEST_CASE("poisson benchmark generator")
{
    SUBCASE("power one is the raw generator output")
    {
        const auto direct = random_fourier_series(77, 4, 50, 8);
        const auto bench = gen_poisson_bench(77, 50, 1);
        REQUIRE(bench.size() == direct.size());
        for (std::size_t i = 0; i < bench.size(); ++i) {
            CHECK(bench.terms()[i].coeff == direct.terms()[i].coeff);
            CHECK(bench.terms()[i].multipliers == direct.terms()[i].multipliers);
        }
    }
    SUBCASE("deterministic for a fixed seed")
    {
        const auto a = gen_poisson_bench(5, 30, 2);
        const auto b = gen_poisson_bench(5, 30, 2);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a.terms()[i].coeff == b.terms()[i].coeff);
            CHECK(a.terms()[i].multipliers == b.terms()[i].multipliers);
            CHECK(a.terms()[i].flavor == b.terms()[i].flavor);
        }
    }
    SUBCASE("squared series satisfies the evaluation identity")
    {
        const auto base = random_fourier_series(9, 3, 25, 6);
        const auto squared = gen_poisson_bench(9, 25, 2, 3, 6);
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> d(-3.0, 3.0);
        for (int k = 0; k < 20; ++k) {
            const std::vector<double> angles{d(rng), d(rng), d(rng)};
            const double b = evaluate(base, angles);
            CHECK(evaluate(squared, angles) == doctest::Approx(b * b).epsilon(1e-9));
        }
    }
}

TEST_CASE("ccpm formula")
{
    // 4.29 seconds at 2.4 GHz over 46376^2 monomial pairs.
    const double c = compute_ccpm(4.29, 2.4e9, 46376, 46376);
    CHECK(std::abs(c - 4.8) < 0.05);

    // Self-consistency: recomputing from the emitted fields reproduces it.
    const double wall = 1.234;
    const double hz = 3.1e9;
    const double emitted = compute_ccpm(wall, hz, 1000, 2000);
    CHECK(emitted == doctest::Approx(wall * hz / 2.0e6));
}
