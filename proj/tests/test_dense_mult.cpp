#include <doctest.h>

#include <cstdint>
#include <random>
#include <sstream>
#include <vector>

#include <kronmul/dense_mult.hpp>
#include <kronmul/multiply.hpp>
#include <kronmul/naive.hpp>
#include <kronmul/polynomial.hpp>
#include <kronmul/univariate.hpp>

using namespace kronmul;

namespace
{

laurent_polynomial<big_int> random_laurent(std::mt19937_64 &rng, std::size_t vars)
{
    std::uniform_int_distribution<std::size_t> term_dist(1, 50);
    std::uniform_int_distribution<std::int64_t> exp_dist(-5, 5);
    std::uniform_int_distribution<int> coeff_dist(-10, 10);
    laurent_polynomial<big_int> p(vars);
    const std::size_t terms = term_dist(rng);
    for (std::size_t t = 0; t < terms; ++t) {
        multiindex e(vars);
        for (auto &x : e) {
            x = exp_dist(rng);
        }
        p.push_term(big_int(coeff_dist(rng)), std::move(e));
    }
    return canonicalize_poly(p);
}

// A pair of non-empty factors over the same variables.
std::pair<laurent_polynomial<big_int>, laurent_polynomial<big_int>>
random_laurent_pair(std::mt19937_64 &rng)
{
    const std::size_t vars = 1 + rng() % 4;
    auto p1 = random_laurent(rng, vars);
    auto p2 = random_laurent(rng, vars);
    while (p1.empty()) {
        p1 = random_laurent(rng, vars);
    }
    while (p2.empty()) {
        p2 = random_laurent(rng, vars);
    }
    return {std::move(p1), std::move(p2)};
}

template <coefficient_ring C>
std::pair<univariate_series<C>, univariate_series<C>> encode_pair(const laurent_polynomial<C> &p1,
                                                                  const laurent_polynomial<C> &p2)
{
    const auto r1 = *support_ranges(p1);
    const auto r2 = *support_ranges(p2);
    const codec cd(hull_ranges(hull_ranges(r1, r2), product_ranges(r1, r2, combine_mode::additive)));
    return {to_univariate(p1, cd), to_univariate(p2, cd)};
}

// (1 + x)^1 as a one-variable polynomial.
laurent_polynomial<big_int> one_plus_x()
{
    laurent_polynomial<big_int> p(1);
    p.push_term(big_int(1), {0});
    p.push_term(big_int(1), {1});
    return p;
}

} // namespace

TEST_CASE("square of 1 + x")
{
    const auto p = one_plus_x();
    const auto [u1, u2] = encode_pair(p, p);
    const auto prod = from_univariate(multiply_dense(u1, u2, block_plan::with_size(2)));
    laurent_polynomial<big_int> expected(1);
    expected.push_term(big_int(1), {0});
    expected.push_term(big_int(2), {1});
    expected.push_term(big_int(1), {2});
    CHECK(poly_equal(prod, expected));
}

TEST_CASE("low-power Fateman products have the stars-and-bars term count")
{
    // (1+x+y+z+t)^2 * ((1+x+y+z+t)^2 + 1): support is every monomial of
    // total degree <= 4 in four variables.
    laurent_polynomial<big_int> base(4);
    base.push_term(big_int(1), {0, 0, 0, 0});
    base.push_term(big_int(1), {1, 0, 0, 0});
    base.push_term(big_int(1), {0, 1, 0, 0});
    base.push_term(big_int(1), {0, 0, 1, 0});
    base.push_term(big_int(1), {0, 0, 0, 1});
    const auto f = naive_multiply(base, base);
    const auto g = add_constant(f, big_int(1));
    const auto [u1, u2] = encode_pair(f, g);
    const auto prod = from_univariate(multiply_dense(u1, u2, block_plan::with_size(7)));
    CHECK(prod.size() == 70);
    CHECK(poly_equal(prod, naive_multiply(f, g)));
}

TEST_CASE("dense multiplication matches the naive multivariate oracle")
{
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 40; ++iter) {
        const auto [p1, p2] = random_laurent_pair(rng);
        const auto expected = naive_multiply(p1, p2);
        const auto [u1, u2] = encode_pair(p1, p2);
        for (std::size_t b : {std::size_t(1), std::size_t(2), std::size_t(7), std::size_t(64),
                              std::max<std::size_t>(1, u1.size())}) {
            const auto prod = from_univariate(multiply_dense(u1, u2, block_plan::with_size(b)));
            CHECK(poly_equal(prod, expected));
        }
    }
}

TEST_CASE("results are identical across block sizes, bit for bit")
{
    std::mt19937_64 rng(12);
    for (int iter = 0; iter < 10; ++iter) {
        const auto [p1, p2] = random_laurent_pair(rng);
        const auto [u1, u2] = encode_pair(p1, p2);
        const auto ref = multiply_dense(u1, u2, block_plan::with_size(1));
        for (std::size_t b : {std::size_t(2), std::size_t(7), std::size_t(64)}) {
            const auto got = multiply_dense(u1, u2, block_plan::with_size(b));
            REQUIRE(got.size() == ref.size());
            for (std::size_t i = 0; i < got.size(); ++i) {
                CHECK(got.terms()[i].code == ref.terms()[i].code);
                CHECK(got.terms()[i].coeff == ref.terms()[i].coeff);
            }
        }
    }
}

TEST_CASE("commutativity for exact coefficients")
{
    std::mt19937_64 rng(13);
    for (int iter = 0; iter < 10; ++iter) {
        const auto [p1, p2] = random_laurent_pair(rng);
        const auto [u1, u2] = encode_pair(p1, p2);
        const auto ab = multiply_dense(u1, u2, block_plan::with_size(8));
        const auto ba = multiply_dense(u2, u1, block_plan::with_size(8));
        REQUIRE(ab.size() == ba.size());
        for (std::size_t i = 0; i < ab.size(); ++i) {
            CHECK(ab.terms()[i].code == ba.terms()[i].code);
            CHECK(ab.terms()[i].coeff == ba.terms()[i].coeff);
        }
    }
}

TEST_CASE("truncated multiplication")
{
    SUBCASE("square of 1 + x truncated to degree 1")
    {
        const auto p = one_plus_x();
        const auto [u1, u2] = encode_pair(p, p);
        const auto prod = from_univariate(multiply_dense_truncated(u1, u2, block_plan::with_size(2), 1));
        laurent_polynomial<big_int> expected(1);
        expected.push_term(big_int(1), {0});
        expected.push_term(big_int(2), {1});
        CHECK(poly_equal(prod, expected));
    }
    SUBCASE("equals the filtered full product for every limit")
    {
        std::mt19937_64 rng(14);
        for (int iter = 0; iter < 15; ++iter) {
            const auto [p1, p2] = random_laurent_pair(rng);
            const auto full = naive_multiply(p1, p2);
            const auto [u1, u2] = encode_pair(p1, p2);
            for (std::int64_t limit : {std::int64_t(-30), std::int64_t(-2), std::int64_t(0),
                                       std::int64_t(3), std::int64_t(40)}) {
                const auto got = from_univariate(
                    multiply_dense_truncated(u1, u2, block_plan::with_size(5), limit));
                CHECK(poly_equal(got, filter_by_degree(full, limit)));
            }
        }
    }
    SUBCASE("a limit at the maximum degree reproduces the full product")
    {
        const auto p = one_plus_x();
        const auto [u1, u2] = encode_pair(p, p);
        const auto full = multiply_dense(u1, u2, block_plan::with_size(2));
        const auto got = multiply_dense_truncated(u1, u2, block_plan::with_size(2), 2);
        REQUIRE(got.size() == full.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got.terms()[i].code == full.terms()[i].code);
            CHECK(got.terms()[i].coeff == full.terms()[i].coeff);
        }
    }
}

TEST_CASE("write trace")
{
    SUBCASE("two one-term factors produce a single record")
    {
        laurent_polynomial<big_int> p(1);
        p.push_term(big_int(3), {2});
        laurent_polynomial<big_int> q(1);
        q.push_term(big_int(4), {1});
        const auto [u1, u2] = encode_pair(p, q);
        const auto trace = write_trace(u1, u2, block_plan::with_size(4));
        REQUIRE(trace.size() == 1);
        CHECK(trace[0].step == 0);
        // Sole output code is the top of the box.
        CHECK(trace[0].location == u1.context().capacity() - 1);
    }
    SUBCASE("trace length is the schoolbook pair count")
    {
        std::mt19937_64 rng(15);
        const auto [p1, p2] = random_laurent_pair(rng);
        const auto [u1, u2] = encode_pair(p1, p2);
        const auto trace = write_trace(u1, u2, block_plan::with_size(6));
        CHECK(trace.size() == u1.size() * u2.size());
        for (std::size_t i = 0; i < trace.size(); ++i) {
            CHECK(trace[i].step == i);
        }
    }
    SUBCASE("blocking bounds the write span of each block pair")
    {
        // Fully dense univariate factor: 32 consecutive codes.
        laurent_polynomial<big_int> p(1);
        for (std::int64_t k = 0; k < 32; ++k) {
            p.push_term(big_int(1), {k});
        }
        const auto [u1, u2] = encode_pair(p, p);

        const std::size_t B = 4;
        const auto blocked = write_trace(u1, u2, block_plan::with_size(B));
        // Each segment of B*B writes belongs to one block pair whose output
        // span is at most 2(B-1)+1 slots wide.
        for (std::size_t seg = 0; seg + B * B <= blocked.size(); seg += B * B) {
            std::int64_t lo = blocked[seg].location, hi = blocked[seg].location;
            for (std::size_t i = seg; i < seg + B * B; ++i) {
                lo = std::min(lo, blocked[i].location);
                hi = std::max(hi, blocked[i].location);
            }
            CHECK(hi - lo <= 2 * std::int64_t(B - 1));
        }

        // Without blocking every outer term sweeps the whole factor span.
        const auto unblocked = write_trace(u1, u2, block_plan::with_size(32));
        for (std::size_t seg = 0; seg + 32 <= unblocked.size(); seg += 32) {
            std::int64_t lo = unblocked[seg].location, hi = unblocked[seg].location;
            for (std::size_t i = seg; i < seg + 32; ++i) {
                lo = std::min(lo, unblocked[i].location);
                hi = std::max(hi, unblocked[i].location);
            }
            CHECK(hi - lo == 31);
        }
    }
    SUBCASE("CSV emission")
    {
        std::vector<trace_entry> trace{{0, 5}, {1, 7}};
        std::ostringstream os;
        write_trace_csv(trace, os);
        CHECK(os.str() == "step,location\n0,5\n1,7\n");
    }
}

TEST_CASE("consecutive diagonal block pairs write disjoint code ranges")
{
    std::mt19937_64 rng(16);
    for (int iter = 0; iter < 20; ++iter) {
        const auto [p1, p2] = random_laurent_pair(rng);
        const auto [u1, u2] = encode_pair(p1, p2);
        const block_plan plan = block_plan::with_size(5);
        const auto &t1 = u1.terms();
        const auto &t2 = u2.terms();
        const std::size_t nb = std::min(plan.block_count(t1.size()), plan.block_count(t2.size()));
        for (std::size_t n = 0; n + 1 < nb; ++n) {
            const auto hi_n = t1[plan.block_end(t1.size(), n) - 1].code
                              + t2[plan.block_end(t2.size(), n) - 1].code;
            const auto lo_n1 =
                t1[plan.block_begin(n + 1)].code + t2[plan.block_begin(n + 1)].code;
            CHECK(hi_n < lo_n1);
        }
    }
}
