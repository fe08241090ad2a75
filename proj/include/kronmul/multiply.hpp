#ifndef KRONMUL_MULTIPLY_HPP
#define KRONMUL_MULTIPLY_HPP

#include <chrono>
#include <cstdint>
#include <optional>

#include <kronmul/analysis.hpp>
#include <kronmul/blocking.hpp>
#include <kronmul/dense_mult.hpp>
#include <kronmul/hash_mult.hpp>
#include <kronmul/parallel.hpp>
#include <kronmul/polynomial.hpp>
#include <kronmul/univariate.hpp>

namespace kronmul
{

enum class algo_choice { automatic, dense, hash };

struct mult_options {
    algo_choice algo = algo_choice::automatic;
    // 0 = size blocks automatically from the L2 parameter.
    std::size_t block_size = 0;
    hash_params hash;
    unsigned threads = 1;
    std::optional<std::int64_t> truncate_degree;
    // Budget for the dense coefficient array; defaults to a quarter of the
    // machine-memory parameter.
    std::uint64_t machine_memory_bytes = std::uint64_t(8) << 30;
    std::optional<std::uint64_t> memory_budget_bytes;
    double density_threshold = 1e-4;
    std::size_t l2_cache_bytes = 256 * 1024;
    bool assert_disjoint = false;

    std::uint64_t budget() const
    {
        return memory_budget_bytes ? *memory_budget_bytes
                                   : default_memory_budget(machine_memory_bytes);
    }
};

template <coefficient_ring C>
struct mult_result {
    laurent_polynomial<C> product;
    algo_kind algorithm = algo_kind::dense;
    density_report_t report;
    block_plan plan;
    // Time spent in the univariate kernel (accumulation plus extraction to
    // sparse form); conversions and I/O excluded.
    double kernel_seconds = 0.0;
};

// Full multiplication pipeline: range analysis, algorithm selection,
// Kronecker conversion, kernel dispatch, conversion back.
template <coefficient_ring C>
mult_result<C> multiply(const laurent_polynomial<C> &p1_in, const laurent_polynomial<C> &p2_in,
                        const mult_options &opts = {})
{
    mult_result<C> res;
    const laurent_polynomial<C> p1 = canonicalize_poly(p1_in);
    const laurent_polynomial<C> p2 = canonicalize_poly(p2_in);
    if (p1.num_vars() != p2.num_vars()) {
        throw std::invalid_argument("multiplying polynomials with different variable counts");
    }
    if (p1.empty() || p2.empty()) {
        res.product = laurent_polynomial<C>(p1.num_vars());
        return res;
    }

    res.report = density_report(p1, p2);
    switch (opts.algo) {
        case algo_choice::dense:
            res.algorithm = algo_kind::dense;
            break;
        case algo_choice::hash:
            res.algorithm = algo_kind::hash;
            break;
        case algo_choice::automatic:
            res.algorithm = select_algorithm(res.report, sizeof(C),
                                             {opts.budget(), opts.density_threshold});
            break;
    }
    // Degree truncation is a dense-path feature.
    if (opts.truncate_degree) {
        res.algorithm = algo_kind::dense;
    }

    // The multiplication codec covers the additive product box and, for the
    // rare supports that do not contain zero, the factor boxes as well, so
    // both factors always encode in-range.
    const auto r1 = *support_ranges(p1);
    const auto r2 = *support_ranges(p2);
    const codec cd(hull_ranges(hull_ranges(r1, r2),
                               product_ranges(r1, r2, combine_mode::additive)));
    const auto u1 = to_univariate(p1, cd);
    const auto u2 = to_univariate(p2, cd);

    res.plan = opts.block_size > 0
                   ? block_plan::with_size(opts.block_size)
                   : block_plan::automatic(u1.size(), u2.size(), cd.capacity(), sizeof(C),
                                           opts.l2_cache_bytes);

    const auto t0 = std::chrono::steady_clock::now();
    univariate_series<C> prod;
    if (opts.truncate_degree) {
        prod = multiply_dense_truncated(u1, u2, res.plan, *opts.truncate_degree);
    } else if (res.algorithm == algo_kind::dense && opts.threads > 1) {
        prod = multiply_dense_parallel(u1, u2, res.plan, opts.threads, opts.assert_disjoint);
    } else if (res.algorithm == algo_kind::dense) {
        prod = multiply_dense(u1, u2, res.plan);
    } else {
        prod = multiply_hash(u1, u2, opts.hash, res.plan);
    }
    const auto t1 = std::chrono::steady_clock::now();
    res.kernel_seconds = std::chrono::duration<double>(t1 - t0).count();

    res.product = from_univariate(prod);
    return res;
}

} // namespace kronmul

#endif
