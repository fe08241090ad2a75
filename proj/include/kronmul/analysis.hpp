#ifndef KRONMUL_ANALYSIS_HPP
#define KRONMUL_ANALYSIS_HPP

#include <cstdint>
#include <string>

#include <kronmul/kronecker.hpp>
#include <kronmul/polynomial.hpp>

namespace kronmul
{

enum class algo_kind { dense, hash };

inline const char *algo_name(algo_kind a)
{
    return a == algo_kind::dense ? "dense" : "hash";
}

// Density analysis of the univariate factors under the additive product
// codec: drives the dense-vs-hash choice.
struct density_report_t {
    std::int64_t codec_capacity = 0;
    std::size_t terms1 = 0;
    std::size_t terms2 = 0;
    double density1 = 0.0;
    double density2 = 0.0;
    // The dense output array would need one slot per code.
    std::int64_t predicted_output_span = 0;
};

template <coefficient_ring C>
density_report_t density_report(const laurent_polynomial<C> &p1, const laurent_polynomial<C> &p2)
{
    const auto r1 = support_ranges(p1);
    const auto r2 = support_ranges(p2);
    if (!r1 || !r2) {
        throw std::invalid_argument("density_report: empty factor has no support ranges");
    }
    const codec cd(product_ranges(*r1, *r2, combine_mode::additive));
    density_report_t rep;
    rep.codec_capacity = cd.capacity();
    rep.terms1 = p1.size();
    rep.terms2 = p2.size();
    rep.density1 = static_cast<double>(p1.size()) / static_cast<double>(cd.capacity());
    rep.density2 = static_cast<double>(p2.size()) / static_cast<double>(cd.capacity());
    rep.predicted_output_span = cd.capacity();
    return rep;
}

struct selection_params {
    // Dense needs the whole coefficient array to fit here.
    std::uint64_t memory_budget_bytes = std::uint64_t(2) << 30;
    // Below this factor density the initialization overhead of the dense
    // array outweighs the multiplication work.
    double density_threshold = 1e-4;
};

inline std::uint64_t default_memory_budget(std::uint64_t machine_memory_bytes)
{
    return machine_memory_bytes / 4;
}

inline algo_kind select_algorithm(const density_report_t &rep, std::size_t coeff_size,
                                  const selection_params &params = {})
{
    const bool fits = static_cast<std::uint64_t>(rep.codec_capacity) * coeff_size
                      <= params.memory_budget_bytes;
    const bool dense_enough = std::max(rep.density1, rep.density2) >= params.density_threshold;
    return (fits && dense_enough) ? algo_kind::dense : algo_kind::hash;
}

} // namespace kronmul

#endif
