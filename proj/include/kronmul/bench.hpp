#ifndef KRONMUL_BENCH_HPP
#define KRONMUL_BENCH_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace kronmul
{

// Clock cycles per monomial-by-monomial multiplication: the bookkeeping
// overhead of the kernel, normalized away from coefficient-type and clock
// speed. ccpm = wall_time * cpu_frequency / (|u1| * |u2|).
inline double compute_ccpm(double wall_seconds, double cpu_hz, std::uint64_t terms1,
                           std::uint64_t terms2)
{
    return wall_seconds * cpu_hz
           / (static_cast<double>(terms1) * static_cast<double>(terms2));
}

struct bench_result {
    std::string benchmark;
    std::string algorithm;
    std::string coefficient;
    unsigned threads = 1;
    std::size_t block_size = 0;
    std::uint64_t hash_buckets = 0;
    std::uint64_t hash_bucket_capacity = 0;
    std::uint64_t hash_overflow_threshold = 0;
    std::size_t terms_in1 = 0;
    std::size_t terms_in2 = 0;
    std::size_t terms_out = 0;
    double wall_seconds = 0.0;
    std::optional<double> cpu_hz;
    std::optional<double> ccpm;
    // Coefficient sum of the result: a compact cross-run checksum.
    std::string checksum;
};

} // namespace kronmul

#endif
