#ifndef KRONMUL_BLOCKING_HPP
#define KRONMUL_BLOCKING_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>

namespace kronmul
{

// Cache-blocking plan: the factors' term sequences are cut into blocks of
// block_size terms (a shorter tail block is allowed). Factors stay sorted,
// so all codes in block n precede all codes in block n+1.
struct block_plan {
    std::size_t block_size = 256;

    static block_plan with_size(std::size_t b)
    {
        return block_plan{std::max<std::size_t>(1, b)};
    }

    // One block of each factor plus the output span it touches should fit in
    // half the L2 parameter. With factor density d, a block of B terms spans
    // about B/d output slots.
    static block_plan automatic(std::size_t terms1, std::size_t terms2, std::int64_t capacity,
                                std::size_t coeff_bytes, std::size_t l2_cache_bytes = 256 * 1024)
    {
        const std::size_t max_terms = std::max<std::size_t>(1, std::max(terms1, terms2));
        const double span_per_term =
            static_cast<double>(capacity) / static_cast<double>(max_terms);
        const std::size_t term_bytes = coeff_bytes + sizeof(std::int64_t);
        const double bytes_per_term =
            2.0 * static_cast<double>(term_bytes) + 2.0 * span_per_term * coeff_bytes;
        auto b = static_cast<std::size_t>(static_cast<double>(l2_cache_bytes / 2) / bytes_per_term);
        return with_size(std::clamp<std::size_t>(b, 16, 8192));
    }

    std::size_t block_count(std::size_t nterms) const
    {
        return nterms == 0 ? 0 : (nterms + block_size - 1) / block_size;
    }

    std::size_t block_begin(std::size_t block) const
    {
        return block * block_size;
    }

    std::size_t block_end(std::size_t nterms, std::size_t block) const
    {
        return std::min(nterms, (block + 1) * block_size);
    }
};

} // namespace kronmul

#endif
