#ifndef KRONMUL_MULTIINDEX_HPP
#define KRONMUL_MULTIINDEX_HPP

#include <cstdint>
#include <numeric>
#include <vector>

namespace kronmul
{

// Exponent vector of a monomial, or trig-multiplier vector of a cos/sin
// argument. Entries are signed (Laurent polynomials allow negative degrees).
using multiindex = std::vector<std::int64_t>;

inline multiindex add(const multiindex &a, const multiindex &b)
{
    multiindex out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        out[k] = a[k] + b[k];
    }
    return out;
}

inline multiindex negate(const multiindex &a)
{
    multiindex out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        out[k] = -a[k];
    }
    return out;
}

// Total degree in the Laurent sense: negative entries subtract.
inline std::int64_t total_degree(const multiindex &a)
{
    return std::accumulate(a.begin(), a.end(), std::int64_t(0));
}

} // namespace kronmul

#endif
