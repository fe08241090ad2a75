#ifndef KRONMUL_KRONECKER_HPP
#define KRONMUL_KRONECKER_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <kronmul/multiindex.hpp>

namespace kronmul
{

// Thrown when a variable/range configuration produces more codes than the
// signed code word can hold with headroom: the configuration cannot use
// Kronecker substitution.
class capacity_overflow : public std::overflow_error
{
public:
    using std::overflow_error::overflow_error;
};

// Thrown when a multiindex (or code) falls outside the codec's box; this is
// a range-analysis bug in the caller.
class out_of_range : public std::out_of_range
{
public:
    using std::out_of_range::out_of_range;
};

// Per-variable inclusive exponent bounds.
struct range_spec {
    multiindex lower;
    multiindex upper;

    std::size_t var_count() const
    {
        return lower.size();
    }

    bool operator==(const range_spec &) const = default;
};

inline void validate_ranges(const range_spec &r)
{
    if (r.lower.size() != r.upper.size()) {
        throw std::invalid_argument("range bounds have mismatched variable counts");
    }
    for (std::size_t k = 0; k < r.lower.size(); ++k) {
        if (r.lower[k] > r.upper[k]) {
            throw std::invalid_argument("range lower bound exceeds upper bound for variable "
                                        + std::to_string(k));
        }
    }
}

enum class combine_mode { additive, subtractive };

// Bounds for the multiindices produced by a multiplication. Additive mode is
// plain interval addition (polynomial exponents). Subtractive mode covers
// trig multipliers: the product generates both sums and differences, and sign
// canonicalization negates vectors, so the box is forced symmetric around 0
// and wide enough for every sum, difference, and negation thereof.
inline range_spec product_ranges(const range_spec &r1, const range_spec &r2, combine_mode mode)
{
    if (r1.var_count() != r2.var_count()) {
        throw std::invalid_argument("product_ranges: factors have different variable counts");
    }
    const std::size_t m = r1.var_count();
    range_spec out{multiindex(m), multiindex(m)};
    for (std::size_t k = 0; k < m; ++k) {
        if (mode == combine_mode::additive) {
            out.lower[k] = r1.lower[k] + r2.lower[k];
            out.upper[k] = r1.upper[k] + r2.upper[k];
        } else {
            const std::int64_t corners[] = {r1.lower[k] + r2.lower[k], r1.upper[k] + r2.upper[k],
                                            r1.lower[k] - r2.upper[k], r1.upper[k] - r2.lower[k]};
            std::int64_t bound = 0;
            for (auto c : corners) {
                bound = std::max(bound, c < 0 ? -c : c);
            }
            out.lower[k] = -bound;
            out.upper[k] = bound;
        }
    }
    return out;
}

// Component-wise hull of two boxes.
inline range_spec hull_ranges(const range_spec &r1, const range_spec &r2)
{
    const std::size_t m = r1.var_count();
    range_spec out{multiindex(m), multiindex(m)};
    for (std::size_t k = 0; k < m; ++k) {
        out.lower[k] = std::min(r1.lower[k], r2.lower[k]);
        out.upper[k] = std::max(r1.upper[k], r2.upper[k]);
    }
    return out;
}

// Generalized Kronecker codec: maps multiindices bounded by a per-variable
// box to unique integers in [0, capacity) via a mixed-radix coding vector.
// Variable 0 has weight 1 (fastest-varying). Immutable once built; safe to
// share across threads.
class codec
{
public:
    codec() : offset_(0), capacity_(1) {}

    explicit codec(const range_spec &ranges) : ranges_(ranges)
    {
        validate_ranges(ranges);
        const std::size_t m = ranges.var_count();
        widths_.resize(m);
        weights_.resize(m);

        // All bound checks run in 128-bit so nothing wraps before we can
        // diagnose it. The headroom constant reserves one high bit of the
        // code word: any two in-range raw codes can then be added without
        // overflow.
        using wide = __int128;
        constexpr wide headroom = static_cast<wide>(std::numeric_limits<std::int64_t>::max() / 2);

        wide cap = 1;
        wide offset = 0;
        for (std::size_t k = 0; k < m; ++k) {
            const wide w = wide(1) + wide(ranges.upper[k]) - wide(ranges.lower[k]);
            weights_[k] = static_cast<std::int64_t>(cap);
            offset += cap * wide(ranges.lower[k]);
            cap *= w;
            const wide abs_offset = offset < 0 ? -offset : offset;
            if (cap > headroom || abs_offset > headroom || cap + abs_offset > headroom) {
                throw capacity_overflow("Kronecker codec capacity exceeds the code word headroom");
            }
            widths_[k] = static_cast<std::int64_t>(w);
        }
        capacity_ = static_cast<std::int64_t>(cap);
        offset_ = static_cast<std::int64_t>(offset);
    }

    std::size_t var_count() const
    {
        return widths_.size();
    }
    const range_spec &ranges() const
    {
        return ranges_;
    }
    const std::vector<std::int64_t> &widths() const
    {
        return widths_;
    }
    const std::vector<std::int64_t> &coding_vector() const
    {
        return weights_;
    }
    // chi = coding_vector . lower_bound; normalized code = raw code - chi.
    std::int64_t offset() const
    {
        return offset_;
    }
    std::int64_t capacity() const
    {
        return capacity_;
    }

    bool contains(const multiindex &e) const
    {
        if (e.size() != var_count()) {
            return false;
        }
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] < ranges_.lower[k] || e[k] > ranges_.upper[k]) {
                return false;
            }
        }
        return true;
    }

    // Coding-vector dot product, no offset. Additive under multiindex
    // addition and antisymmetric under negation.
    std::int64_t raw_code(const multiindex &e) const
    {
        check_in_box(e);
        std::int64_t r = 0;
        for (std::size_t k = 0; k < e.size(); ++k) {
            r += weights_[k] * e[k];
        }
        return r;
    }

    // Normalized code in [0, capacity): raw_code(e) - offset. Injective over
    // the box.
    std::int64_t encode(const multiindex &e) const
    {
        return raw_code(e) - offset_;
    }

    multiindex decode(std::int64_t code) const
    {
        if (code < 0 || code >= capacity_) {
            throw out_of_range("code " + std::to_string(code) + " outside [0, "
                               + std::to_string(capacity_) + ")");
        }
        multiindex e(var_count());
        for (std::size_t k = 0; k < e.size(); ++k) {
            e[k] = ranges_.lower[k] + code % widths_[k];
            code /= widths_[k];
        }
        return e;
    }

    multiindex decode_raw(std::int64_t raw) const
    {
        return decode(raw - offset_);
    }

    bool operator==(const codec &other) const
    {
        return ranges_ == other.ranges_;
    }

private:
    void check_in_box(const multiindex &e) const
    {
        if (e.size() != var_count()) {
            throw out_of_range("multiindex has " + std::to_string(e.size()) + " entries, codec has "
                               + std::to_string(var_count()) + " variables");
        }
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] < ranges_.lower[k] || e[k] > ranges_.upper[k]) {
                throw out_of_range("multiindex entry " + std::to_string(k) + " = "
                                   + std::to_string(e[k]) + " outside ["
                                   + std::to_string(ranges_.lower[k]) + ", "
                                   + std::to_string(ranges_.upper[k]) + "]");
            }
        }
    }

    range_spec ranges_;
    std::vector<std::int64_t> widths_;
    std::vector<std::int64_t> weights_;
    std::int64_t offset_;
    std::int64_t capacity_;
};

inline codec build_codec(const range_spec &ranges)
{
    return codec(ranges);
}

} // namespace kronmul

#endif
