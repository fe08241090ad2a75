#ifndef KRONMUL_HASH_MULT_HPP
#define KRONMUL_HASH_MULT_HPP

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include <kronmul/blocking.hpp>
#include <kronmul/coefficients.hpp>
#include <kronmul/dense_mult.hpp>
#include <kronmul/univariate.hpp>

namespace kronmul
{

struct hash_params {
    // 0 = auto: next power of two >= sqrt(|u1| * |u2|).
    std::uint64_t initial_buckets = 0;
    std::uint64_t bucket_capacity = 8;
    // 0 = auto: bucket_count / 4 capped at 4096, recomputed after growth.
    // The overflow bucket is probed linearly, so an uncapped threshold makes
    // the phase before a rehash quadratic on crowded tables.
    std::uint64_t overflow_threshold = 0;
    std::uint64_t growth_factor = 4;
};

inline std::uint64_t next_power_of_two(std::uint64_t v)
{
    std::uint64_t p = 1;
    while (p < v) {
        p <<= 1;
    }
    return p;
}

// What a single insertion did; feeds the write trace.
struct insert_result {
    std::int64_t bucket;
    bool to_overflow;
    bool rehashed;
};

// Bucketized accumulator for highly-sparse output: a contiguous area of
// N * m coefficient-code slots, hashed by code mod N, plus an overflow
// bucket that absorbs insertions into full buckets. When the overflow
// reaches the threshold the table grows and everything is re-hashed.
template <coefficient_ring C>
class bucket_table
{
public:
    explicit bucket_table(const hash_params &params, std::uint64_t expected_inserts = 0)
        : bucket_capacity_(std::max<std::uint64_t>(1, params.bucket_capacity)),
          growth_factor_(std::max<std::uint64_t>(2, params.growth_factor)),
          auto_threshold_(params.overflow_threshold == 0),
          fixed_threshold_(params.overflow_threshold)
    {
        std::uint64_t n = params.initial_buckets;
        if (n == 0) {
            n = next_power_of_two(static_cast<std::uint64_t>(
                std::ceil(std::sqrt(static_cast<double>(std::max<std::uint64_t>(1, expected_inserts))))));
        }
        reset_storage(std::max<std::uint64_t>(1, n));
    }

    std::uint64_t bucket_count() const
    {
        return bucket_count_;
    }
    std::uint64_t bucket_capacity() const
    {
        return bucket_capacity_;
    }
    std::uint64_t overflow_threshold() const
    {
        return threshold_;
    }
    std::uint64_t overflow_size() const
    {
        return overflow_.size();
    }
    // Bumped once per rehash; callers re-sort factors when it changes.
    std::uint64_t generation() const
    {
        return generation_;
    }
    std::uint64_t entry_count() const
    {
        std::uint64_t n = overflow_.size();
        for (auto f : fill_) {
            n += f;
        }
        return n;
    }

    std::int64_t bucket_of(std::int64_t code) const
    {
        assert(code >= 0);
        if (mask_ != 0) {
            return code & static_cast<std::int64_t>(mask_);
        }
        return code % static_cast<std::int64_t>(bucket_count_);
    }

    insert_result insert(std::int64_t code, const C &coeff)
    {
        const std::int64_t h = bucket_of(code);
        const std::size_t base = static_cast<std::size_t>(h) * bucket_capacity_;
        const std::uint32_t filled = fill_[static_cast<std::size_t>(h)];
        for (std::size_t k = 0; k < filled; ++k) {
            if (slots_[base + k].code == code) {
                slots_[base + k].coeff += coeff;
                return {h, false, false};
            }
        }
        if (filled < bucket_capacity_) {
            slots_[base + filled] = {coeff, code};
            ++fill_[static_cast<std::size_t>(h)];
            return {h, false, false};
        }
        // Full bucket: the code may already live in the overflow bucket.
        for (auto &e : overflow_) {
            if (e.code == code) {
                e.coeff += coeff;
                return {h, true, false};
            }
        }
        overflow_.push_back({coeff, code});
        if (overflow_.size() >= threshold_) {
            rehash();
            return {h, true, true};
        }
        return {h, true, false};
    }

    // Grow the table and re-insert every entry; grows again immediately if
    // the re-insertion itself fills the overflow bucket to the threshold.
    void rehash()
    {
        std::vector<uni_term<C>> entries = snapshot();
        std::uint64_t n = bucket_count_;
        for (;;) {
            n *= growth_factor_;
            reset_storage(n);
            bool crowded = false;
            for (auto &e : entries) {
                const std::int64_t h = bucket_of(e.code);
                const std::size_t base = static_cast<std::size_t>(h) * bucket_capacity_;
                const std::uint32_t filled = fill_[static_cast<std::size_t>(h)];
                if (filled < bucket_capacity_) {
                    slots_[base + filled] = e;
                    ++fill_[static_cast<std::size_t>(h)];
                } else {
                    overflow_.push_back(e);
                    if (overflow_.size() >= threshold_) {
                        crowded = true;
                        break;
                    }
                }
            }
            if (!crowded) {
                break;
            }
        }
        ++generation_;
    }

    // Walk the in-bucket entries (overflow excluded) as (bucket, term).
    template <typename F>
    void visit_buckets(F &&f) const
    {
        for (std::uint64_t h = 0; h < bucket_count_; ++h) {
            const std::size_t base = static_cast<std::size_t>(h) * bucket_capacity_;
            for (std::uint32_t k = 0; k < fill_[static_cast<std::size_t>(h)]; ++k) {
                f(h, slots_[base + k]);
            }
        }
    }

    // Every stored (coefficient, code) pair, buckets first, then overflow.
    std::vector<uni_term<C>> snapshot() const
    {
        std::vector<uni_term<C>> out;
        out.reserve(entry_count());
        for (std::uint64_t h = 0; h < bucket_count_; ++h) {
            const std::size_t base = static_cast<std::size_t>(h) * bucket_capacity_;
            for (std::uint32_t k = 0; k < fill_[static_cast<std::size_t>(h)]; ++k) {
                out.push_back(slots_[base + k]);
            }
        }
        out.insert(out.end(), overflow_.begin(), overflow_.end());
        return out;
    }

private:
    void reset_storage(std::uint64_t n)
    {
        bucket_count_ = n;
        mask_ = (n & (n - 1)) == 0 ? n - 1 : 0;
        threshold_ = auto_threshold_
                         ? std::clamp<std::uint64_t>(n / 4, 1, 4096)
                         : fixed_threshold_;
        slots_.assign(static_cast<std::size_t>(n * bucket_capacity_), uni_term<C>{});
        fill_.assign(static_cast<std::size_t>(n), 0);
        overflow_.clear();
    }

    std::uint64_t bucket_count_ = 1;
    std::uint64_t bucket_capacity_;
    std::uint64_t growth_factor_;
    bool auto_threshold_;
    std::uint64_t fixed_threshold_;
    std::uint64_t threshold_ = 1;
    std::uint64_t mask_ = 0;
    std::uint64_t generation_ = 0;
    std::vector<uni_term<C>> slots_;
    std::vector<std::uint32_t> fill_;
    std::vector<uni_term<C>> overflow_;
};

namespace detail
{

// Sort terms by (code mod N, code) so consecutive writes land on
// consecutive buckets.
template <coefficient_ring C>
void sort_mod_n(typename std::vector<uni_term<C>>::iterator first,
                typename std::vector<uni_term<C>>::iterator last, std::uint64_t n)
{
    const auto nn = static_cast<std::int64_t>(n);
    std::sort(first, last, [nn](const uni_term<C> &a, const uni_term<C> &b) {
        const std::int64_t ma = a.code % nn;
        const std::int64_t mb = b.code % nn;
        return ma != mb ? ma < mb : a.code < b.code;
    });
}

// Blocked schoolbook accumulation into the bucket table. The first factor's
// processed prefix is frozen; after a rehash the remaining suffix and the
// whole second factor are re-sorted for the new bucket count at the next
// outer-block boundary.
template <coefficient_ring C, typename Sink>
void hash_accumulate(std::vector<uni_term<C>> t1, std::vector<uni_term<C>> t2, std::int64_t chi,
                     const block_plan &plan, bucket_table<C> &table, Sink &&sink)
{
    std::uint64_t sorted_generation = table.generation();
    sort_mod_n<C>(t1.begin(), t1.end(), table.bucket_count());
    sort_mod_n<C>(t2.begin(), t2.end(), table.bucket_count());

    std::uint64_t step = 0;
    std::size_t done = 0;
    while (done < t1.size()) {
        if (table.generation() != sorted_generation) {
            sort_mod_n<C>(t1.begin() + static_cast<std::ptrdiff_t>(done), t1.end(),
                          table.bucket_count());
            sort_mod_n<C>(t2.begin(), t2.end(), table.bucket_count());
            sorted_generation = table.generation();
        }
        const std::size_t i1 = std::min(t1.size(), done + plan.block_size);
        const std::size_t nb2 = plan.block_count(t2.size());
        for (std::size_t b2 = 0; b2 < nb2; ++b2) {
            const std::size_t j0 = plan.block_begin(b2);
            const std::size_t j1 = plan.block_end(t2.size(), b2);
            for (std::size_t i = done; i < i1; ++i) {
                const C &c1 = t1[i].coeff;
                const std::int64_t base = t1[i].code + chi;
                for (std::size_t j = j0; j < j1; ++j) {
                    const auto res = table.insert(base + t2[j].code, c1 * t2[j].coeff);
                    sink(step++, res);
                }
            }
        }
        done = i1;
    }
}

struct null_hash_sink {
    void operator()(std::uint64_t, const insert_result &) const {}
};

} // namespace detail

// Highly-sparse multiplication: schoolbook into a bucketized hash table
// keyed by normalized code, factors ordered by code mod N.
template <coefficient_ring C>
univariate_series<C> multiply_hash(const univariate_series<C> &u1, const univariate_series<C> &u2,
                                   const hash_params &params = {}, const block_plan &plan = {})
{
    detail::check_shared_context(u1, u2);
    if (u1.empty() || u2.empty()) {
        return univariate_series<C>(u1.context());
    }
    bucket_table<C> table(params, static_cast<std::uint64_t>(u1.size()) * u2.size());
    detail::hash_accumulate<C>(u1.terms(), u2.terms(), u1.context().offset(), plan, table,
                               detail::null_hash_sink{});
    auto terms = table.snapshot();
    terms.erase(std::remove_if(terms.begin(), terms.end(),
                               [](const uni_term<C> &t) { return coeff_traits<C>::is_zero(t.coeff); }),
                terms.end());
    univariate_series<C> out(u1.context(), std::move(terms));
    out.sort_ascending();
    return out;
}

// Trace variant: location is the target bucket index of each insertion.
template <coefficient_ring C>
std::vector<trace_entry> write_trace_hash(const univariate_series<C> &u1,
                                          const univariate_series<C> &u2,
                                          const hash_params &params = {}, const block_plan &plan = {})
{
    detail::check_shared_context(u1, u2);
    std::vector<trace_entry> trace;
    if (u1.empty() || u2.empty()) {
        return trace;
    }
    trace.reserve(u1.size() * u2.size());
    bucket_table<C> table(params, static_cast<std::uint64_t>(u1.size()) * u2.size());
    detail::hash_accumulate<C>(u1.terms(), u2.terms(), u1.context().offset(), plan, table,
                               [&trace](std::uint64_t step, const insert_result &res) {
                                   trace.push_back({step, res.bucket});
                               });
    return trace;
}

} // namespace kronmul

#endif
