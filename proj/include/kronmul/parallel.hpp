#ifndef KRONMUL_PARALLEL_HPP
#define KRONMUL_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include <kronmul/blocking.hpp>
#include <kronmul/dense_mult.hpp>
#include <kronmul/univariate.hpp>

namespace kronmul
{

// Reusable condition-variable barrier; one generation per column.
class cycle_barrier
{
public:
    explicit cycle_barrier(unsigned count) : count_(count), waiting_(0), generation_(0) {}

    void arrive_and_wait()
    {
        std::unique_lock<std::mutex> lock(mutex_);
        const std::uint64_t gen = generation_;
        if (++waiting_ == count_) {
            waiting_ = 0;
            ++generation_;
            cv_.notify_all();
        } else {
            cv_.wait(lock, [this, gen] { return generation_ != gen; });
        }
    }

private:
    std::mutex mutex_;
    std::condition_variable cv_;
    unsigned count_;
    unsigned waiting_;
    std::uint64_t generation_;
};

// Work assignment of one thread in one schedule column; block indices are
// -1 when the thread stays silent.
struct schedule_slot {
    std::int64_t block1;
    std::int64_t block2;

    bool silent() const
    {
        return block1 < 0 || block2 < 0;
    }
    bool operator==(const schedule_slot &) const = default;
};

// Diagonal block schedule. Each round hands T consecutive first-factor
// blocks to the T threads; thread t starts the round at second-factor block
// t and walks a virtual ring of size nblocks2 + T - 1 whose tail positions
// are silent. Within any column the active block pairs form one consecutive
// diagonal, so their output intervals are pairwise disjoint and the threads
// can share the accumulator without locks. A barrier separates columns.
class schedule
{
public:
    schedule(std::size_t nblocks1, std::size_t nblocks2, unsigned threads)
        : nblocks1_(nblocks1), nblocks2_(nblocks2), threads_(threads)
    {
        if (threads == 0) {
            throw std::invalid_argument("schedule needs at least one thread");
        }
        ring_ = nblocks2 + threads - 1;
        rounds_ = (nblocks1 + threads - 1) / threads;
    }

    unsigned threads() const
    {
        return threads_;
    }
    std::size_t rounds() const
    {
        return rounds_;
    }
    std::size_t columns_per_round() const
    {
        return ring_;
    }
    std::size_t nblocks1() const
    {
        return nblocks1_;
    }
    std::size_t nblocks2() const
    {
        return nblocks2_;
    }

    schedule_slot at(std::size_t round, std::size_t column, unsigned thread) const
    {
        const std::size_t b1 = round * threads_ + thread;
        if (b1 >= nblocks1_) {
            return {-1, -1};
        }
        const std::size_t v = (thread + column) % ring_;
        if (v >= nblocks2_) {
            return {static_cast<std::int64_t>(b1), -1};
        }
        return {static_cast<std::int64_t>(b1), static_cast<std::int64_t>(v)};
    }

private:
    std::size_t nblocks1_;
    std::size_t nblocks2_;
    unsigned threads_;
    std::size_t ring_;
    std::size_t rounds_;
};

inline schedule build_schedule(std::size_t nblocks1, std::size_t nblocks2, unsigned threads)
{
    return schedule(nblocks1, nblocks2, threads);
}

// Parallel moderately-sparse multiplication. Identical term set to
// multiply_dense; bit-exact coefficients for exact rings. With
// assert_disjoint, every column's per-thread written index ranges are
// verified pairwise disjoint behind an extra barrier.
template <coefficient_ring C>
univariate_series<C> multiply_dense_parallel(const univariate_series<C> &u1,
                                             const univariate_series<C> &u2,
                                             const block_plan &plan, unsigned threads,
                                             bool assert_disjoint = false)
{
    detail::check_shared_context(u1, u2);
    if (threads == 0) {
        throw std::invalid_argument("multiply_dense_parallel needs at least one thread");
    }
    const auto &t1 = u1.terms();
    const auto &t2 = u2.terms();
    dense_accumulator<C> acc(u1.context());
    if (t1.empty() || t2.empty()) {
        return acc.extract_sorted();
    }

    const schedule sched(plan.block_count(t1.size()), plan.block_count(t2.size()), threads);
    cycle_barrier barrier(threads);
    const std::int64_t chi = u1.context().offset();

    // written[t] = [min, max] slot index thread t touched in the current
    // column, or [1, 0] when it wrote nothing.
    std::vector<std::pair<std::int64_t, std::int64_t>> written(
        threads, {std::int64_t(1), std::int64_t(0)});
    std::atomic<bool> disjoint_violation{false};
    std::vector<std::exception_ptr> errors(threads);

    // A failing thread records its exception and keeps arriving at the
    // barriers so nobody deadlocks; the others drain their remaining work.
    std::atomic<bool> aborted{false};

    auto worker = [&](unsigned tid) {
        for (std::size_t round = 0; round < sched.rounds(); ++round) {
            for (std::size_t column = 0; column < sched.columns_per_round(); ++column) {
                written[tid] = {std::int64_t(1), std::int64_t(0)};
                try {
                    const schedule_slot slot = sched.at(round, column, tid);
                    if (!slot.silent() && !aborted.load(std::memory_order_relaxed)) {
                        const std::size_t i0 = plan.block_begin(static_cast<std::size_t>(slot.block1));
                        const std::size_t i1 =
                            plan.block_end(t1.size(), static_cast<std::size_t>(slot.block1));
                        const std::size_t j0 = plan.block_begin(static_cast<std::size_t>(slot.block2));
                        const std::size_t j1 =
                            plan.block_end(t2.size(), static_cast<std::size_t>(slot.block2));
                        written[tid] = {t1[i0].code + t2[j0].code + chi,
                                        t1[i1 - 1].code + t2[j1 - 1].code + chi};
                        for (std::size_t i = i0; i < i1; ++i) {
                            const C &c1 = t1[i].coeff;
                            const std::int64_t base = t1[i].code + chi;
                            for (std::size_t j = j0; j < j1; ++j) {
                                acc[base + t2[j].code] += c1 * t2[j].coeff;
                            }
                        }
                    }
                } catch (...) {
                    if (!errors[tid]) {
                        errors[tid] = std::current_exception();
                    }
                    aborted.store(true);
                }
                if (assert_disjoint) {
                    barrier.arrive_and_wait();
                    if (tid == 0) {
                        for (std::size_t a = 0; a < written.size(); ++a) {
                            for (std::size_t b = a + 1; b < written.size(); ++b) {
                                const auto &ra = written[a];
                                const auto &rb = written[b];
                                if (ra.first > ra.second || rb.first > rb.second) {
                                    continue;
                                }
                                if (ra.first <= rb.second && rb.first <= ra.second) {
                                    disjoint_violation.store(true);
                                }
                            }
                        }
                    }
                }
                barrier.arrive_and_wait();
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back(worker, t);
    }
    for (auto &th : pool) {
        th.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    if (disjoint_violation.load()) {
        throw std::logic_error("parallel schedule produced overlapping write ranges in a column");
    }
    return acc.extract_sorted();
}

} // namespace kronmul

#endif
