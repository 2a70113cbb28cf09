#pragma once

/**
 * @file separation.hpp
 * @brief Partition refinement of {2 <= n <= X, n != m^2 - 1} by basin membership.
 *
 * Each prime p splits a block B into B ∩ S(p) and B \ S(p), where S(p) is
 * the set of integers whose residue lies in the basin of p. Parts with fewer
 * than two elements are dropped and counted as separated. The integers up to
 * X are separated by a prime set exactly when refinement by those primes
 * empties the family of blocks.
 *
 * Storage is one flat array of values plus block offsets. Splitting a block
 * is a stable in-place partition (members first), so every block stays
 * sorted and the working set never exceeds X values plus one block of
 * scratch.
 */

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qdyn/error.hpp"
#include "qdyn/modular_dynamics.hpp"
#include "qdyn/number_theory.hpp"
#include "qdyn/support.hpp"

namespace qdyn {

enum class PrimeOrder { ascending, balance_sorted };
enum class Traversal { breadth_first, depth_first };

constexpr const char* to_string(PrimeOrder o) {
    return o == PrimeOrder::ascending ? "ascending" : "balance_sorted";
}
constexpr const char* to_string(Traversal t) {
    return t == Traversal::breadth_first ? "breadth_first" : "depth_first";
}

/// Hard cap on the ascending prime sequence when no limit is given.
inline constexpr u64 kAscendingSafetyCap = 1'000'000;
/// Values are stored as 32-bit integers.
inline constexpr u64 kMaxSeparationBound = std::numeric_limits<std::uint32_t>::max() - 1;

inline u64 universe_size(u64 x_max) {
    if (x_max < 2) return 0;
    return x_max - isqrt(x_max + 1);
}

namespace detail {

/// Stable split of [first, last) into members | non-members of the basin.
/// Returns the number of members.
inline std::size_t split_range(std::uint32_t* first, std::uint32_t* last, const BasinTable& basin,
                               std::vector<std::uint32_t>& scratch) {
    const std::uint32_t p = static_cast<std::uint32_t>(basin.p());
    scratch.clear();
    std::uint32_t* out = first;
    for (std::uint32_t* it = first; it != last; ++it) {
        const std::uint32_t v = *it;
        if (basin.contains(v % p))
            *out++ = v;
        else
            scratch.push_back(v);
    }
    std::copy(scratch.begin(), scratch.end(), out);
    return static_cast<std::size_t>(out - first);
}

} // namespace detail

class PartitionState {
public:
    /// Single block holding the whole universe (no block if it has < 2 elements).
    static PartitionState initial_universe(u64 x_max) {
        require(x_max >= 2, ErrorKind::BoundTooSmall, "x_max must be at least 2");
        require(x_max <= kMaxSeparationBound, ErrorKind::BoundTooSmall,
                "x_max must fit in 32 bits");
        PartitionState s;
        s.x_max_ = x_max;
        s.universe_size_ = qdyn::universe_size(x_max);
        s.values_.reserve(s.universe_size_);
        for (u64 n = 2; n <= x_max; ++n)
            if (!is_square_minus_one(n)) s.values_.push_back(static_cast<std::uint32_t>(n));
        if (s.values_.size() >= 2) {
            s.offsets_.push_back(s.values_.size());
        } else {
            s.separated_ = s.values_.size();
            s.values_.clear();
        }
        return s;
    }

    u64 x_max() const noexcept { return x_max_; }
    u64 universe_size() const noexcept { return universe_size_; }
    u64 separated_count() const noexcept { return separated_; }
    std::size_t block_count() const noexcept { return offsets_.size() - 1; }
    bool empty() const noexcept { return block_count() == 0; }
    const std::vector<u64>& primes_used() const noexcept { return primes_used_; }

    std::span<const std::uint32_t> block(std::size_t i) const {
        return {values_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }

    u64 unseparated_count() const noexcept { return offsets_.back(); }

    bool has_used(u64 p) const {
        return std::binary_search(primes_used_.begin(), primes_used_.end(), p);
    }

    /// Splits every block by S(p) in place.
    void refine(const BasinTable& basin) {
        const u64 p = basin.p();
        require(!has_used(p), ErrorKind::DuplicatePrime, std::to_string(p));
        primes_used_.insert(std::lower_bound(primes_used_.begin(), primes_used_.end(), p), p);
        if (basin.is_full() || empty()) return;

        std::vector<std::size_t> next_offsets{0};
        next_offsets.reserve(offsets_.size() * 2);
        std::size_t write = 0;
        for (std::size_t b = 0; b + 1 < offsets_.size(); ++b) {
            const std::size_t lo = offsets_[b];
            const std::size_t hi = offsets_[b + 1];
            const std::size_t in = detail::split_range(values_.data() + lo, values_.data() + hi,
                                                       basin, scratch_);
            // Parts are [lo, lo+in) and [lo+in, hi); compact survivors leftwards.
            for (auto [from, len] : {std::pair{lo, in}, std::pair{lo + in, hi - lo - in}}) {
                if (len < 2) {
                    separated_ += len;
                    continue;
                }
                if (write != from)
                    std::copy(values_.begin() + from, values_.begin() + from + len,
                              values_.begin() + write);
                write += len;
                next_offsets.push_back(write);
            }
        }
        values_.resize(write);
        offsets_ = std::move(next_offsets);
    }

    /// Blocks disjoint, all of size >= 2, and the element count conserved.
    bool invariants_hold() const {
        if (separated_ + unseparated_count() != universe_size_) return false;
        for (std::size_t b = 0; b < block_count(); ++b)
            if (block(b).size() < 2) return false;
        std::vector<std::uint32_t> all(values_.begin(), values_.end());
        std::sort(all.begin(), all.end());
        return std::adjacent_find(all.begin(), all.end()) == all.end();
    }

private:
    u64 x_max_ = 0;
    u64 universe_size_ = 0;
    u64 separated_ = 0;
    std::vector<std::uint32_t> values_;
    std::vector<std::size_t> offsets_{0};
    std::vector<u64> primes_used_;
    std::vector<std::uint32_t> scratch_;
};

inline PartitionState initial_universe(u64 x_max) { return PartitionState::initial_universe(x_max); }

/// Value-semantics wrapper over PartitionState::refine.
inline PartitionState refine(PartitionState state, const BasinTable& basin) {
    state.refine(basin);
    return state;
}

struct BalanceEntry {
    u64 p = 0;
    Balance balance;
};

/// Primes <= prime_limit sorted by |#S(p)/p - 1/2|, ties by smaller prime.
inline std::vector<BalanceEntry> balance_order(u64 prime_limit, unsigned threads = 1) {
    require(prime_limit >= 5, ErrorKind::BoundTooSmall, "prime_limit must be at least 5");
    std::vector<BalanceEntry> out;
    scan_primes(prime_limit, {.with_census = false, .threads = threads},
                [&](const PrimeRecord& r) { out.push_back({r.p, r.balance}); });
    std::stable_sort(out.begin(), out.end(), [](const BalanceEntry& a, const BalanceEntry& b) {
        return a.balance < b.balance;
    });
    return out;
}

/// Basins for a fixed prime sequence, computed on demand in parallel batches.
class BasinSource {
public:
    BasinSource(std::vector<u64> primes, unsigned threads)
        : primes_(std::move(primes)), threads_(resolve_threads(threads)), cache_(primes_.size()) {}

    std::size_t size() const noexcept { return primes_.size(); }
    u64 prime(std::size_t i) const { return primes_[i]; }

    const BasinTable& at(std::size_t i) {
        if (!cache_[i]) fill_from(i);
        return *cache_[i];
    }

    /// Frees basins below index i (breadth-first never looks back).
    void release_before(std::size_t i) {
        for (std::size_t j = released_; j < i && j < cache_.size(); ++j) cache_[j].reset();
        released_ = std::max(released_, i);
    }

private:
    void fill_from(std::size_t i) {
        const std::size_t count = std::min(cache_.size() - i, std::size_t{16} * threads_);
        auto basins = parallel_map(count, threads_, [&](std::size_t k) {
            return cache_[i + k] ? std::optional<BasinTable>{} : std::optional(compute_basin(primes_[i + k]));
        });
        for (std::size_t k = 0; k < count; ++k)
            if (basins[k]) cache_[i + k] = std::move(basins[k]);
    }

    std::vector<u64> primes_;
    unsigned threads_;
    std::vector<std::optional<BasinTable>> cache_;
    std::size_t released_ = 0;
};

struct SeparationOptions {
    PrimeOrder order = PrimeOrder::ascending;
    Traversal traversal = Traversal::breadth_first;
    /// 0 means unbounded (ascending only; capped at kAscendingSafetyCap).
    u64 prime_limit = 0;
    bool skip_full_basin = true;
    unsigned threads = 1;
    std::size_t residual_sample_blocks = 5;
    std::size_t residual_sample_elements = 10;
};

struct SeparationReport {
    u64 x_max = 0;
    PrimeOrder order = PrimeOrder::ascending;
    Traversal traversal = Traversal::breadth_first;
    u64 prime_limit = 0;
    bool separated = false;
    u64 max_prime_used = 0;
    u64 primes_consumed = 0;
    u64 universe_size = 0;
    u64 residual_block_count = 0;
    std::vector<std::vector<std::uint32_t>> residual_sample;
    /// All residual blocks (sorted); kept so traversals can be compared.
    std::vector<std::vector<std::uint32_t>> residual_blocks;
};

namespace detail {

inline std::vector<u64> separation_prime_sequence(const SeparationOptions& opts) {
    if (opts.order == PrimeOrder::ascending) {
        require(opts.prime_limit == 0 || opts.prime_limit >= 5, ErrorKind::BoundTooSmall,
                "prime_limit must be at least 5");
        const u64 limit = opts.prime_limit == 0 ? kAscendingSafetyCap
                                                : std::min(opts.prime_limit, kAscendingSafetyCap);
        auto primes = primes_up_to(limit);
        // 2 and 3 have full basins and carry no information.
        std::erase_if(primes, [](u64 p) { return p < 5; });
        return primes;
    }
    require(opts.prime_limit >= 5, ErrorKind::BoundTooSmall,
            "balance order needs an explicit prime_limit >= 5");
    std::vector<u64> primes;
    for (const auto& e : balance_order(opts.prime_limit, opts.threads)) primes.push_back(e.p);
    return primes;
}

inline void finish_report(SeparationReport& rep, const std::vector<u64>& sequence,
                          std::size_t consumed, std::vector<std::vector<std::uint32_t>> residual,
                          const SeparationOptions& opts) {
    rep.separated = residual.empty();
    rep.primes_consumed = consumed;
    rep.max_prime_used = 0;
    for (std::size_t i = 0; i < consumed; ++i) rep.max_prime_used = std::max(rep.max_prime_used, sequence[i]);
    std::sort(residual.begin(), residual.end());
    rep.residual_block_count = residual.size();
    for (std::size_t b = 0; b < residual.size() && b < opts.residual_sample_blocks; ++b) {
        const auto& blk = residual[b];
        rep.residual_sample.emplace_back(
            blk.begin(), blk.begin() + static_cast<std::ptrdiff_t>(std::min(blk.size(), opts.residual_sample_elements)));
    }
    rep.residual_blocks = std::move(residual);
}

inline SeparationReport separate_breadth_first(SeparationReport rep, const std::vector<u64>& sequence,
                                               const SeparationOptions& opts) {
    PartitionState state = PartitionState::initial_universe(rep.x_max);
    BasinSource basins(sequence, opts.threads);
    std::size_t consumed = 0;
    while (!state.empty() && consumed < sequence.size()) {
        const BasinTable& basin = basins.at(consumed);
        if (!(opts.skip_full_basin && basin.is_full())) state.refine(basin);
        ++consumed;
        basins.release_before(consumed);
    }
    std::vector<std::vector<std::uint32_t>> residual;
    for (std::size_t b = 0; b < state.block_count(); ++b) {
        auto blk = state.block(b);
        residual.emplace_back(blk.begin(), blk.end());
    }
    finish_report(rep, sequence, consumed, std::move(residual), opts);
    return rep;
}

/// One block at a time: a stack of (range, prime cursor) pairs over a single
/// value buffer. A block is split by successive primes until it either
/// splits (both halves pushed) or runs out of primes (residual).
inline SeparationReport separate_depth_first(SeparationReport rep, const std::vector<u64>& sequence,
                                             const SeparationOptions& opts) {
    std::vector<std::uint32_t> values;
    values.reserve(rep.universe_size);
    for (u64 n = 2; n <= rep.x_max; ++n)
        if (!is_square_minus_one(n)) values.push_back(static_cast<std::uint32_t>(n));

    struct Frame {
        std::size_t lo, hi, cursor;
    };
    std::vector<Frame> stack;
    if (values.size() >= 2) stack.push_back({0, values.size(), 0});

    BasinSource basins(sequence, opts.threads);
    std::vector<std::uint32_t> scratch;
    std::vector<std::vector<std::uint32_t>> residual;
    std::size_t last_split = 0; // one past the index of the latest prime that split anything
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        std::size_t in = 0;
        for (;; ++f.cursor) {
            if (f.cursor == sequence.size()) break;
            const BasinTable& basin = basins.at(f.cursor);
            if (opts.skip_full_basin && basin.is_full()) continue;
            in = detail::split_range(values.data() + f.lo, values.data() + f.hi, basin, scratch);
            if (in != 0 && in != f.hi - f.lo) break;
        }
        if (f.cursor == sequence.size()) {
            residual.emplace_back(values.begin() + static_cast<std::ptrdiff_t>(f.lo),
                                  values.begin() + static_cast<std::ptrdiff_t>(f.hi));
            continue;
        }
        last_split = std::max(last_split, f.cursor + 1);
        const std::size_t mid = f.lo + in;
        // Push the non-member half first so members are explored first.
        if (f.hi - mid >= 2) stack.push_back({mid, f.hi, f.cursor + 1});
        if (mid - f.lo >= 2) stack.push_back({f.lo, mid, f.cursor + 1});
    }
    const std::size_t consumed = residual.empty() ? last_split : sequence.size();
    finish_report(rep, sequence, consumed, std::move(residual), opts);
    return rep;
}

} // namespace detail

inline SeparationReport separate(u64 x_max, const SeparationOptions& opts = {}) {
    require(x_max >= 2, ErrorKind::BoundTooSmall, "x_max must be at least 2");
    require(x_max <= kMaxSeparationBound, ErrorKind::BoundTooSmall, "x_max must fit in 32 bits");
    const std::vector<u64> sequence = detail::separation_prime_sequence(opts);
    SeparationReport rep;
    rep.x_max = x_max;
    rep.order = opts.order;
    rep.traversal = opts.traversal;
    rep.prime_limit = opts.prime_limit;
    rep.universe_size = universe_size(x_max);
    if (opts.traversal == Traversal::breadth_first)
        return detail::separate_breadth_first(std::move(rep), sequence, opts);
    return detail::separate_depth_first(std::move(rep), sequence, opts);
}

/// Smallest p such that the primes <= p separate the integers up to x_max,
/// or nullopt if the ascending safety cap is reached first. When nothing
/// needs separating the answer is 3, the starting point of the ascending scan.
inline std::optional<u64> minimal_separating_prime(u64 x_max, unsigned threads = 1) {
    const auto rep = separate(x_max, {.order = PrimeOrder::ascending,
                                      .traversal = Traversal::breadth_first,
                                      .prime_limit = 0,
                                      .threads = threads});
    if (!rep.separated) return std::nullopt;
    return std::max<u64>(rep.max_prime_used, 3);
}

} // namespace qdyn
