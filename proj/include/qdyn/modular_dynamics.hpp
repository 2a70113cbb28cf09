#pragma once

/**
 * @file modular_dynamics.hpp
 * @brief Basins and functional-graph structure of x -> x^2 - 1 over F_p.
 *
 * The basin of p is the set of residues whose forward orbit reaches 0.
 * Every other module consumes basins, either directly (separation,
 * heuristics) or through residue membership (orbit prime sets).
 */

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qdyn/error.hpp"
#include "qdyn/number_theory.hpp"
#include "qdyn/support.hpp"

namespace qdyn {

/// Immutable membership table for the basin of 0 in F_p.
class BasinTable {
public:
    BasinTable(u64 p, BitVector members)
        : p_(p), members_(std::move(members)), size_(members_.count()) {}

    u64 p() const noexcept { return p_; }
    u64 size() const noexcept { return size_; }
    bool is_full() const noexcept { return size_ == p_; }
    Balance balance() const noexcept { return Balance::of(size_, p_); }

    bool contains(u64 residue) const noexcept { return members_.test(residue); }
    const BitVector& members() const noexcept { return members_; }

    std::vector<u64> residues() const {
        std::vector<u64> out;
        out.reserve(size_);
        for (u64 r = 0; r < p_; ++r)
            if (members_.test(r)) out.push_back(r);
        return out;
    }

private:
    u64 p_;
    BitVector members_;
    u64 size_;
};

struct GraphCensus {
    u64 p = 0;
    u64 n_components = 0;
    std::vector<u64> cycle_lengths;   // ascending
    std::vector<u64> component_sizes; // ascending
    u64 basin_size = 0;
};

struct PrimeRecord {
    u64 p = 0;
    u64 basin_size = 0;
    Balance balance;
    bool is_full = false;
    std::optional<GraphCensus> census;
};

namespace detail {

inline void check_prime_modulus(u64 p) {
    require(p < kMaxModulus, ErrorKind::ModulusTooLarge, std::to_string(p) + " exceeds 2^61");
    require(is_prime(p), ErrorKind::NotPrime, std::to_string(p));
}

} // namespace detail

/// Forward traversal with memoized "reaches 0" flags; each residue is
/// stepped at most once, so the cost is O(p).
inline BasinTable compute_basin(u64 p) {
    detail::check_prime_modulus(p);

    enum : std::uint8_t { kUnknown = 0, kReaches = 1, kMisses = 2, kOnPath = 3 };
    std::vector<std::uint8_t> state(p, kUnknown);
    state[0] = kReaches;
    std::vector<u64> path;

    for (u64 start = 1; start < p; ++start) {
        if (state[start] != kUnknown) continue;
        path.clear();
        u64 x = start;
        while (state[x] == kUnknown) {
            state[x] = kOnPath;
            path.push_back(x);
            x = step_mod(x, p);
        }
        // Landing on our own path means a cycle that avoids 0.
        const std::uint8_t verdict = state[x] == kReaches ? kReaches : kMisses;
        for (u64 y : path) state[y] = verdict;
    }

    BitVector members(p);
    for (u64 r = 0; r < p; ++r)
        if (state[r] == kReaches) members.set(r);
    return BasinTable(p, std::move(members));
}

/// Component and cycle decomposition of the functional graph on F_p.
/// Iterative labeling: walk forward until an already-labeled node (join
/// its component) or a node of the current walk (a new cycle).
inline GraphCensus functional_census(u64 p) {
    detail::check_prime_modulus(p);

    constexpr std::uint32_t kUnlabeled = 0xFFFFFFFFu;
    constexpr std::uint32_t kOnPath = 0xFFFFFFFEu;
    std::vector<std::uint32_t> label(p, kUnlabeled);
    std::vector<u64> cycle_of_component;
    std::vector<u64> path;

    for (u64 start = 0; start < p; ++start) {
        if (label[start] != kUnlabeled) continue;
        path.clear();
        u64 x = start;
        while (label[x] == kUnlabeled) {
            label[x] = kOnPath;
            path.push_back(x);
            x = step_mod(x, p);
        }
        std::uint32_t component;
        if (label[x] == kOnPath) {
            component = static_cast<std::uint32_t>(cycle_of_component.size());
            const auto pos = std::find(path.rbegin(), path.rend(), x);
            cycle_of_component.push_back(static_cast<u64>(pos - path.rbegin()) + 1);
        } else {
            component = label[x];
        }
        for (u64 y : path) label[y] = component;
    }

    GraphCensus census;
    census.p = p;
    census.n_components = cycle_of_component.size();
    census.component_sizes.assign(census.n_components, 0);
    for (u64 r = 0; r < p; ++r) ++census.component_sizes[label[r]];
    census.basin_size = census.component_sizes[label[0]];
    census.cycle_lengths = std::move(cycle_of_component);
    std::sort(census.cycle_lengths.begin(), census.cycle_lengths.end());
    std::sort(census.component_sizes.begin(), census.component_sizes.end());
    return census;
}

inline bool is_member(u64 n, const BasinTable& basin) { return basin.contains(n % basin.p()); }

inline bool is_member(const mpz_class& n, const BasinTable& basin) {
    return basin.contains(mpz_fdiv_ui(n.get_mpz_t(), static_cast<unsigned long>(basin.p())));
}

inline PrimeRecord make_prime_record(u64 p, bool with_census) {
    const BasinTable basin = compute_basin(p);
    PrimeRecord rec;
    rec.p = p;
    rec.basin_size = basin.size();
    rec.balance = basin.balance();
    rec.is_full = basin.is_full();
    if (with_census) rec.census = functional_census(p);
    return rec;
}

struct ScanOptions {
    bool with_census = false;
    unsigned threads = 1;
    std::size_t batch = 512;
};

/// Streams one record per prime p <= limit to `sink`, ascending. Batches
/// are evaluated in parallel and emitted in order.
inline void scan_primes(u64 limit, const ScanOptions& opts,
                        const std::function<void(const PrimeRecord&)>& sink) {
    const std::vector<u64> primes = primes_up_to(limit);
    const unsigned threads = resolve_threads(opts.threads);
    const std::size_t batch = std::max<std::size_t>(opts.batch, 1) * threads;
    for (std::size_t lo = 0; lo < primes.size(); lo += batch) {
        const std::size_t hi = std::min(primes.size(), lo + batch);
        auto records = parallel_map(hi - lo, threads, [&](std::size_t i) {
            return make_prime_record(primes[lo + i], opts.with_census);
        });
        for (const auto& r : records) sink(r);
    }
}

inline std::vector<PrimeRecord> scan_primes(u64 limit, const ScanOptions& opts = {}) {
    std::vector<PrimeRecord> out;
    scan_primes(limit, opts, [&](const PrimeRecord& r) { out.push_back(r); });
    return out;
}

inline std::vector<u64> full_basin_primes(u64 limit, unsigned threads = 1) {
    std::vector<u64> out;
    scan_primes(limit, {.with_census = false, .threads = threads}, [&](const PrimeRecord& r) {
        if (r.is_full) out.push_back(r.p);
    });
    return out;
}

} // namespace qdyn
