#pragma once

/**
 * @file orbit_integers.hpp
 * @brief Exact orbits a_0 = n, a_{k+1} = a_k^2 - 1 over Z and their prime data.
 *
 * Prime sets are never obtained by factoring orbit terms: p divides some
 * a_k(n) exactly when the residue of n lies in the basin of p.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qdyn/error.hpp"
#include "qdyn/modular_dynamics.hpp"
#include "qdyn/number_theory.hpp"

namespace qdyn {

inline constexpr unsigned kMaxOrbitDepth = 24;
inline constexpr unsigned kMaxValuationDepth = 16;
inline constexpr unsigned kMaxGcdDepth = 6;
inline constexpr u64 kGcdTrialBound = 10'000;

struct OrbitRecord {
    mpz_class n;
    std::vector<mpz_class> terms;
};

namespace detail {

inline void check_start(const mpz_class& n) {
    require(n >= 2, ErrorKind::BadN, "orbit start must be >= 2, got " + n.get_str());
}

inline void check_depth(unsigned k, unsigned cap) {
    require(k <= cap, ErrorKind::DepthTooLarge,
            "depth " + std::to_string(k) + " exceeds cap " + std::to_string(cap));
}

inline std::vector<mpz_class> raw_orbit(const mpz_class& n, unsigned k_max) {
    std::vector<mpz_class> terms;
    terms.reserve(k_max + 1);
    terms.push_back(n);
    for (unsigned k = 0; k < k_max; ++k) {
        mpz_class next = terms.back() * terms.back();
        next -= 1;
        terms.push_back(std::move(next));
    }
    return terms;
}

inline unsigned valuation(const mpz_class& value, u64 p) {
    if (value == 0) return std::numeric_limits<unsigned>::max();
    mpz_class rest;
    const mpz_class prime(static_cast<unsigned long>(p));
    return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), value.get_mpz_t(), prime.get_mpz_t()));
}

} // namespace detail

inline OrbitRecord orbit_terms(const mpz_class& n, unsigned k_max) {
    detail::check_start(n);
    detail::check_depth(k_max, kMaxOrbitDepth);
    return {n, detail::raw_orbit(n, k_max)};
}

/// { p <= prime_limit : p divides some a_k(n) }, ascending.
inline std::vector<u64> prime_set_truncated(const mpz_class& n, u64 prime_limit, unsigned threads = 1) {
    detail::check_start(n);
    const auto primes = primes_up_to(prime_limit);
    const auto hit = parallel_map(primes.size(), resolve_threads(threads),
                                  [&](std::size_t i) { return is_member(n, compute_basin(primes[i])); });
    std::vector<u64> out;
    for (std::size_t i = 0; i < primes.size(); ++i)
        if (hit[i]) out.push_back(primes[i]);
    return out;
}

/// Same as above against precomputed basins (one per prime, ascending).
inline std::vector<u64> prime_set_truncated(const mpz_class& n, const std::vector<BasinTable>& basins) {
    detail::check_start(n);
    std::vector<u64> out;
    for (const auto& b : basins)
        if (is_member(n, b)) out.push_back(b.p());
    return out;
}

/// P'(n): primes p = ±3 (mod 8) dividing (n-1) n (n+1). For such p the
/// basin is {-1, 0, 1}, so this is exactly P(n) restricted to them.
inline std::vector<u64> restricted_set(u64 n) {
    require(n >= 2, ErrorKind::BadN, "restricted_set needs n >= 2");
    std::vector<u64> found;
    for (u64 m : {n - 1, n, n + 1}) {
        for (u64 q = 2; q * q <= m; ++q) {
            if (m % q != 0) continue;
            found.push_back(q);
            while (m % q == 0) m /= q;
        }
        if (m > 1) found.push_back(m);
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    std::erase_if(found, [](u64 p) { return p % 8 != 3 && p % 8 != 5; });
    return found;
}

/// v_p(a_k) for k = 0..k_max.
inline std::vector<unsigned> valuation_profile(const mpz_class& n, u64 p, unsigned k_max) {
    detail::check_start(n);
    detail::check_depth(k_max, kMaxValuationDepth);
    require(is_prime(p), ErrorKind::NotPrime, std::to_string(p));
    std::vector<unsigned> out;
    out.reserve(k_max + 1);
    for (const auto& a : detail::raw_orbit(n, k_max)) out.push_back(detail::valuation(a, p));
    return out;
}

struct PrimeValuations {
    u64 p = 0;
    unsigned first_index = 0;              // k_0(p)
    std::vector<unsigned> valuations;      // v_p(g_k), k = 0..k_max
    double weighted_log = 0;               // 2^{-k_0(p)} log p
};

struct GcdExperimentReport {
    mpz_class n, n2;
    unsigned k_max = 0;
    std::vector<mpz_class> gcds;           // g_k = gcd(a_{2k}(n), a_{2k}(n2))
    std::vector<PrimeValuations> primes;   // odd and even primes <= trial bound dividing some g_k
    std::vector<mpz_class> cofactors;      // g_k with all those primes removed
    std::vector<bool> unfactored;          // cofactor > 1
};

inline GcdExperimentReport gcd_experiment(const mpz_class& n, const mpz_class& n2, unsigned k_max) {
    detail::check_start(n);
    detail::check_start(n2);
    detail::check_depth(k_max, kMaxGcdDepth);
    const auto orbit1 = detail::raw_orbit(n, 2 * k_max);
    const auto orbit2 = detail::raw_orbit(n2, 2 * k_max);

    GcdExperimentReport rep{n, n2, k_max, {}, {}, {}, {}};
    for (unsigned k = 0; k <= k_max; ++k) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), orbit1[2 * k].get_mpz_t(), orbit2[2 * k].get_mpz_t());
        rep.gcds.push_back(g);
    }
    rep.cofactors = rep.gcds;
    for (u64 p : primes_up_to(kGcdTrialBound)) {
        PrimeValuations pv;
        pv.p = p;
        bool seen = false;
        for (unsigned k = 0; k <= k_max; ++k) {
            const unsigned v = detail::valuation(rep.gcds[k], p);
            pv.valuations.push_back(v);
            if (v > 0 && !seen) {
                seen = true;
                pv.first_index = k;
            }
        }
        if (!seen) continue;
        pv.weighted_log = std::ldexp(std::log(static_cast<double>(p)), -static_cast<int>(pv.first_index));
        const mpz_class prime(static_cast<unsigned long>(p));
        for (auto& c : rep.cofactors) mpz_remove(c.get_mpz_t(), c.get_mpz_t(), prime.get_mpz_t());
        rep.primes.push_back(std::move(pv));
    }
    for (const auto& c : rep.cofactors) rep.unfactored.push_back(c > 1);
    return rep;
}

} // namespace qdyn
