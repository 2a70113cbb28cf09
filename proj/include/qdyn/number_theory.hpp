#pragma once

/**
 * @file number_theory.hpp
 * @brief 64-bit modular arithmetic, deterministic primality and prime sieving.
 *
 * Residues are kept in uint64_t and products go through unsigned __int128,
 * so every modulus below 2^63 is handled exactly. The public API bounds
 * moduli by 2^61.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace qdyn {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline constexpr u64 kMaxModulus = u64{1} << 61;

constexpr u64 mul_mod(u64 a, u64 b, u64 m) {
    if (((a | b) >> 32) == 0) return (a * b) % m;
    return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

constexpr u64 pow_mod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// One step of x -> x^2 - 1 on residues mod m.
constexpr u64 step_mod(u64 x, u64 m) {
    u64 sq = mul_mod(x, x, m);
    return sq == 0 ? m - 1 : sq - 1;
}

namespace detail {

constexpr bool miller_rabin_witness(u64 n, u64 a, u64 d, int r) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < r; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

} // namespace detail

/// Deterministic Miller-Rabin. The first twelve prime bases are a proven
/// witness set for all n < 3.3 * 10^24, which covers every 64-bit input.
constexpr bool is_prime(u64 n) {
    if (n < 2) return false;
    constexpr u64 bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 b : bases) {
        if (n == b) return true;
        if (n % b == 0) return false;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (u64 b : bases) {
        if (detail::miller_rabin_witness(n, b, d, r)) return false;
    }
    return true;
}

/// All primes p <= limit, ascending (odd-only sieve of Eratosthenes).
inline std::vector<u64> primes_up_to(u64 limit) {
    std::vector<u64> out;
    if (limit < 2) return out;
    out.push_back(2);
    if (limit < 3) return out;
    // index i represents 2i+1
    const u64 half = (limit - 1) / 2 + 1;
    std::vector<bool> composite(half, false);
    for (u64 i = 1; (2 * i + 1) * (2 * i + 1) <= limit; ++i) {
        if (composite[i]) continue;
        const u64 p = 2 * i + 1;
        for (u64 j = (p * p) / 2; j < half; j += p) composite[j] = true;
    }
    for (u64 i = 1; i < half; ++i) {
        if (!composite[i]) out.push_back(2 * i + 1);
    }
    return out;
}

constexpr u64 isqrt(u64 n) {
    if (n < 2) return n;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

/// n = m^2 - 1 for some integer m >= 2.
constexpr bool is_square_minus_one(u64 n) {
    if (n < 3) return false;
    const u64 r = isqrt(n + 1);
    return r * r == n + 1;
}

/// Moebius function by trial division (small arguments only).
constexpr int moebius(u64 n) {
    int result = 1;
    for (u64 q = 2; q * q <= n; ++q) {
        if (n % q != 0) continue;
        n /= q;
        if (n % q == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}

inline std::vector<u64> divisors(u64 n) {
    std::vector<u64> small, large;
    for (u64 d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d * d != n) large.push_back(n / d);
    }
    std::reverse(large.begin(), large.end());
    small.insert(small.end(), large.begin(), large.end());
    return small;
}

} // namespace qdyn
