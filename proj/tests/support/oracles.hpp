#pragma once

// Independent reference implementations used only by the tests. None of
// these call into the library's algorithms; they recompute from scratch
// with the most direct method available.

#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 powm(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = static_cast<u64>(static_cast<u128>(r) * b % m);
        b = static_cast<u64>(static_cast<u128>(b) * b % m);
        e >>= 1;
    }
    return r;
}

inline bool trial_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<u64> sieve(u64 limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<u64> out;
    for (u64 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

/// Basin of 0 by walking each orbit until it hits 0 or repeats (at most p steps).
inline std::vector<u64> forward_basin(u64 p) {
    std::vector<u64> out;
    for (u64 x = 0; x < p; ++x) {
        u64 y = x;
        for (u64 step = 0; step <= p; ++step) {
            if (y == 0) {
                out.push_back(x);
                break;
            }
            y = (y * y + p - 1) % p;
        }
    }
    return out;
}

/// Square root mod an odd prime (Tonelli-Shanks); nullopt for non-residues.
inline std::optional<u64> sqrt_mod(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (powm(a, (p - 1) / 2, p) != 1) return std::nullopt;
    u64 q = p - 1, s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    u64 z = 2;
    while (powm(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 m = s, c = powm(z, q, p), t = powm(a, q, p), r = powm(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 i = 0, t2 = t;
        while (t2 != 1) {
            t2 = static_cast<u64>(static_cast<u128>(t2) * t2 % p);
            ++i;
        }
        u64 b = c;
        for (u64 j = 0; j + i + 1 < m; ++j) b = static_cast<u64>(static_cast<u128>(b) * b % p);
        m = i;
        c = static_cast<u64>(static_cast<u128>(b) * b % p);
        t = static_cast<u64>(static_cast<u128>(t) * c % p);
        r = static_cast<u64>(static_cast<u128>(r) * b % p);
    }
    return r;
}

/// Basin of 0 by breadth-first search over preimages: f(x) = y iff x = ±sqrt(y + 1).
inline std::vector<u64> backward_basin(u64 p) {
    std::vector<bool> seen(p, false);
    std::deque<u64> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
        const u64 y = queue.front();
        queue.pop_front();
        const auto r = sqrt_mod((y + 1) % p, p);
        if (!r) continue;
        for (u64 x : {*r, (p - *r) % p}) {
            if (!seen[x]) {
                seen[x] = true;
                queue.push_back(x);
            }
        }
    }
    std::vector<u64> out;
    for (u64 x = 0; x < p; ++x)
        if (seen[x]) out.push_back(x);
    return out;
}

/// Cycle lengths of x -> x^2 - 1 on F_p, found by marking every orbit.
inline std::multiset<u64> cycle_lengths(u64 p) {
    std::vector<int> state(p, 0); // 0 unvisited, 1 on current path, 2 done
    std::multiset<u64> cycles;
    for (u64 s = 0; s < p; ++s) {
        std::vector<u64> path;
        u64 x = s;
        while (state[x] == 0) {
            state[x] = 1;
            path.push_back(x);
            x = (x * x + p - 1) % p;
        }
        if (state[x] == 1) {
            u64 len = 1;
            for (u64 y = (x * x + p - 1) % p; y != x; y = (y * y + p - 1) % p) ++len;
            cycles.insert(len);
        }
        for (u64 v : path) state[v] = 2;
    }
    return cycles;
}

/// Does p divide some term of the integer orbit of n? Walks the orbit mod p.
inline bool orbit_hits_zero(u64 n, u64 p) {
    u64 y = n % p;
    for (u64 step = 0; step <= p; ++step) {
        if (y == 0) return true;
        y = static_cast<u64>((static_cast<u128>(y) * y + p - 1) % p);
    }
    return false;
}

// ---- rational polynomials (constant term first) ----

using QPoly = std::vector<mpq_class>;

inline void trim(QPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int deg(const QPoly& a) { return static_cast<int>(a.size()) - 1; }

inline QPoly rem(QPoly a, const QPoly& b) {
    trim(a);
    while (deg(a) >= deg(b)) {
        const mpq_class f = a.back() / b.back();
        const int shift = deg(a) - deg(b);
        for (int i = 0; i <= deg(b); ++i) a[i + shift] -= f * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

/// Resultant by the Euclidean recursion Res(A,B) = (-1)^{mn} lc(B)^{m - deg R} Res(B, R).
inline mpq_class euclid_resultant(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    if (a.empty() || b.empty()) return 0;
    const int m = deg(a), n = deg(b);
    if (n == 0) {
        mpq_class r = 1;
        for (int i = 0; i < m; ++i) r *= b[0];
        return r;
    }
    if (m < n) {
        const mpq_class r = euclid_resultant(b, a);
        return (m * n) % 2 ? mpq_class(-r) : r;
    }
    QPoly r = rem(a, b);
    if (r.empty()) return 0;
    mpq_class scale = 1;
    for (int i = 0; i < m - deg(r); ++i) scale *= b.back();
    mpq_class out = scale * euclid_resultant(b, r);
    return (m * n) % 2 ? mpq_class(-out) : out;
}

inline mpq_class euclid_discriminant(const QPoly& g) {
    QPoly dg;
    for (std::size_t i = 1; i < g.size(); ++i) dg.push_back(g[i] * static_cast<long>(i));
    const int d = deg(g);
    mpq_class r = euclid_resultant(g, dg) / g.back();
    return (d * (d - 1) / 2) % 2 ? mpq_class(-r) : r;
}

/// Coefficients s_0..s_n of sqrt(1 - w) from s^2 = 1 - w.
inline std::vector<mpq_class> sqrt_one_minus_w(unsigned n) {
    std::vector<mpq_class> s(n + 1);
    s[0] = 1;
    for (unsigned k = 1; k <= n; ++k) {
        mpq_class target = k == 1 ? mpq_class(-1) : mpq_class(0);
        for (unsigned i = 1; i < k; ++i) target -= s[i] * s[k - i];
        s[k] = target / 2;
    }
    return s;
}

/// Coefficient of z^{2n+1} in z (1 - sqrt(1 - z^2)).
inline mpq_class tree_series_coefficient(unsigned n) { return -sqrt_one_minus_w(n)[n]; }

inline mpq_class factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return mpq_class(f);
}

/// Fixed-point-free fraction by the nested derangement sum
/// sum_k (sum_{j <= K-k} (-1)^j / j!) (1 - 1/n)^k / k!.
inline mpq_class fpf_nested_sum(unsigned n, u64 k_n) {
    mpq_class total = 0;
    const mpq_class ratio = 1 - mpq_class(1, n);
    mpq_class power = 1;
    for (u64 k = 0; k <= k_n; ++k) {
        mpq_class inner = 0;
        for (u64 j = 0; j <= k_n - k; ++j) {
            const mpq_class term = 1 / factorial(static_cast<unsigned>(j));
            inner += j % 2 ? mpq_class(-term) : term;
        }
        total += inner * power / factorial(static_cast<unsigned>(k));
        power *= ratio;
    }
    return total;
}

/// n-cycle count from sum_{d | n} d k_d = 2^n.
inline std::vector<u64> cycle_counts_by_recursion(unsigned n_max) {
    std::vector<u64> k(n_max + 1, 0);
    for (unsigned n = 1; n <= n_max; ++n) {
        u64 rest = u64{1} << n;
        for (unsigned d = 1; d < n; ++d)
            if (n % d == 0) rest -= d * k[d];
        k[n] = rest / n;
    }
    return k;
}

/// For x <= 2^31: smallest prime bound q with primes <= q giving distinct
/// basin signatures on the universe {2..x} minus {m^2 - 1}. Plain vectors of bits.
inline u64 minimal_separating_prime_by_signatures(u64 x_max) {
    std::vector<u64> universe;
    for (u64 n = 2; n <= x_max; ++n) {
        u64 r = 0;
        while ((r + 1) * (r + 1) <= n + 1) ++r;
        if (r * r != n + 1) universe.push_back(n);
    }
    std::vector<std::string> sig(universe.size());
    u64 p = 1;
    while (true) {
        do ++p;
        while (!trial_prime(p));
        const auto basin = forward_basin(p);
        std::vector<bool> member(p, false);
        for (u64 r : basin) member[r] = true;
        for (std::size_t i = 0; i < universe.size(); ++i) sig[i] += member[universe[i] % p] ? '1' : '0';
        std::set<std::string> distinct(sig.begin(), sig.end());
        if (distinct.size() == sig.size()) return p;
    }
}

} // namespace oracle
