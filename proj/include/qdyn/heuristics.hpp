#pragma once

/**
 * @file heuristics.hpp
 * @brief Random-tree and Chebotarev-style models for basin sizes, compared with scans.
 *
 * Model probabilities are exact rationals (mpq_class); doubles appear only in
 * derived report quantities.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qdyn/error.hpp"
#include "qdyn/iterate_algebra.hpp"
#include "qdyn/modular_dynamics.hpp"
#include "qdyn/number_theory.hpp"
#include "qdyn/support.hpp"

namespace qdyn {

inline constexpr unsigned kMaxTreeSizeIndex = 10'000;
inline constexpr unsigned kMaxExactFpfIndex = 16;
inline constexpr unsigned kMaxFpfIndex = 30;
inline constexpr unsigned kMaxDeltaDepth = 6;
inline constexpr u64 kMaxDeltaPrimeLimit = 1'000'000;
inline constexpr double kEulerGamma = 0.57721566490153286061;

/// P(basin size = 2n+1) = 4^{-n} / (2n - 1) * C(2n, n).
inline mpq_class tree_size_probability(unsigned n) {
    require(n >= 1, ErrorKind::BadN, "tree size index must be >= 1");
    require(n <= kMaxTreeSizeIndex, ErrorKind::DepthTooLarge, "tree size index exceeds 10^4");
    mpz_class central;
    mpz_bin_uiui(central.get_mpz_t(), 2 * n, n);
    mpz_class den = 2 * n - 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), 2 * n);
    mpq_class q(central, den);
    q.canonicalize();
    return q;
}

/// sum_{n=1}^{N} P(size = 2n+1) = 1 - C(2N, N) / 4^N.
inline mpq_class tree_size_partial_sum(unsigned n_max) {
    mpz_class central;
    mpz_bin_uiui(central.get_mpz_t(), 2 * n_max, n_max);
    mpz_class den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), 2 * n_max);
    mpq_class tail(central, den);
    tail.canonicalize();
    return 1 - tail;
}

struct HistogramBin {
    unsigned n = 0;            // basin size 2n+1
    u64 observed = 0;
    mpq_class predicted;       // probability * number of odd primes
};

struct SizeHistogram {
    u64 prime_limit = 0;
    unsigned n_max = 0;
    u64 odd_primes = 0;
    std::vector<HistogramBin> bins;
    u64 overflow_observed = 0;  // basin size > 2 n_max + 1
    mpq_class overflow_predicted;
    u64 even_size_observed = 0;
};

inline SizeHistogram size_histogram(u64 prime_limit, unsigned n_max = 20, unsigned threads = 1) {
    require(prime_limit >= 5, ErrorKind::BoundTooSmall, "prime_limit must be at least 5");
    require(n_max >= 1 && n_max <= kMaxTreeSizeIndex, ErrorKind::BadN, "bin count out of range");
    SizeHistogram h;
    h.prime_limit = prime_limit;
    h.n_max = n_max;
    h.bins.resize(n_max);
    for (unsigned n = 1; n <= n_max; ++n) h.bins[n - 1].n = n;
    scan_primes(prime_limit, {.with_census = false, .threads = threads}, [&](const PrimeRecord& r) {
        if (r.p == 2) return;
        ++h.odd_primes;
        if (r.basin_size % 2 == 0) {
            ++h.even_size_observed;
            return;
        }
        const u64 n = (r.basin_size - 1) / 2;
        if (n >= 1 && n <= n_max)
            ++h.bins[n - 1].observed;
        else
            ++h.overflow_observed;
    });
    const mpq_class count(static_cast<unsigned long>(h.odd_primes));
    for (auto& bin : h.bins) bin.predicted = tree_size_probability(bin.n) * count;
    h.overflow_predicted = (1 - tree_size_partial_sum(n_max)) * count;
    return h;
}

/// Parses "p/q" or an integer into a rational.
inline mpq_class parse_rational(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw Error(ErrorKind::BadBand, "not a rational: " + text);
    require(q.get_den() != 0, ErrorKind::BadBand, "zero denominator: " + text);
    q.canonicalize();
    return q;
}

struct BandReport {
    u64 prime_limit = 0;
    mpq_class a, b;
    std::vector<u64> primes;
    u64 observed = 0;
    double shape = 0;        // sqrt(X)/log X * (1/sqrt(a) - 1/sqrt(b))
    double fitted_ratio = 0; // observed / shape, 0 when shape is 0
};

/// Primes p <= X with a*p <= #basin <= b*p, both ends inclusive.
inline BandReport band_count(u64 prime_limit, const mpq_class& a, const mpq_class& b, unsigned threads = 1) {
    require(a > 0 && a <= b && b < 1, ErrorKind::BadBand, "need 0 < a <= b < 1");
    require(prime_limit >= 2, ErrorKind::BoundTooSmall, "prime_limit must be at least 2");
    BandReport rep;
    rep.prime_limit = prime_limit;
    rep.a = a;
    rep.b = b;
    scan_primes(prime_limit, {.with_census = false, .threads = threads}, [&](const PrimeRecord& r) {
        const mpq_class size(static_cast<unsigned long>(r.basin_size));
        const mpq_class p(static_cast<unsigned long>(r.p));
        if (a * p <= size && size <= b * p) rep.primes.push_back(r.p);
    });
    rep.observed = rep.primes.size();
    if (a != b) {
        const double x = static_cast<double>(prime_limit);
        rep.shape = std::sqrt(x) / std::log(x) * (1 / std::sqrt(a.get_d()) - 1 / std::sqrt(b.get_d()));
        rep.fitted_ratio = static_cast<double>(rep.observed) / rep.shape;
    }
    return rep;
}

/// Fraction of C_n wr S_{k_n} without a fixed point:
/// sum_{k=0}^{K} (sum_{j=0}^{K-k} (-1)^j / j!) (1 - 1/n)^k / k!,  K = k_n.
/// Evaluated over Z as sum_k C(K,k) D_{K-k} (n-1)^k n^{K-k} / (K! n^K), D the derangement numbers.
inline mpq_class fpf_fraction(unsigned n) {
    require(n >= 1, ErrorKind::BadN, "fpf index must be >= 1");
    require(n <= kMaxExactFpfIndex, ErrorKind::DepthTooLarge,
            "exact fpf fraction supported up to n = " + std::to_string(kMaxExactFpfIndex));
    const u64 k_total = necklace_count(n);
    std::vector<mpz_class> derange(k_total + 1);
    derange[0] = 1;
    for (u64 m = 1; m <= k_total; ++m) {
        derange[m] = derange[m - 1] * static_cast<unsigned long>(m);
        if (m % 2 == 0)
            derange[m] += 1;
        else
            derange[m] -= 1;
    }
    mpz_class numerator = 0;
    mpz_class binom = 1; // C(K, k)
    mpz_class pow_nm1 = 1;
    std::vector<mpz_class> pow_n(k_total + 1);
    pow_n[0] = 1;
    for (u64 k = 1; k <= k_total; ++k) pow_n[k] = pow_n[k - 1] * n;
    for (u64 k = 0; k <= k_total; ++k) {
        numerator += binom * derange[k_total - k] * pow_nm1 * pow_n[k_total - k];
        binom = binom * static_cast<unsigned long>(k_total - k) / static_cast<unsigned long>(k + 1);
        pow_nm1 *= n - 1;
    }
    mpz_class denominator;
    mpz_fac_ui(denominator.get_mpz_t(), k_total);
    denominator *= pow_n[k_total];
    mpq_class q(numerator, denominator);
    q.canonicalize();
    return q;
}

/// Floating evaluation for n up to 30, where k_n is too large for exact sums.
/// Terms with k > 200 are below 1e-300 and inner sums with K - k > 25 equal
/// 1/e to double precision.
inline double fpf_fraction_approx(unsigned n) {
    require(n >= 1, ErrorKind::BadN, "fpf index must be >= 1");
    require(n <= kMaxFpfIndex, ErrorKind::DepthTooLarge, "fpf index exceeds 30");
    if (n <= kMaxExactFpfIndex) return fpf_fraction(n).get_d();
    const u64 k_total = necklace_count(n);
    const double r = 1.0 - 1.0 / n;
    auto inner = [](u64 m) {
        if (m > 25) return std::exp(-1.0);
        double s = 0, term = 1;
        for (u64 j = 0; j <= m; ++j) {
            s += term;
            term *= -1.0 / static_cast<double>(j + 1);
        }
        return s;
    };
    double sum = 0, weight = 1; // r^k / k!
    for (u64 k = 0; k <= std::min<u64>(k_total, 200); ++k) {
        sum += inner(k_total - k) * weight;
        weight *= r / static_cast<double>(k + 1);
    }
    return sum;
}

struct FullBasinPrediction {
    u64 x = 0;
    double c_base = 0;        // e^{3/2 - gamma} / 2
    double c_refined = 0;     // doubled constant
    double prime_harmonic = 0;
    double expected_base = 0;
    double expected_refined = 0;
};

inline FullBasinPrediction full_basin_prediction(u64 x) {
    require(x >= 3, ErrorKind::BoundTooSmall, "x must be at least 3");
    FullBasinPrediction pred;
    pred.x = x;
    pred.c_base = std::exp(1.5 - kEulerGamma) / 2;
    pred.c_refined = 2 * pred.c_base;
    for (u64 p : primes_up_to(x)) pred.prime_harmonic += 1.0 / static_cast<double>(p);
    pred.expected_base = pred.c_base * pred.prime_harmonic;
    pred.expected_refined = pred.c_refined * pred.prime_harmonic;
    return pred;
}

namespace detail {

/// levels[m] = whether f^m(x) = 1 is solvable in F_p, for m = 0..m_max.
/// f is evaluated on every residue; the solution sets are then walked
/// backwards from 1 through the resulting preimage lists.
inline std::vector<bool> root_levels(u64 p, unsigned m_max) {
    std::vector<std::uint32_t> image(p);
    std::vector<std::uint32_t> start(p + 1, 0);
    for (u64 x = 0; x < p; ++x) {
        image[x] = static_cast<std::uint32_t>(step_mod(x, p));
        ++start[image[x] + 1];
    }
    for (u64 y = 0; y < p; ++y) start[y + 1] += start[y];
    std::vector<std::uint32_t> preimages(p);
    {
        std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
        for (u64 x = 0; x < p; ++x) preimages[fill[image[x]]++] = static_cast<std::uint32_t>(x);
    }
    std::vector<bool> levels(m_max + 1, false);
    std::vector<std::uint32_t> frontier{static_cast<std::uint32_t>(1 % p)};
    std::vector<std::uint32_t> next;
    for (unsigned m = 0; m <= m_max && !frontier.empty(); ++m) {
        levels[m] = true;
        next.clear();
        for (std::uint32_t y : frontier)
            for (std::uint32_t i = start[y]; i < start[y + 1]; ++i) next.push_back(preimages[i]);
        frontier.swap(next);
    }
    return levels;
}

} // namespace detail

struct DeltaProfile {
    u64 prime_limit = 0;
    u64 prime_count = 0;
    std::vector<u64> solvable; // solvable[m] = #{p : f^m(x) = 1 has a root mod p}

    mpq_class fraction(unsigned m) const {
        mpq_class q(static_cast<unsigned long>(solvable.at(m)), static_cast<unsigned long>(prime_count));
        q.canonicalize();
        return q;
    }
};

inline DeltaProfile delta_profile(unsigned m_max, u64 prime_limit, unsigned threads = 1) {
    require(m_max <= kMaxDeltaDepth, ErrorKind::DepthTooLarge, "delta depth exceeds 6");
    require(prime_limit >= 2, ErrorKind::BoundTooSmall, "prime_limit must be at least 2");
    require(prime_limit <= kMaxDeltaPrimeLimit, ErrorKind::BoundTooSmall, "prime_limit exceeds 10^6");
    const auto primes = primes_up_to(prime_limit);
    const auto levels = parallel_map(primes.size(), resolve_threads(threads),
                                     [&](std::size_t i) { return detail::root_levels(primes[i], m_max); });
    DeltaProfile prof;
    prof.prime_limit = prime_limit;
    prof.prime_count = primes.size();
    prof.solvable.assign(m_max + 1, 0);
    for (const auto& lv : levels)
        for (unsigned m = 0; m <= m_max; ++m) prof.solvable[m] += lv[m] ? 1 : 0;
    return prof;
}

/// Fraction of primes p <= prime_limit for which f^m(x) = 1 has a root mod p.
inline mpq_class delta_estimate(unsigned m, u64 prime_limit, unsigned threads = 1) {
    return delta_profile(m, prime_limit, threads).fraction(m);
}

} // namespace qdyn
