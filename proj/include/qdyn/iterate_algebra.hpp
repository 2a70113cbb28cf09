#pragma once

/**
 * @file iterate_algebra.hpp
 * @brief Exact algebra of the iterates of f = x^2 - 1 over Z.
 *
 * Iterates f^m, Eisenstein-at-2 certificates for f^m - 1, the period
 * polynomials Phi_n defined by prod_{d | n} Phi_d = f^n - x, their
 * necklace counts k_n, and discriminants via Sylvester determinants.
 */

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qdyn/big_poly.hpp"
#include "qdyn/error.hpp"
#include "qdyn/number_theory.hpp"

namespace qdyn {

inline constexpr unsigned kMaxIterateDepth = 12;
inline constexpr unsigned kMaxPhiIndex = 8;
inline constexpr unsigned kMaxNecklaceIndex = 60;

inline const BigPoly& quadratic_map() {
    static const BigPoly f{-1, 0, 1};
    return f;
}

/// f^m with f^0 = x, built as f^{j+1} = (f^j)^2 - 1.
inline BigPoly iterate_poly(unsigned m) {
    require(m <= kMaxIterateDepth, ErrorKind::DepthTooLarge,
            "iterate depth " + std::to_string(m) + " exceeds " + std::to_string(kMaxIterateDepth));
    BigPoly g = BigPoly::x();
    for (unsigned j = 0; j < m; ++j) g = g.squared() - BigPoly{1};
    return g;
}

enum class EisensteinVariant { direct, shifted };

constexpr const char* to_string(EisensteinVariant v) {
    return v == EisensteinVariant::direct ? "direct" : "shifted";
}

struct EisensteinCertificate {
    unsigned m = 0;
    EisensteinVariant variant = EisensteinVariant::direct;
    BigPoly polynomial;
    bool leading_odd = false;
    bool nonleading_even = false;
    bool constant_two_mod_four = false;
    bool verified = false;
};

namespace detail {

inline EisensteinCertificate check_eisenstein_at_two(unsigned m, EisensteinVariant variant, BigPoly poly) {
    EisensteinCertificate cert;
    cert.m = m;
    cert.variant = variant;
    const auto& c = poly.coeffs();
    cert.leading_odd = !c.empty() && mpz_odd_p(c.back().get_mpz_t());
    cert.nonleading_even = true;
    for (std::size_t k = 0; k + 1 < c.size(); ++k)
        if (mpz_odd_p(c[k].get_mpz_t())) cert.nonleading_even = false;
    cert.constant_two_mod_four = !c.empty() && mpz_fdiv_ui(c[0].get_mpz_t(), 4) == 2;
    cert.verified = cert.leading_odd && cert.nonleading_even && cert.constant_two_mod_four;
    cert.polynomial = std::move(poly);
    return cert;
}

} // namespace detail

/// Whichever of f^m - 1 and f^m(x - 1) - 1 is Eisenstein at 2.
inline EisensteinCertificate eisenstein_certificate(unsigned m) {
    require(m >= 1, ErrorKind::BadN, "eisenstein_certificate needs m >= 1");
    require(m <= kMaxIterateDepth, ErrorKind::DepthTooLarge, "m exceeds " + std::to_string(kMaxIterateDepth));
    const BigPoly one{1};
    auto direct = detail::check_eisenstein_at_two(m, EisensteinVariant::direct, iterate_poly(m) - one);
    if (direct.verified) return direct;

    BigPoly shifted{-1, 1};
    for (unsigned j = 0; j < m; ++j) shifted = shifted.squared() - one;
    auto cert = detail::check_eisenstein_at_two(m, EisensteinVariant::shifted, shifted - one);
    require(cert.verified, ErrorKind::CertificateFailed,
            "neither f^m - 1 nor f^m(x-1) - 1 is Eisenstein at 2 for m = " + std::to_string(m));
    return cert;
}

/// Phi_n by exact division of f^n - x by the Phi_d for proper divisors d.
inline BigPoly phi(unsigned n) {
    require(n >= 1, ErrorKind::BadN, "phi needs n >= 1");
    require(n <= kMaxPhiIndex, ErrorKind::DepthTooLarge, "phi index exceeds " + std::to_string(kMaxPhiIndex));
    static std::mutex mutex;
    static std::map<unsigned, BigPoly> memo;
    {
        std::lock_guard lock(mutex);
        if (auto it = memo.find(n); it != memo.end()) return it->second;
    }
    BigPoly result = iterate_poly(n) - BigPoly::x();
    for (u64 d : divisors(n))
        if (d < n) result = result.divide_exact(phi(static_cast<unsigned>(d)));
    std::lock_guard lock(mutex);
    return memo.emplace(n, std::move(result)).first->second;
}

/// k_n = (1/n) sum_{d | n} mu(n/d) 2^d, the number of n-cycles of f over Qbar.
inline u64 necklace_count(unsigned n) {
    require(n >= 1, ErrorKind::BadN, "necklace_count needs n >= 1");
    require(n <= kMaxNecklaceIndex, ErrorKind::DepthTooLarge,
            "necklace index exceeds " + std::to_string(kMaxNecklaceIndex));
    __int128 sum = 0;
    for (u64 d : divisors(n)) sum += static_cast<__int128>(moebius(n / d)) * (static_cast<__int128>(1) << d);
    return static_cast<u64>(sum / n);
}

/// Determinant of a square integer matrix by Bareiss fraction-free elimination.
inline mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

/// Res(a, b) as the determinant of the Sylvester matrix.
inline mpz_class resultant(const BigPoly& a, const BigPoly& b) {
    require(!a.is_zero() && !b.is_zero(), ErrorKind::ZeroPolynomial, "resultant of the zero polynomial");
    const std::size_t m = static_cast<std::size_t>(a.degree());
    const std::size_t n = static_cast<std::size_t>(b.degree());
    const std::size_t size = m + n;
    if (size == 0) return 1;
    std::vector<std::vector<mpz_class>> syl(size, std::vector<mpz_class>(size));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k <= m; ++k) syl[r][r + k] = a[m - k];
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t k = 0; k <= n; ++k) syl[n + r][r + k] = b[n - k];
    return bareiss_determinant(std::move(syl));
}

/// disc g = (-1)^{d(d-1)/2} Res(g, g') / lc(g).
inline mpz_class discriminant(const BigPoly& g) {
    require(!g.is_zero(), ErrorKind::ZeroPolynomial, "discriminant of the zero polynomial");
    require(g.degree() >= 1, ErrorKind::ZeroPolynomial, "discriminant needs degree >= 1");
    const long d = g.degree();
    mpz_class res = resultant(g, g.derivative());
    require(mpz_divisible_p(res.get_mpz_t(), g.leading().get_mpz_t()) != 0, ErrorKind::NonExactDivision,
            "resultant not divisible by the leading coefficient");
    mpz_class disc;
    mpz_divexact(disc.get_mpz_t(), res.get_mpz_t(), g.leading().get_mpz_t());
    if ((d * (d - 1) / 2) % 2 != 0) disc = -disc;
    return disc;
}

} // namespace qdyn
