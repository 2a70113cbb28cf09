#pragma once

// Dense univariate polynomials over Z with GMP coefficients, constant term first.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qdyn/error.hpp"

namespace qdyn {

class BigPoly {
public:
    BigPoly() = default;
    BigPoly(std::initializer_list<long> coeffs) {
        for (long c : coeffs) coeffs_.emplace_back(c);
        trim();
    }
    explicit BigPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static BigPoly x() { return BigPoly{0, 1}; }
    static BigPoly constant(const mpz_class& c) { return BigPoly(std::vector<mpz_class>{c}); }
    static BigPoly monomial(const mpz_class& c, std::size_t k) {
        std::vector<mpz_class> v(k + 1);
        v[k] = c;
        return BigPoly(std::move(v));
    }

    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<mpz_class>& coeffs() const noexcept { return coeffs_; }

    mpz_class operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : mpz_class(0); }
    const mpz_class& leading() const { return coeffs_.back(); }

    mpz_class eval(const mpz_class& at) const {
        mpz_class acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc *= at;
            acc += *it;
        }
        return acc;
    }

    BigPoly derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<mpz_class> d(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<unsigned long>(k);
        return BigPoly(std::move(d));
    }

    BigPoly& operator+=(const BigPoly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        trim();
        return *this;
    }
    BigPoly& operator-=(const BigPoly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        trim();
        return *this;
    }
    BigPoly& operator*=(const mpz_class& c) {
        for (auto& a : coeffs_) a *= c;
        trim();
        return *this;
    }

    friend BigPoly operator+(BigPoly a, const BigPoly& b) { return a += b; }
    friend BigPoly operator-(BigPoly a, const BigPoly& b) { return a -= b; }
    friend BigPoly operator*(BigPoly a, const mpz_class& c) { return a *= c; }

    /// Schoolbook product.
    friend BigPoly operator*(const BigPoly& a, const BigPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<mpz_class> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                mpz_addmul(out[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
        }
        return BigPoly(std::move(out));
    }

    /// a^2 using the symmetry of the product (about half the multiplications).
    BigPoly squared() const {
        if (is_zero()) return {};
        const std::size_t n = coeffs_.size();
        std::vector<mpz_class> out(2 * n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            if (coeffs_[i] == 0) continue;
            for (std::size_t j = i + 1; j < n; ++j)
                mpz_addmul(out[i + j].get_mpz_t(), coeffs_[i].get_mpz_t(), coeffs_[j].get_mpz_t());
        }
        for (auto& c : out) c *= 2;
        for (std::size_t i = 0; i < n; ++i)
            mpz_addmul(out[2 * i].get_mpz_t(), coeffs_[i].get_mpz_t(), coeffs_[i].get_mpz_t());
        return BigPoly(std::move(out));
    }

    /// this(inner), by Horner.
    BigPoly compose(const BigPoly& inner) const {
        BigPoly acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * inner;
            acc += constant(*it);
        }
        return acc;
    }

    /// Quotient and remainder for a divisor whose leading coefficient divides
    /// every leading term met along the way; otherwise NonExactDivision.
    std::pair<BigPoly, BigPoly> divmod(const BigPoly& divisor) const {
        require(!divisor.is_zero(), ErrorKind::ZeroPolynomial, "division by the zero polynomial");
        std::vector<mpz_class> rem = coeffs_;
        const std::size_t dd = divisor.coeffs_.size();
        if (rem.size() < dd) return {BigPoly{}, *this};
        std::vector<mpz_class> quot(rem.size() - dd + 1);
        const mpz_class& lc = divisor.leading();
        for (std::size_t k = rem.size(); k-- >= dd;) {
            if (rem[k] == 0) continue;
            require(mpz_divisible_p(rem[k].get_mpz_t(), lc.get_mpz_t()) != 0, ErrorKind::NonExactDivision,
                    "leading coefficient does not divide over Z");
            mpz_class q;
            mpz_divexact(q.get_mpz_t(), rem[k].get_mpz_t(), lc.get_mpz_t());
            const std::size_t shift = k - (dd - 1);
            for (std::size_t j = 0; j < dd; ++j)
                mpz_submul(rem[shift + j].get_mpz_t(), q.get_mpz_t(), divisor.coeffs_[j].get_mpz_t());
            quot[shift] = std::move(q);
        }
        return {BigPoly(std::move(quot)), BigPoly(std::move(rem))};
    }

    /// Quotient of an exact division; a nonzero remainder is an error.
    BigPoly divide_exact(const BigPoly& divisor) const {
        auto [q, r] = divmod(divisor);
        require(r.is_zero(), ErrorKind::NonExactDivision, "nonzero remainder");
        return q;
    }

    bool operator==(const BigPoly&) const = default;

    /// Descending powers, e.g. "x^12 - 6*x^10 + x^9 - 2*x + 1".
    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t k = coeffs_.size(); k-- > 0;) {
            const mpz_class& c = coeffs_[k];
            if (c == 0) continue;
            const bool negative = c < 0;
            const mpz_class mag = abs(c);
            if (out.empty())
                out += negative ? "-" : "";
            else
                out += negative ? " - " : " + ";
            const bool unit = mag == 1;
            if (k == 0) {
                out += mag.get_str();
                continue;
            }
            if (!unit) out += mag.get_str() + "*";
            out += k == 1 ? "x" : "x^" + std::to_string(k);
        }
        return out;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<mpz_class> coeffs_;
};

} // namespace qdyn
