// Iterates of x^2 - 1, period polynomials, Eisenstein certificates and
// discriminants.

#include <iostream>

#include "qdyn/qdyn.hpp"

int main() {
    for (unsigned n = 1; n <= 5; ++n)
        std::cout << "Phi_" << n << " (k_" << n << " = " << qdyn::necklace_count(n) << "): " << qdyn::phi(n).to_string()
                  << '\n';

    for (unsigned m = 1; m <= 6; ++m) {
        const auto cert = qdyn::eisenstein_certificate(m);
        const auto disc = qdyn::discriminant(qdyn::iterate_poly(m) - qdyn::BigPoly{1});
        std::cout << "m=" << m << "  " << qdyn::to_string(cert.variant) << "  bits of |disc(f^m - 1)|: "
                  << mpz_sizeinbase(disc.get_mpz_t(), 2) << '\n';
    }

    std::cout << "fixed-point-free fractions:";
    for (unsigned n = 1; n <= 8; ++n) std::cout << ' ' << qdyn::fpf_fraction(n).get_str();
    std::cout << '\n';
}
