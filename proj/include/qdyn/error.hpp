#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qdyn {

enum class ErrorKind {
    NotPrime,
    ModulusTooLarge,
    BoundTooSmall,
    DuplicatePrime,
    BadN,
    DepthTooLarge,
    CertificateFailed,
    NonExactDivision,
    ZeroPolynomial,
    BadBand,
    Usage,
};

constexpr const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::ModulusTooLarge: return "ModulusTooLarge";
    case ErrorKind::BoundTooSmall: return "BoundTooSmall";
    case ErrorKind::DuplicatePrime: return "DuplicatePrime";
    case ErrorKind::BadN: return "BadN";
    case ErrorKind::DepthTooLarge: return "DepthTooLarge";
    case ErrorKind::CertificateFailed: return "CertificateFailed";
    case ErrorKind::NonExactDivision: return "NonExactDivision";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::BadBand: return "BadBand";
    case ErrorKind::Usage: return "Usage";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) throw Error(kind, what);
}

} // namespace qdyn
