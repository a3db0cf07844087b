#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hkit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed polynomial, scalar or JSON text. `offset` is the byte position
/// of the offending character in the input.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A hypothesis of the requested computation does not hold (non-invertible
/// operand, wrong polynomial shape, cap exceeded, ...).
class PreconditionViolated : public Error {
public:
    using Error::Error;
};

/// The combined relation does not vanish at the requested order.
class NotSatisfied : public Error {
public:
    using Error::Error;
};

enum class Contradiction {
    NoSplit,
    ModulusViolation,
    ImaginaryViolation,
    QNotShiftedNilpotent,
    CrossCheck,
};

inline const char* to_string(Contradiction c) {
    switch (c) {
    case Contradiction::NoSplit: return "no-split";
    case Contradiction::ModulusViolation: return "modulus-violation";
    case Contradiction::ImaginaryViolation: return "imaginary-violation";
    case Contradiction::QNotShiftedNilpotent: return "q-not-shifted-nilpotent";
    case Contradiction::CrossCheck: return "cross-check";
    }
    return "unknown";
}

/// Raised when an outcome contradicts a known splitting fact on exact input.
/// Reaching one of these means there is a bug.
class InternalContradiction : public Error {
public:
    InternalContradiction(Contradiction kind, const std::string& detail)
        : Error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

    Contradiction kind() const noexcept { return kind_; }

private:
    Contradiction kind_;
};

} // namespace hkit
