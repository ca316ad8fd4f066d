#pragma once

#include <stdexcept>
#include <string>

namespace fdsum {

// Base class for everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// User-input errors.
struct NotCoprime : Error { using Error::Error; };
struct BadDimension : Error { using Error::Error; };
struct BoundExceeded : Error { using Error::Error; };

// validate() failures carry the name of the violated condition ("b_must_exceed_one",
// "empty_a", "non_positive_a(j)", "not_coprime(j)"; j is 1-based).
struct InvalidInstance : Error {
    std::string condition;
    InvalidInstance(std::string cond, const std::string& msg)
        : Error(msg), condition(std::move(cond)) {}
};

// Structural errors in linear algebra.
struct NotSquare : Error { using Error::Error; };
struct Singular : Error { using Error::Error; };
struct DependentColumns : Error { using Error::Error; };
struct DivisionByZeroPoly : Error { using Error::Error; };

// Evaluation errors.
struct PoleAtPoint : Error { using Error::Error; };

// Internal-consistency failures: these signal a bug in the pipeline, never bad input.
// They are checked in every build (no NDEBUG dependence).
struct CancellationFailure : Error { using Error::Error; };
struct NonRationalResult : Error { using Error::Error; };
struct DegenerateDenominator : Error { using Error::Error; };
struct ImaginaryResidual : Error { using Error::Error; };

template <class E>
inline void check(bool ok, const std::string& msg) {
    if (!ok) throw E(msg);
}

// Always-on internal assertion.
inline void internal_check(bool ok, const std::string& msg) {
    if (!ok) throw Error("internal error: " + msg);
}

} // namespace fdsum
