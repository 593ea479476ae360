#ifndef FJF_ERRORS_HPP
#define FJF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fjf {

// Base class for all domain errors thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A matrix that was required to be positive semidefinite is not.
struct NotPositiveSemidefinite : Error {
    explicit NotPositiveSemidefinite(const std::string& what) : Error(what) {}
};

// Eisenstein series are only provided for weights 4 and 6.
struct UnsupportedWeight : Error {
    explicit UnsupportedWeight(const std::string& what) : Error(what) {}
};

// Two coefficients that must agree by the elliptic coefficient law differ.
struct CoefficientLawViolation : Error {
    explicit CoefficientLawViolation(const std::string& what) : Error(what) {}
};

// A theta component has support off its residue class mod 4m.
struct GradingViolation : Error {
    explicit GradingViolation(const std::string& what) : Error(what) {}
};

// A Fourier-Jacobi component has the wrong index, weight or truncation.
struct ComponentMismatch : Error {
    explicit ComponentMismatch(const std::string& what) : Error(what) {}
};

// A coefficient outside the stored truncation range was requested.
struct PrecisionExceeded : Error {
    explicit PrecisionExceeded(const std::string& what) : Error(what) {}
};

// The solver handles even weights only.
struct OddWeightUnsupported : Error {
    explicit OddWeightUnsupported(const std::string& what) : Error(what) {}
};

// A reference dimension outside the configured table range was requested.
struct TableRangeExceeded : Error {
    explicit TableRangeExceeded(const std::string& what) : Error(what) {}
};

// Malformed document text.
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

// Well-formed text describing an object that violates an invariant.
struct ValidationError : Error {
    explicit ValidationError(const std::string& what) : Error(what) {}
};

} // namespace fjf

#endif
