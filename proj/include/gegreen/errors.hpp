// SPDX-License-Identifier: Apache-2.0
#ifndef GEGREEN_ERRORS_HPP
#define GEGREEN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gegreen {

// Base class for all numerical-domain errors raised by the library.
// ValidationError covers ill-posed inputs (exit code 2 at the CLI);
// ConvergenceError covers failures of the numerics (exit code 3).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : Error {
    using Error::Error;
};

struct ConvergenceError : Error {
    using Error::Error;
};

struct PoleAtNonPositiveInteger : ValidationError {
    explicit PoleAtNonPositiveInteger(const std::string& what) : ValidationError(what) {}
};

struct PoleInDegree : ValidationError {
    explicit PoleInDegree(const std::string& what) : ValidationError(what) {}
};

struct CutUnresolved : ValidationError {
    explicit CutUnresolved(const std::string& what) : ValidationError(what) {}
};

struct ResonantDenominator : ValidationError {
    explicit ResonantDenominator(const std::string& what) : ValidationError(what) {}
};

struct RegimeViolation : ValidationError {
    explicit RegimeViolation(const std::string& what) : ValidationError(what) {}
};

struct DegenerateParams : ValidationError {
    explicit DegenerateParams(const std::string& what) : ValidationError(what) {}
};

struct OriginSingularity : ValidationError {
    explicit OriginSingularity(const std::string& what) : ValidationError(what) {}
};

struct PoleCollision : ValidationError {
    explicit PoleCollision(const std::string& what) : ValidationError(what) {}
};

struct PoleMissing : ValidationError {
    explicit PoleMissing(const std::string& what) : ValidationError(what) {}
};

struct NonConvergent : ConvergenceError {
    explicit NonConvergent(const std::string& what) : ConvergenceError(what) {}
};

struct QuadratureNotConverged : ConvergenceError {
    explicit QuadratureNotConverged(const std::string& what) : ConvergenceError(what) {}
};

struct TailNotNegligible : ConvergenceError {
    explicit TailNotNegligible(const std::string& what) : ConvergenceError(what) {}
};

} // namespace gegreen

#endif
