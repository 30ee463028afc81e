#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace vofrac {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Vector or field length does not match the grid or operator.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A scalar parameter is outside its admissible range.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A power or special function was asked for a negative base.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Node, level or coefficient index outside its range.
class IndexError : public Error {
public:
    using Error::Error;
};

/// Operation requested in an inconsistent state (e.g. short history).
class StateError : public Error {
public:
    using Error::Error;
};

/// Pivot below tolerance during banded factorization.
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

/// Quadrature did not reach its accuracy target.
class NumericError : public Error {
public:
    NumericError(const std::string& what, double residual_estimate)
        : Error(what), residual_estimate_(residual_estimate) {}
    double residual_estimate() const noexcept { return residual_estimate_; }

private:
    double residual_estimate_;
};

/// GMRES hit its iteration limit; carries the best iterate.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<double> best, double residual,
                     std::size_t iterations)
        : Error(what), best_(std::move(best)), residual_(residual), iterations_(iterations) {}
    const std::vector<double>& best_iterate() const noexcept { return best_; }
    double residual() const noexcept { return residual_; }
    std::size_t iterations() const noexcept { return iterations_; }

private:
    std::vector<double> best_;
    double residual_;
    std::size_t iterations_;
};

/// A time step of the march failed; wraps the solver error with the level.
class StepError : public Error {
public:
    StepError(const std::string& what, long long level_twice, double residual)
        : Error(what), level_twice_(level_twice), residual_(residual) {}
    /// Failed level as a half-step index m = 2l.
    long long level_twice() const noexcept { return level_twice_; }
    double residual() const noexcept { return residual_; }

private:
    long long level_twice_;
    double residual_;
};

}  // namespace vofrac
