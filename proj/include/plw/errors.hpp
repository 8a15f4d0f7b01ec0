#pragma once

#include <stdexcept>
#include <string>

namespace plw {

/// Invalid parameters or configuration (CLI exit status 2).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure did not deliver the requested accuracy
/// (CLI exit status 3).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-positive pivot in the Hankel Cholesky factorization. The working
/// precision was too low for the requested degree.
class CholeskyBreakdown : public NumericError {
public:
    CholeskyBreakdown(std::size_t pivot, const std::string& what)
        : NumericError(what), pivot_(pivot) {}
    std::size_t pivot() const { return pivot_; }

private:
    std::size_t pivot_;
};

/// Quadrature refinement hit the level cap before meeting its tolerance.
class QuadratureNonConvergence : public NumericError {
public:
    using NumericError::NumericError;
};

}  // namespace plw
