// Copyright 2026 The dipolink Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace dipolink {

/// Bad input: invalid geometry, out-of-range parameter, malformed config.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidGeometry : public DomainError {
public:
    using DomainError::DomainError;
};

/// Dimension mismatch between states, matrices and decompositions.
class ShapeError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Numerical failure: non-finite input, no convergence, invalid expansion.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public NumericError {
public:
    ConvergenceError(const std::string& what, double residual)
        : NumericError(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// First-order splitting expansion returned a non-positive gap.
class ExpansionInvalid : public NumericError {
public:
    using NumericError::NumericError;
};

}  // namespace dipolink
