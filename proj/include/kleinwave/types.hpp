#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace kleinwave {

using Complex = std::complex<double>;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or non-finite input data.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// Evaluation outside the domain of definition.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Request exceeds a configured capacity cap (basis order, derivative order).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// The particular solution f vanishes (or nearly vanishes) on the grid.
class VanishingFError : public Error {
 public:
  using Error::Error;
};

/// An iteration failed to converge or produced inconsistent results.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// The basis does not satisfy the Haar condition (singular interpolation).
class HaarConditionError : public Error {
 public:
  using Error::Error;
};

/// Bad run configuration (missing fields, wrong strategy for the data).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace kleinwave
