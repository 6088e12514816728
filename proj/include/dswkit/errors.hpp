#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace dswkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter or argument outside the domain where the operation is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Neither x nor t provides decay along the contour (x = 0 and t = 0).
class NoDecayError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature ran out of panels before reaching the tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::complex<double> best_value,
                   double error_estimate)
      : Error(what), best_value_(best_value), error_estimate_(error_estimate) {}

  std::complex<double> best_value() const { return best_value_; }
  double error_estimate() const { return error_estimate_; }

 private:
  std::complex<double> best_value_;
  double error_estimate_;
};

/// The 3x3 interface system is numerically singular at some contour point.
class NearSingularError : public Error {
 public:
  NearSingularError(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

/// Two oracle refinements disagree by more than the requested tolerance.
class OracleUnconvergedError : public Error {
 public:
  OracleUnconvergedError(const std::string& what, double discrepancy)
      : Error(what), discrepancy_(discrepancy) {}
  double discrepancy() const { return discrepancy_; }

 private:
  double discrepancy_;
};

/// Spectral solution carries too much energy in the highest modes.
class ResolutionError : public Error {
 public:
  ResolutionError(const std::string& what, double tail_fraction)
      : Error(what), tail_fraction_(tail_fraction) {}
  double tail_fraction() const { return tail_fraction_; }

 private:
  double tail_fraction_;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace dswkit
