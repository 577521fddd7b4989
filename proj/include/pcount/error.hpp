#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace pcount {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Polynomial degree above the configured bound.
class DegreeOverflow : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Gaussian integral whose decay condition fails.
class DivergentIntegral : public Error {
 public:
  using Error::Error;
};

/// A sampled integrand value was NaN or infinite.
class IntegrandDomainError : public Error {
 public:
  IntegrandDomainError(const std::string& what, std::complex<long double> node)
      : Error(what), node_(node) {}
  std::complex<long double> node() const noexcept { return node_; }

 private:
  std::complex<long double> node_;
};

/// Efficiency outside the range where a photocount route is defined.
class RouteDomainError : public Error {
 public:
  using Error::Error;
};

/// Requested phase-space representation is not a regular function for the state.
class RepresentationUnavailable : public Error {
 public:
  using Error::Error;
};

/// Malformed command line or input file.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace pcount
