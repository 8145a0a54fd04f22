#pragma once

#include <stdexcept>
#include <string>

namespace nodal {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain where a construction is defined
/// (e.g. a degree that is not a multiple of 3 for the C family).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Coincident lines, singular Hessians and similar degeneracies.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double x, double y)
      : Error(what), last_x(x), last_y(y) {}
  double last_x;
  double last_y;
};

/// A polished critical value does not sit on any of the expected levels,
/// or a combinatorial census disagrees with the closed-form count.
class SpectrumError : public Error {
 public:
  using Error::Error;
};

/// A node failed gradient, Hessian or signature certification.
class CertificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace nodal
