#pragma once

// Newton refinement of critical points of a bivariate polynomial.

#include <string>

#include "nodal/polynomial.hpp"

namespace nodal {

enum class Morse { Min, Saddle, Max };

std::string to_string(Morse morse);

struct CriticalPoint {
  Point2 location;
  double value = 0.0;
  Morse morse = Morse::Saddle;
  double grad_norm = 0.0;
  double hessian_det = 0.0;
  int iterations = 0;
};

struct PolishOptions {
  int max_iterations = 50;
  /// Converged when |∇p| < grad_tol · (1 + coefficient scale).
  double grad_tol = 1e-11;
  /// Accepted at the rounding floor when |∇p| < accept_tol · (1 + coefficient scale).
  double accept_tol = 1e-8;
  /// Degenerate when |det H| ≤ degenerate_tol · (1 + coefficient scale)².
  double degenerate_tol = 1e-8;
};

/// Damped Newton on ∇p: the step is halved while |∇p| does not decrease.
/// Throws ConvergenceError (carrying the last iterate) or DegenerateError.
CriticalPoint polish_critical(const BivarPoly& p, Point2 guess, const PolishOptions& opts = {});

/// Morse type from Hessian eigenvalue signs.
Morse classify(const Hessian2& h);

}  // namespace nodal
