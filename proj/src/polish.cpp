#include "nodal/polish.hpp"

#include <cmath>

#include "nodal/errors.hpp"

namespace nodal {

std::string to_string(Morse morse) {
  switch (morse) {
    case Morse::Min: return "min";
    case Morse::Saddle: return "saddle";
    case Morse::Max: return "max";
  }
  return "saddle";
}

Morse classify(const Hessian2& h) {
  if (h.det() < 0.0) return Morse::Saddle;
  return (h.xx + h.yy) > 0.0 ? Morse::Min : Morse::Max;
}

CriticalPoint polish_critical(const BivarPoly& p, Point2 guess, const PolishOptions& opts) {
  const double scale = 1.0 + p.coefficient_scale();
  const double det_floor = opts.degenerate_tol * scale * scale;
  Point2 x = guess;
  Jet2 jet = p.jet(x.x, x.y);
  double gnorm = jet.gradient.norm();

  auto finish = [&](int iterations) {
    if (std::abs(jet.hessian.det()) <= det_floor)
      throw DegenerateError("degenerate critical point near (" + std::to_string(x.x) + ", " +
                            std::to_string(x.y) + ")");
    CriticalPoint cp;
    cp.location = x;
    cp.value = jet.value;
    cp.morse = classify(jet.hessian);
    cp.grad_norm = gnorm;
    cp.hessian_det = jet.hessian.det();
    cp.iterations = iterations;
    return cp;
  };

  for (int it = 0; it < opts.max_iterations; ++it) {
    if (gnorm < opts.grad_tol * scale) return finish(it);
    const Hessian2& h = jet.hessian;
    const double det = h.det();
    if (det == 0.0 || !std::isfinite(det))
      throw DegenerateError("singular Hessian during Newton iteration");
    const Point2 step{-(h.yy * jet.gradient.x - h.xy * jet.gradient.y) / det,
                      -(-h.xy * jet.gradient.x + h.xx * jet.gradient.y) / det};
    double t = 1.0;
    bool improved = false;
    for (int halving = 0; halving < 30; ++halving, t *= 0.5) {
      Point2 trial{x.x + t * step.x, x.y + t * step.y};
      Jet2 tj = p.jet(trial.x, trial.y);
      const double tn = tj.gradient.norm();
      if (std::isfinite(tn) && tn < gnorm) {
        x = trial;
        jet = tj;
        gnorm = tn;
        improved = true;
        break;
      }
    }
    if (!improved) {
      // Rounding floor: no step reduces |∇p| any further.
      if (gnorm < opts.accept_tol * scale) return finish(it + 1);
      throw ConvergenceError("Newton stalled", x.x, x.y);
    }
  }
  if (gnorm < opts.grad_tol * scale) return finish(opts.max_iterations);
  throw ConvergenceError("Newton did not converge in " + std::to_string(opts.max_iterations) + " iterations",
                         x.x, x.y);
}

}  // namespace nodal
