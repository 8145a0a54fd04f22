#pragma once

// The polynomials attached to the simple arrangements: J_{mΣ_D}, J_{mΣ_C},
// Chebyshev T_m, the normalized J_m^C, its mirror J̄_m^C and the folding
// polynomial F.

#include <string>

#include "nodal/arrangement.hpp"
#include "nodal/double_double.hpp"
#include "nodal/polynomial.hpp"

namespace nodal {

/// Working precision of the expansion kernels. Results are always stored in
/// double; Compensated runs the products, substitutions and trigonometric
/// constants in double-double arithmetic.
enum class Precision { Double, Compensated };

std::string to_string(Precision p);
Precision parse_precision(const std::string& name);

/// Sign prefactor times the product of every line of Σ (axis factors included).
BivarPoly expand_sigma_poly(const Arrangement& sigma, Precision precision = Precision::Compensated);

UnivarPoly chebyshev_T(int m);

/// Scale a_m relating Σ_D to the folding polynomial (separate even/odd formulas).
double scale_a(int m);
/// b_m = 2/a_m^m (m even), 2m/a_m^m (m odd).
double scale_b(int m);
/// Abscissa of the barycenter of the central equilateral triangle of Σ_C, m = 3q.
double barycenter_c(int q);

struct NormalizationData {
  int m = 0;
  int q = 0;
  double c = 0.0;      // barycenter abscissa; the ordinate is 1/4
  double theta = 0.0;  // π/(6m)
  double a = 0.0;
  double b = 0.0;
  /// Magnitude of the minimum of J_{mΣ_C}, measured over all triangle minima.
  double lambda = 0.0;
  /// −J_{mΣ_C}(c, 1/4), the same quantity read at the barycenter.
  double lambda_barycenter = 0.0;
  /// Largest relative deviation of a triangle minimum from −lambda.
  double lambda_spread = 0.0;
};

/// Throws DomainError unless m = 3q, q ≥ 1.
NormalizationData normalization_data(int m, Precision precision = Precision::Compensated);

/// (u, v) = a·R(−Θ)(x, y) + (c, 1/4): J_m^C coordinates to Σ_C coordinates.
Point2 jc_to_sigma(const NormalizationData& nd, Point2 xy);
Point2 sigma_to_jc(const NormalizationData& nd, Point2 uv);

/// J_m^C(x, y) = J_{mΣ_C}(u, v) / λ.
BivarPoly normalized_JC(int m, Precision precision = Precision::Compensated);
/// J̄_m^C from the product of L̄_{6ν+1,m}.
BivarPoly build_Jbar(int m, Precision precision = Precision::Compensated);

enum class FoldingRoute {
  Identity,      // 6 − J_m^C − J̄_m^C, m = 3q only
  Substitution,  // b_m · J_{mΣ_D}(a_m x + a_m, a_m y), any m ≥ 3
};

BivarPoly folding_F(int m, FoldingRoute route, Precision precision = Precision::Compensated);
/// Identity route when 3 | m, substitution route otherwise.
BivarPoly folding_F(int m, Precision precision = Precision::Compensated);

/// A polynomial kept as prefactor · Π (a x + b y + c), evaluated in
/// double-double without expanding.
class FactoredPolynomial {
 public:
  struct Factor {
    DoubleDouble a, b, c;
  };
  FactoredPolynomial() = default;
  FactoredPolynomial(DoubleDouble prefactor, std::vector<Factor> factors, DoubleDouble offset = 0.0)
      : prefactor_(prefactor), factors_(std::move(factors)), offset_(offset) {}

  int degree() const { return static_cast<int>(factors_.size()); }
  DoubleDouble evaluate(DoubleDouble x, DoubleDouble y) const;
  double operator()(double x, double y) const { return static_cast<double>(evaluate(x, y)); }
  double operator()(Point2 p) const { return (*this)(p.x, p.y); }

 private:
  DoubleDouble prefactor_ = 1.0;
  std::vector<Factor> factors_;
  DoubleDouble offset_ = 0.0;
};

FactoredPolynomial factored_sigma(const Arrangement& sigma);
FactoredPolynomial factored_JC(int m);
FactoredPolynomial factored_Jbar(int m);
/// Substitution route of the folding polynomial, any m ≥ 3.
FactoredPolynomial factored_F(int m);

/// Σ_D coordinates of a point of the folding-polynomial plane, and back.
Point2 folding_to_sigma_d(int m, Point2 xy);
Point2 sigma_d_to_folding(int m, Point2 uv);

}  // namespace nodal
