#pragma once

// Dense real polynomials in one variable and in (x, y).

#include <string>
#include <vector>

#include "nodal/types.hpp"

namespace nodal {

class UnivarPoly {
 public:
  UnivarPoly() = default;
  /// Coefficients by ascending power; trailing coefficients below 1e-12 of the
  /// largest magnitude are dropped.
  explicit UnivarPoly(std::vector<double> coeffs);

  /// −1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double coeff(int k) const { return k >= 0 && k <= degree() ? coeffs_[k] : 0.0; }

  double operator()(double z) const;
  UnivarPoly derivative() const;
  double coefficient_scale() const;
  /// Σ |c_k| |z|^k, the magnitude that bounds rounding error of evaluation.
  double abs_eval(double z) const;

  UnivarPoly operator*(double s) const;
  UnivarPoly operator+(double s) const;
  UnivarPoly operator+(const UnivarPoly& other) const;
  UnivarPoly operator-(const UnivarPoly& other) const;

 private:
  std::vector<double> coeffs_;
};

struct Gradient2 {
  double x = 0.0;
  double y = 0.0;
  double norm() const;
};

struct Hessian2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;
  double det() const { return xx * yy - xy * xy; }
};

struct Jet2 {
  double value = 0.0;
  Gradient2 gradient;
  Hessian2 hessian;
};

struct Term {
  int i = 0;  // power of x
  int j = 0;  // power of y
  double c = 0.0;
};

/// Σ c_ij x^i y^j with i + j ≤ capacity, stored as a dense triangle.
class BivarPoly {
 public:
  BivarPoly() : BivarPoly(0) {}
  explicit BivarPoly(int capacity);
  static BivarPoly constant(double c);
  static BivarPoly from_terms(const std::vector<Term>& terms);

  int capacity() const { return capacity_; }
  /// Highest total degree carrying a coefficient above 1e-9 of the largest one.
  int degree() const;
  double coeff(int i, int j) const;
  double& at(int i, int j) { return coeffs_[index(i, j)]; }
  double coefficient_scale() const;

  double operator()(double x, double y) const;
  double operator()(const Point2& p) const { return (*this)(p.x, p.y); }
  Gradient2 gradient(double x, double y) const;
  Hessian2 hessian(double x, double y) const;
  /// Value, gradient and Hessian from exact coefficient differentiation.
  Jet2 jet(double x, double y) const;
  /// Σ |c_ij| |x|^i |y|^j.
  double abs_eval(double x, double y) const;

  /// p(x, 0)
  UnivarPoly restrict_y0() const;
  /// p(x, −y)
  BivarPoly mirrored_y() const;
  /// p(A·x + B·y + C, D·x + E·y + F)
  BivarPoly substitute_affine(double A, double B, double C, double D, double E, double F) const;

  BivarPoly operator+(const BivarPoly& o) const;
  BivarPoly operator-(const BivarPoly& o) const;
  BivarPoly operator*(const BivarPoly& o) const;
  BivarPoly operator*(double s) const;
  BivarPoly operator+(double s) const;
  BivarPoly operator-() const { return (*this) * -1.0; }

  /// Nonzero terms; with prune_rel > 0 drops |c| ≤ prune_rel · coefficient_scale().
  std::vector<Term> terms(double prune_rel = 0.0) const;

 private:
  int index(int i, int j) const { return i * (capacity_ + 1) - i * (i - 1) / 2 + j; }
  int capacity_;
  std::vector<double> coeffs_;
};

/// { "degree": m, "vars": ["x","y"], "terms": [ {"i":…, "j":…, "c":…} ] }, pruned at 1e-9 relative.
std::string polynomial_json(const BivarPoly& p, double prune_rel = 1e-9);
std::string polynomial_json(const UnivarPoly& p);
BivarPoly bivar_from_json(const std::string& text);
UnivarPoly univar_from_json(const std::string& text);

}  // namespace nodal
