#pragma once

// Line systems (C) and (D), their parity subsystems and the combinatorics
// (vertices, triangular faces) of the resulting arrangements.

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "nodal/errors.hpp"
#include "nodal/trig.hpp"
#include "nodal/types.hpp"

namespace nodal {

enum class LineSystem { C, D };

/// Which construction a line came from. `Bar` lines are the L̄_{k,m} of the
/// extremum-locating sets; in that case `nu` holds k and `d` holds 6m.
enum class LineFamily { C, D, Bar, Custom };

struct LineLabel {
  LineFamily family = LineFamily::Custom;
  int nu = 0;
  int d = 0;
  friend bool operator==(const LineLabel&, const LineLabel&) = default;
};

/// ℓ(x, y) = a·x + b·y + c.
struct AffineCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// One affine factor exactly as it appears in the arrangement products:
/// y − t·x − Γ, x − c or y − c. No rescaling is ever applied to the stored form.
class LineForm {
 public:
  enum class Kind { NonVertical, VerticalX, HorizontalY };

  static LineForm non_vertical(double tangent, double gamma, LineLabel label = {});
  static LineForm vertical(double c, LineLabel label = {});
  static LineForm horizontal(double c, LineLabel label = {});
  /// Builds the factor proportional to a·x + b·y + c, in the unscaled kinds above.
  static LineForm from_affine(double a, double b, double c, LineLabel label = {});

  Kind kind() const { return kind_; }
  /// Slope t for NonVertical lines, 0 otherwise.
  double tangent() const { return tangent_; }
  /// Γ for NonVertical lines, the constant c for the axis-parallel kinds.
  double offset() const { return offset_; }
  const LineLabel& label() const { return label_; }

  double operator()(double x, double y) const;
  double operator()(const Point2& p) const { return (*this)(p.x, p.y); }

  AffineCoefficients affine() const;
  /// Unit normal form with a canonical sign (first nonzero of (a, b) positive).
  AffineCoefficients normalized() const;

 private:
  LineForm(Kind kind, double tangent, double offset, LineLabel label)
      : kind_(kind), tangent_(tangent), offset_(offset), label_(label) {}

  Kind kind_;
  double tangent_;
  double offset_;
  LineLabel label_;
};

bool same_line(const LineForm& a, const LineForm& b, double tol = 1e-10);

enum class ArrangementKind { C, D, SigmaC, SigmaD, MMinus1, M8, Custom };

std::string to_string(ArrangementKind kind);
std::string to_string(LineSystem system);

class Arrangement {
 public:
  /// Throws DegenerateError if two lines coincide within `tol`.
  Arrangement(ArrangementKind kind, int d, std::vector<LineForm> lines, double tol = 1e-10);

  ArrangementKind kind() const { return kind_; }
  int d() const { return d_; }
  int m() const { return d_ / 2; }
  const std::vector<LineForm>& lines() const { return lines_; }
  std::size_t size() const { return lines_.size(); }
  const LineForm& operator[](std::size_t i) const { return lines_[i]; }

 private:
  ArrangementKind kind_;
  int d_;
  std::vector<LineForm> lines_;
};

struct Vertex {
  Point2 point;
  int incident = 0;
  std::vector<int> lines;  // indices into the arrangement, ascending
};

struct VertexReport {
  std::vector<Vertex> points;
  bool simple = true;
};

struct TriangularFace {
  std::array<int, 3> lines{};
  std::array<Point2, 3> corners{};
  Point2 barycenter;
};

struct TriangleReport {
  int count = 0;
  std::vector<TriangularFace> triangles;
};

// --- Γ terms -----------------------------------------------------------------

namespace detail {

/// Checks (X, ν, d) against the index ranges of the line systems.
void check_line_index(LineSystem system, int nu, int d);

template <class Real>
Real gamma_term_in(LineSystem system, int nu, int d) {
  using Trig = RationalTrig<Real>;
  check_line_index(system, nu, d);
  const int m = d / 2;
  // s_k = sin(kπ/d)
  auto s = [d](int k) { return Trig::sin_pi(k, d); };
  Real sum = 0.0;
  if (system == LineSystem::D) {
    int alpha = 0;
    double sign = -1.0;
    if (nu < m) {
      alpha = (nu <= m / 2) ? nu : m - nu;
    } else {
      alpha = (nu <= m + m / 2) ? nu - m : d - nu;
      sign = 1.0;
    }
    for (int k = 1; k <= alpha; ++k) sum += s(m + 1 - 2 * k);
    return Real(sign) * sum;
  }
  if (nu == m - 1) return Real(0.0);
  if (nu <= m - 2) {
    const int alpha = (nu <= m - 3) ? nu : 1;
    for (int k = 1; k <= alpha; ++k) sum += s(m - 2 * k);
    return -sum;
  }
  const int alpha = (nu <= m + (m - 1) / 2) ? nu - m : 2 * m - 1 - nu;
  for (int k = 0; k <= alpha; ++k) sum += s(m - 2 * k);
  return sum;
}

template <class Real>
struct LineCoefficientsIn {
  Real a, b, c;
};

/// Recomputes the (unscaled) coefficients of a labeled line in precision Real.
/// Custom-labeled lines fall back to their stored double coefficients.
template <class Real>
LineCoefficientsIn<Real> line_coefficients_in(const LineForm& line) {
  using Trig = RationalTrig<Real>;
  const LineLabel& lab = line.label();
  if (line.kind() == LineForm::Kind::NonVertical &&
      (lab.family == LineFamily::C || lab.family == LineFamily::D)) {
    LineSystem sys = lab.family == LineFamily::C ? LineSystem::C : LineSystem::D;
    Real t = Trig::tan_pi(lab.nu, lab.d);
    return {-t, Real(1.0), -gamma_term_in<Real>(sys, lab.nu, lab.d)};
  }
  if (line.kind() == LineForm::Kind::NonVertical && lab.family == LineFamily::Bar) {
    // y − (cos 2kπ/6m − x)·tan kπ/6m − sin 2kπ/6m
    Real t = Trig::tan_pi(lab.nu, lab.d);
    Real cs = Trig::cos_pi(2L * lab.nu, lab.d);
    Real sn = Trig::sin_pi(2L * lab.nu, lab.d);
    return {t, Real(1.0), -(cs * t) - sn};
  }
  AffineCoefficients ac = line.affine();
  return {Real(ac.a), Real(ac.b), Real(ac.c)};
}

}  // namespace detail

/// Γ^X_{α(ν)} for the system X with d = 2m orientations.
double gamma_term(LineSystem system, int nu, int d);

/// All lines of the system: x = 0, y = 0 and L^X_{ν,d} for every admissible ν.
/// The axes carry ν = m (x = 0) and ν = 0 (y = 0) so that parity filtering
/// reproduces the axis prefactors of the J polynomials.
Arrangement build_system(LineSystem system, int d);

enum class Parity { Odd, Even };

Arrangement subsystem(const Arrangement& arr, Parity parity);

/// Σ_D = (D)_odd and Σ_C = (C)_even for degree m.
Arrangement sigma_d(int m);
Arrangement sigma_c(int m);

VertexReport vertices(const Arrangement& arr, double tol = 1e-9);

/// Bounded triangular faces, by triple enumeration. Throws DegenerateError on
/// a non-simple arrangement.
TriangleReport triangular_faces(const Arrangement& arr, double tol = 1e-9);

/// L̄_{k,m}(x,y) = y − (cos(2kπ/6m) − x)·tan(kπ/6m) − sin(2kπ/6m); the index
/// is taken mod 6m and k ≡ 3m is the vertical line x = −1.
LineForm lbar_line(int k, int m);

/// Image of the arrangement under rotation by `angle` about `center`.
Arrangement rotated(const Arrangement& arr, Point2 center, double angle);

/// Set equality of lines up to `tol` in normalized form.
bool same_line_set(const Arrangement& a, const Arrangement& b, double tol = 1e-9);

/// { system, d, lines: [ { kind, t, gamma, nu } ] }
std::string arrangement_json(const Arrangement& arr);
/// x,y,count rows with 17 significant digits.
void write_vertex_csv(std::ostream& os, const VertexReport& report);
void write_triangle_csv(std::ostream& os, const TriangleReport& report);

}  // namespace nodal
