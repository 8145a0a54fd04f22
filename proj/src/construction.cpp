#include "nodal/construction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "nodal/double_double.hpp"
#include "nodal/errors.hpp"
#include "nodal/polish.hpp"
#include "nodal/trig.hpp"

namespace nodal {

std::string to_string(Precision p) { return p == Precision::Double ? "double" : "compensated"; }

Precision parse_precision(const std::string& name) {
  if (name == "double") return Precision::Double;
  if (name == "compensated") return Precision::Compensated;
  throw DomainError("unknown precision '" + name + "'");
}

namespace {

inline double to_double(double v) { return v; }
inline double to_double(const DoubleDouble& v) { return static_cast<double>(v); }

template <class Real>
using Linear = detail::LineCoefficientsIn<Real>;

/// prefactor · Π factors, every factor a·x + b·y + c.
template <class Real>
struct FactorProduct {
  Real prefactor = 1.0;
  std::vector<Linear<Real>> factors;

  Real evaluate(Real x, Real y) const {
    Real acc = prefactor;
    for (const auto& f : factors) acc *= f.a * x + f.b * y + f.c;
    return acc;
  }

  /// Composes every factor with (x, y) ↦ (A x + B y + C, D x + E y + F).
  FactorProduct substituted(Real A, Real B, Real C, Real D, Real E, Real F) const {
    FactorProduct out;
    out.prefactor = prefactor;
    for (const auto& f : factors)
      out.factors.push_back({f.a * A + f.b * D, f.a * B + f.b * E, f.a * C + f.b * F + f.c});
    return out;
  }
};

/// Dense triangular coefficient block in precision Real.
template <class Real>
struct Dense {
  int capacity;
  std::vector<Real> c;

  explicit Dense(int cap) : capacity(cap), c(static_cast<std::size_t>((cap + 1) * (cap + 2) / 2), Real(0.0)) {}
  int index(int i, int j) const { return i * (capacity + 1) - i * (i - 1) / 2 + j; }
  Real get(int i, int j) const { return (i + j <= capacity) ? c[index(i, j)] : Real(0.0); }

  BivarPoly to_bivar() const {
    BivarPoly p(capacity);
    for (int i = 0; i <= capacity; ++i)
      for (int j = 0; j <= capacity - i; ++j) p.at(i, j) = to_double(c[index(i, j)]);
    return p;
  }
};

template <class Real>
Dense<Real> expand(const FactorProduct<Real>& fp) {
  const int n = static_cast<int>(fp.factors.size());
  Dense<Real> acc(n);
  acc.c[acc.index(0, 0)] = fp.prefactor;
  int deg = 0;
  for (const auto& f : fp.factors) {
    ++deg;
    // Multiply in place, highest total degree first so sources are still unread.
    for (int s = deg; s >= 0; --s)
      for (int i = 0; i <= s; ++i) {
        const int j = s - i;
        Real v = (s <= deg - 1) ? f.c * acc.get(i, j) : Real(0.0);
        if (i > 0 && s - 1 <= deg - 1) v += f.a * acc.get(i - 1, j);
        if (j > 0 && s - 1 <= deg - 1) v += f.b * acc.get(i, j - 1);
        acc.c[acc.index(i, j)] = v;
      }
  }
  return acc;
}

template <class Real>
FactorProduct<Real> sigma_factors(const Arrangement& sigma) {
  const int m = sigma.m();
  FactorProduct<Real> fp;
  if (sigma.kind() == ArrangementKind::SigmaD) {
    fp.prefactor = ((m / 2) % 2 == 0) ? 1.0 : -1.0;
  } else if (sigma.kind() == ArrangementKind::SigmaC) {
    fp.prefactor = (((m + 1) / 2 + 1) % 2 == 0) ? 1.0 : -1.0;
  } else {
    throw DomainError("expand_sigma_poly needs Sigma_C or Sigma_D, got " + to_string(sigma.kind()));
  }
  for (const LineForm& line : sigma.lines()) fp.factors.push_back(detail::line_coefficients_in<Real>(line));
  if (static_cast<int>(fp.factors.size()) != m)
    throw DomainError("arrangement has " + std::to_string(fp.factors.size()) + " lines, expected " +
                      std::to_string(m));
  return fp;
}

template <class Real>
Real scale_a_in(int m) {
  using T = RationalTrig<Real>;
  if (m % 2 == 0)
    return T::sin_pi(m + 2, 4L * m) * T::sin_pi(m - 2, 4L * m) * T::sin_pi(1, m) /
           (T::sin_pi(1, 2L * m) * T::sin_pi(2, m));
  const Real s1 = T::sin_pi(1, m);
  return Real(2.0) * T::cos_pi(1, 2L * m) * s1 * s1 / (Real(3.0) * s1 - T::sin_pi(3, m));
}

template <class Real>
Real barycenter_c_in(int q) {
  using T = RationalTrig<Real>;
  return T::sqrt(Real(3.0)) / Real(4.0) + T::sin_pi(q - 1, 6L * q) / (Real(2.0) * T::sin_pi(1, 6L * q));
}

void require_multiple_of_3(int m) {
  if (m < 3 || m % 3 != 0) throw DomainError("degree m = " + std::to_string(m) + " is not of the form 3q");
}

template <class Real>
NormalizationData normalization_in(int m) {
  require_multiple_of_3(m);
  NormalizationData nd;
  nd.m = m;
  nd.q = m / 3;
  const Real c = barycenter_c_in<Real>(nd.q);
  const Real a = scale_a_in<Real>(m);
  nd.c = to_double(c);
  nd.a = to_double(a);
  nd.theta = std::numbers::pi / (6.0 * m);
  Real am = 1.0;
  for (int k = 0; k < m; ++k) am *= a;
  nd.b = to_double(Real(m % 2 == 0 ? 2.0 : 2.0 * m) / am);

  const Arrangement sigma = sigma_c(m);
  const FactorProduct<Real> fp = sigma_factors<Real>(sigma);
  nd.lambda_barycenter = -to_double(fp.evaluate(c, Real(0.25)));

  // Operational λ: the deepest of the minima polished from every triangle barycenter.
  const BivarPoly j = expand(fp).to_bivar();
  PolishOptions opts;
  double deepest = 0.0;
  std::vector<double> values;
  for (const TriangularFace& face : triangular_faces(sigma).triangles) {
    CriticalPoint cp = polish_critical(j, face.barycenter, opts);
    const double v = to_double(fp.evaluate(Real(cp.location.x), Real(cp.location.y)));
    values.push_back(v);
    deepest = std::min(deepest, v);
  }
  nd.lambda = -deepest;
  for (double v : values) nd.lambda_spread = std::max(nd.lambda_spread, std::abs(v + nd.lambda) / nd.lambda);
  return nd;
}

template <class Real>
FactorProduct<Real> jc_factors(int m, const NormalizationData& nd) {
  using T = RationalTrig<Real>;
  const Real a = scale_a_in<Real>(m);
  const Real c = barycenter_c_in<Real>(m / 3);
  const Real co = T::cos_pi(1, 6L * m);
  const Real si = T::sin_pi(1, 6L * m);
  FactorProduct<Real> fp = sigma_factors<Real>(sigma_c(m))
                               .substituted(a * co, a * si, c, -(a * si), a * co, Real(0.25));
  fp.prefactor /= Real(nd.lambda);
  return fp;
}

template <class Real>
FactorProduct<Real> jbar_factors(int m) {
  using T = RationalTrig<Real>;
  const int q = m / 3;
  FactorProduct<Real> fp;
  fp.prefactor = (m % 2 == 1) ? T::sqrt(Real(3.0)) : Real(1.0);
  if (((q + 1) / 2 + 1) % 2 != 0) fp.prefactor = -fp.prefactor;
  for (int nu = 0; nu < m; ++nu) fp.factors.push_back(detail::line_coefficients_in<Real>(lbar_line(6 * nu + 1, m)));
  return fp;
}

template <class Real>
FactorProduct<Real> folding_factors(int m) {
  const Real a = scale_a_in<Real>(m);
  Real am = 1.0;
  for (int k = 0; k < m; ++k) am *= a;
  FactorProduct<Real> fp = sigma_factors<Real>(sigma_d(m)).substituted(a, Real(0.0), a, Real(0.0), a, Real(0.0));
  fp.prefactor *= Real(m % 2 == 0 ? 2.0 : 2.0 * m) / am;
  return fp;
}

template <class Real>
BivarPoly folding_identity_in(int m, const NormalizationData& nd) {
  Dense<Real> j = expand(jc_factors<Real>(m, nd));
  const Dense<Real> jb = expand(jbar_factors<Real>(m));
  for (std::size_t k = 0; k < j.c.size(); ++k) j.c[k] = -(j.c[k] + jb.c[k]);
  j.c[0] += Real(6.0);
  return j.to_bivar();
}

template <class Real>
FactoredPolynomial to_factored(const FactorProduct<Real>& fp) {
  std::vector<FactoredPolynomial::Factor> fs;
  for (const auto& f : fp.factors) fs.push_back({f.a, f.b, f.c});
  return FactoredPolynomial(fp.prefactor, std::move(fs));
}

}  // namespace

DoubleDouble FactoredPolynomial::evaluate(DoubleDouble x, DoubleDouble y) const {
  DoubleDouble acc = prefactor_;
  for (const Factor& f : factors_) acc *= f.a * x + f.b * y + f.c;
  return acc + offset_;
}

FactoredPolynomial factored_sigma(const Arrangement& sigma) { return to_factored(sigma_factors<DoubleDouble>(sigma)); }

FactoredPolynomial factored_JC(int m) {
  const NormalizationData nd = normalization_data(m);
  return to_factored(jc_factors<DoubleDouble>(m, nd));
}

FactoredPolynomial factored_F(int m) {
  if (m < 3) throw DomainError("folding polynomial needs m >= 3");
  return to_factored(folding_factors<DoubleDouble>(m));
}

FactoredPolynomial factored_Jbar(int m) {
  require_multiple_of_3(m);
  return to_factored(jbar_factors<DoubleDouble>(m));
}

BivarPoly expand_sigma_poly(const Arrangement& sigma, Precision precision) {
  if (precision == Precision::Double) return expand(sigma_factors<double>(sigma)).to_bivar();
  return expand(sigma_factors<DoubleDouble>(sigma)).to_bivar();
}

UnivarPoly chebyshev_T(int m) {
  if (m < 0) throw DomainError("Chebyshev degree must be nonnegative");
  std::vector<double> prev{1.0}, cur{0.0, 1.0};
  if (m == 0) return UnivarPoly(prev);
  for (int k = 1; k < m; ++k) {
    // T_{k+1} = 2z T_k − T_{k−1}
    std::vector<double> next(cur.size() + 1, 0.0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2.0 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return UnivarPoly(cur);
}

double scale_a(int m) {
  if (m < 3) throw DomainError("scale a_m needs m >= 3");
  return to_double(scale_a_in<DoubleDouble>(m));
}

double scale_b(int m) { return (m % 2 == 0 ? 2.0 : 2.0 * m) / std::pow(scale_a(m), m); }

double barycenter_c(int q) {
  if (q < 1) throw DomainError("barycenter needs q >= 1");
  return to_double(barycenter_c_in<DoubleDouble>(q));
}

NormalizationData normalization_data(int m, Precision precision) {
  if (precision == Precision::Double) return normalization_in<double>(m);
  return normalization_in<DoubleDouble>(m);
}

Point2 jc_to_sigma(const NormalizationData& nd, Point2 xy) {
  const double co = std::cos(nd.theta), si = std::sin(nd.theta);
  return {nd.a * (co * xy.x + si * xy.y) + nd.c, nd.a * (-si * xy.x + co * xy.y) + 0.25};
}

Point2 sigma_to_jc(const NormalizationData& nd, Point2 uv) {
  const double co = std::cos(nd.theta), si = std::sin(nd.theta);
  const double du = (uv.x - nd.c) / nd.a, dv = (uv.y - 0.25) / nd.a;
  return {co * du - si * dv, si * du + co * dv};
}

BivarPoly normalized_JC(int m, Precision precision) {
  const NormalizationData nd = normalization_data(m, precision);
  if (precision == Precision::Double) return expand(jc_factors<double>(m, nd)).to_bivar();
  return expand(jc_factors<DoubleDouble>(m, nd)).to_bivar();
}

BivarPoly build_Jbar(int m, Precision precision) {
  require_multiple_of_3(m);
  if (precision == Precision::Double) return expand(jbar_factors<double>(m)).to_bivar();
  return expand(jbar_factors<DoubleDouble>(m)).to_bivar();
}

BivarPoly folding_F(int m, FoldingRoute route, Precision precision) {
  if (route == FoldingRoute::Identity) {
    require_multiple_of_3(m);
    const NormalizationData nd = normalization_data(m, precision);
    if (precision == Precision::Double) return folding_identity_in<double>(m, nd);
    return folding_identity_in<DoubleDouble>(m, nd);
  }
  if (m < 3) throw DomainError("folding polynomial needs m >= 3");
  if (precision == Precision::Double) return expand(folding_factors<double>(m)).to_bivar();
  return expand(folding_factors<DoubleDouble>(m)).to_bivar();
}

BivarPoly folding_F(int m, Precision precision) {
  return folding_F(m, m % 3 == 0 ? FoldingRoute::Identity : FoldingRoute::Substitution, precision);
}

Point2 folding_to_sigma_d(int m, Point2 xy) {
  const double a = scale_a(m);
  return {a * xy.x + a, a * xy.y};
}

Point2 sigma_d_to_folding(int m, Point2 uv) {
  const double a = scale_a(m);
  return {uv.x / a - 1.0, uv.y / a};
}

}  // namespace nodal
