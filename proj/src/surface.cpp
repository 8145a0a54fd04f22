#include "nodal/surface.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nodal/critical.hpp"
#include "nodal/errors.hpp"
#include "nodal/io.hpp"

namespace nodal {

namespace {

constexpr double kValueSumTol = 1e-5;
constexpr double kCertifyTol = 1e-8;

int binomial2(int m) { return m * (m - 1) / 2; }

void require_compatible(SurfaceFamily family, int m) {
  if (m < 3) throw DomainError("surface degree must be at least 3, got " + std::to_string(m));
  if (is_c_family(family) && m % 3 != 0)
    throw DomainError(to_string(family) + " needs m = 3q, got m = " + std::to_string(m));
}

UnivarPoly chebyshev_term(int m, double lambda) { return (chebyshev_T(m) + 1.0) * (lambda / 2.0); }

/// g = (s/4)(J(z,0) − 1 + 2s), s = (−1)^{m+1}.
UnivarPoly mirror_z_term(const BivarPoly& j, int m) {
  const double s = (m % 2 == 1) ? 1.0 : -1.0;
  return (j.restrict_y0() + (-1.0 + 2.0 * s)) * (s / 4.0);
}

double sigma_d_lambda(const BivarPoly& jd, int m) {
  const FactoredPolynomial exact = factored_sigma(sigma_d(m));
  const CriticalSpectrum s = critical_spectrum(jd, m, SpectrumFrame::SigmaD, {1e-5, &exact});
  // At m = 3 the only bounded face carries a maximum; its value is 8λ.
  return s.minima > 0 ? -s.min_level : s.max_level / 8.0;
}

Box2 folding_window(int m) {
  const Box2 w = critical_window(m, SpectrumFrame::SigmaD);
  const Point2 lo = sigma_d_to_folding(m, {w.xmin, w.ymin}), hi = sigma_d_to_folding(m, {w.xmax, w.ymax});
  return {lo.x, hi.x, lo.y, hi.y};
}

std::vector<CriticalPoint> xy_critical_points(const SurfaceSpec& s) {
  switch (s.family) {
    case SurfaceFamily::P_C:
    case SurfaceFamily::Q_C: {
      const FactoredPolynomial exact = factored_JC(s.m);
      return critical_spectrum(s.xy_part, s.m, SpectrumFrame::JC, {1e-5, &exact}).points;
    }
    case SurfaceFamily::Qbar_C: {
      const FactoredPolynomial exact = factored_Jbar(s.m);
      return critical_spectrum(s.xy_part, s.m, SpectrumFrame::Jbar, {1e-5, &exact}).points;
    }
    case SurfaceFamily::P_SigmaD: {
      const FactoredPolynomial exact = factored_sigma(sigma_d(s.m));
      return critical_spectrum(s.xy_part, s.m, SpectrumFrame::SigmaD, {1e-5, &exact}).points;
    }
    case SurfaceFamily::Chmutov:
      return folding_critical_points(s.xy_part, s.m);
  }
  return {};
}

double newton_root(const UnivarPoly& d, const UnivarPoly& dd, double lo, double hi) {
  double flo = d(lo);
  for (int k = 0; k < 200 && hi - lo > 4e-16 * (1.0 + std::abs(lo)); ++k) {
    const double mid = 0.5 * (lo + hi), fm = d(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double z = 0.5 * (lo + hi);
  for (int k = 0; k < 3; ++k) {
    const double slope = dd(z);
    if (slope == 0.0) break;
    const double next = z - d(z) / slope;
    if (!(std::abs(next - z) < hi - lo + 1e-12)) break;
    z = next;
  }
  return z;
}

}  // namespace

std::string to_string(SurfaceFamily family) {
  switch (family) {
    case SurfaceFamily::P_SigmaD: return "P_SigmaD";
    case SurfaceFamily::Chmutov: return "Chmutov";
    case SurfaceFamily::P_C: return "P_C";
    case SurfaceFamily::Q_C: return "Q_C";
    case SurfaceFamily::Qbar_C: return "Qbar_C";
  }
  return "P_C";
}

SurfaceFamily parse_family(const std::string& name) {
  for (SurfaceFamily f : {SurfaceFamily::P_SigmaD, SurfaceFamily::Chmutov, SurfaceFamily::P_C, SurfaceFamily::Q_C,
                          SurfaceFamily::Qbar_C})
    if (name == to_string(f)) return f;
  throw DomainError("unknown surface family '" + name + "'");
}

bool is_c_family(SurfaceFamily family) {
  return family == SurfaceFamily::P_C || family == SurfaceFamily::Q_C || family == SurfaceFamily::Qbar_C;
}

SurfaceSpec build_surface(SurfaceFamily family, int m, Precision precision) {
  require_compatible(family, m);
  SurfaceSpec s;
  s.family = family;
  s.m = m;
  switch (family) {
    case SurfaceFamily::P_C:
      s.xy_part = normalized_JC(m, precision);
      s.z_part = chebyshev_term(m, 1.0);
      break;
    case SurfaceFamily::Q_C:
      s.xy_part = normalized_JC(m, precision);
      s.z_part = mirror_z_term(s.xy_part, m);
      break;
    case SurfaceFamily::Qbar_C:
      s.xy_part = build_Jbar(m, precision);
      s.z_part = mirror_z_term(s.xy_part, m);
      break;
    case SurfaceFamily::P_SigmaD:
      s.xy_part = expand_sigma_poly(sigma_d(m), precision);
      s.lambda = sigma_d_lambda(s.xy_part, m);
      s.z_part = chebyshev_term(m, s.lambda);
      break;
    case SurfaceFamily::Chmutov:
      s.xy_part = folding_F(m, precision);
      s.z_part = chebyshev_term(m, 1.0);
      break;
  }
  return s;
}

std::vector<Term3> assembled_terms(const SurfaceSpec& s) {
  std::vector<Term3> out;
  double constant = 0.0;
  for (const Term& t : s.xy_part.terms()) {
    if (t.i == 0 && t.j == 0) constant += t.c;
    else out.push_back({t.i, t.j, 0, t.c});
  }
  for (int k = 0; k <= s.z_part.degree(); ++k) {
    if (k == 0) constant += s.z_part.coeff(0);
    else if (s.z_part.coeff(k) != 0.0) out.push_back({0, 0, k, s.z_part.coeff(k)});
  }
  if (constant != 0.0) out.insert(out.begin(), {0, 0, 0, constant});
  return out;
}

double evaluate_terms(const std::vector<Term3>& terms, Point3 p) {
  double acc = 0.0;
  for (const Term3& t : terms) acc += t.c * std::pow(p.x, t.i) * std::pow(p.y, t.j) * std::pow(p.z, t.k);
  return acc;
}

std::vector<ZCritical> z_critical_points(const UnivarPoly& g) {
  const UnivarPoly d = g.derivative(), dd = d.derivative();
  const int n = d.degree();
  if (n < 1) return {};
  // Fujiwara bound on the roots of g′.
  const double lead = std::abs(d.coeff(n));
  double bound = 0.0;
  for (int k = 1; k <= n; ++k) {
    double r = std::abs(d.coeff(n - k)) / lead;
    if (k == n) r /= 2.0;
    bound = std::max(bound, std::pow(r, 1.0 / k));
  }
  bound = 2.0 * bound * (1.0 + 1e-12) + 1e-12;

  const int cells = 4000 * n;
  std::vector<double> roots;
  double a = -bound, fa = d(a);
  for (int i = 1; i <= cells; ++i) {
    const double b = -bound + 2.0 * bound * i / cells, fb = d(b);
    if (fa == 0.0) {
      roots.push_back(a);
    } else if ((fa < 0) != (fb < 0) && fb != 0.0) {
      roots.push_back(newton_root(d, dd, a, b));
    }
    a = b;
    fa = fb;
  }
  if (fa == 0.0) roots.push_back(a);

  std::vector<ZCritical> out;
  for (double z : roots) {
    if (!out.empty() && std::abs(out.back().z - z) < 1e-12 * (1.0 + bound)) continue;
    const double curv = dd(z);
    out.push_back({z, g(z), curv > 0 ? Morse::Min : (curv < 0 ? Morse::Max : Morse::Saddle)});
  }
  return out;
}

std::string to_string(NodeClass c) {
  switch (c) {
    case NodeClass::Vertex: return "vertex";
    case NodeClass::Triangle: return "triangle";
    case NodeClass::Other: return "other";
  }
  return "other";
}

NodeEnumeration enumerate_nodes(const SurfaceSpec& s) { return enumerate_nodes(s, xy_critical_points(s)); }

NodeEnumeration enumerate_nodes(const SurfaceSpec& s, const std::vector<CriticalPoint>& xy) {
  const std::vector<ZCritical> zc = z_critical_points(s.z_part);
  const double level_scale = std::max(1.0, s.lambda);
  const double scale = 1.0 + std::max(s.xy_part.coefficient_scale(), s.z_part.coefficient_scale());
  const UnivarPoly dz = s.z_part.derivative(), ddz = dz.derivative();

  NodeEnumeration out;
  for (const CriticalPoint& c : xy)
    for (const ZCritical& z : zc) {
      if (std::abs(c.value + z.value) > kValueSumTol * level_scale) continue;
      Node node;
      node.location = {c.location.x, c.location.y, z.z};
      node.cls = c.morse == Morse::Saddle ? NodeClass::Vertex : (c.morse == Morse::Min ? NodeClass::Triangle : NodeClass::Other);
      const Jet2 jet = s.xy_part.jet(c.location.x, c.location.y);
      const double gz = dz(z.z), hz = ddz(z.z);
      node.grad_norm = std::sqrt(jet.gradient.x * jet.gradient.x + jet.gradient.y * jet.gradient.y + gz * gz);
      const double hdet = jet.hessian.det();
      node.hessian3_det = hdet * hz;
      const int xy_plus = hdet < 0 ? 1 : (jet.hessian.xx + jet.hessian.yy > 0 ? 2 : 0);
      node.sig_plus = xy_plus + (hz > 0 ? 1 : 0);
      node.sig_minus = 3 - node.sig_plus;

      const std::string where = "(" + format_real(node.location.x) + ", " + format_real(node.location.y) + ", " +
                                format_real(node.location.z) + ")";
      if (!(node.grad_norm < kCertifyTol * scale))
        throw CertificationError("gradient " + format_real(node.grad_norm) + " too large at node " + where);
      if (!(std::abs(hdet) > kCertifyTol * scale * scale) || !(std::abs(hz) > kCertifyTol * scale))
        throw CertificationError("degenerate Hessian at node " + where);
      if (node.sig_plus == 0 || node.sig_minus == 0)
        throw CertificationError("solitary (definite) point at node " + where);
      out.nodes.push_back(node);
    }

  std::sort(out.nodes.begin(), out.nodes.end(), [](const Node& a, const Node& b) {
    if (a.location.x != b.location.x) return a.location.x < b.location.x;
    if (a.location.y != b.location.y) return a.location.y < b.location.y;
    return a.location.z < b.location.z;
  });
  NodeCountReport& r = out.report;
  r.m = s.m;
  r.family = s.family;
  r.enumerated = static_cast<int>(out.nodes.size());
  r.formula = s.m >= 3 && (!is_c_family(s.family) || s.m % 3 == 0) ? node_count_formula(s.family, s.m) : 0;
  r.per_class = {{"vertex", 0}, {"triangle", 0}};
  for (const Node& n : out.nodes) ++r.per_class[to_string(n.cls)];
  r.certified = true;
  return out;
}

int node_count_formula(SurfaceFamily family, int m) {
  require_compatible(family, m);
  int minima;
  if (is_c_family(family)) minima = 1 + m * (m - 3) / 3;
  else minima = (m % 3 == 0) ? (m * m - 3 * m) / 3 : (m * m - 3 * m + 2) / 3;
  return binomial2(m) * (m / 2) + minima * ((m - 1) / 2);
}

std::vector<LevelCount> level_counts(const std::vector<CriticalPoint>& pts, double tol) {
  std::vector<double> values;
  for (const CriticalPoint& c : pts) values.push_back(c.value);
  std::sort(values.begin(), values.end());
  std::vector<LevelCount> out;
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (out.empty() || values[i] - values[i - 1] > tol * (1.0 + std::abs(values[i]))) {
      if (!out.empty()) out.back().level = sum / out.back().count;
      out.push_back({values[i], 0});
      sum = 0.0;
    }
    ++out.back().count;
    sum += values[i];
  }
  if (!out.empty()) out.back().level = sum / out.back().count;
  return out;
}

int sum_of_squares(const std::vector<LevelCount>& levels) {
  int total = 0;
  for (const LevelCount& l : levels) total += l.count * l.count;
  return total;
}

std::vector<CriticalPoint> folding_critical_points(const BivarPoly& f, int m) {
  const FactoredPolynomial exact = factored_F(m);
  const int want = (m - 1) * (m - 1);
  std::vector<CriticalPoint> pts;
  for (int grid : {256, 1024}) {
    pts = brute_force_critical(f, folding_window(m), grid);
    if (static_cast<int>(pts.size()) == want) break;
  }
  if (static_cast<int>(pts.size()) != want)
    throw SpectrumError("folding polynomial spectrum at m = " + std::to_string(m) + ": found " +
                        std::to_string(pts.size()) + " critical points, expected " + std::to_string(want));
  for (CriticalPoint& c : pts) c.value = exact(c.location);
  return pts;
}

HypersurfaceCount hypersurface_node_count(int m) {
  if (m < 3 || m % 3 != 0) throw DomainError("hypersurface count needs m = 3q, got " + std::to_string(m));
  HypersurfaceCount h;
  const FactoredPolynomial exact = factored_JC(m);
  h.levels_J = level_counts(critical_spectrum(normalized_JC(m), m, SpectrumFrame::JC, {1e-5, &exact}).points);
  h.levels_F = level_counts(folding_critical_points(folding_F(m), m));
  h.count_J = sum_of_squares(h.levels_J);
  h.count_Chmutov = sum_of_squares(h.levels_F);
  h.excess = h.count_J - h.count_Chmutov;
  return h;
}

std::string node_csv(const std::vector<Node>& nodes) {
  std::ostringstream os;
  os << "x,y,z,class,grad_norm,hessian3_det,sig_plus,sig_minus\n";
  for (const Node& n : nodes)
    os << format_real(n.location.x) << ',' << format_real(n.location.y) << ',' << format_real(n.location.z) << ','
       << to_string(n.cls) << ',' << format_real(n.grad_norm) << ',' << format_real(n.hessian3_det) << ','
       << n.sig_plus << ',' << n.sig_minus << '\n';
  return os.str();
}

std::string report_json(const NodeCountReport& r) {
  std::ostringstream os;
  os << "{\"family\":\"" << to_string(r.family) << "\",\"m\":" << r.m << ",\"enumerated\":" << r.enumerated
     << ",\"formula\":" << r.formula << ",\"per_class\":{";
  bool first = true;
  for (const auto& [k, v] : r.per_class) {
    os << (first ? "" : ",") << json_escape(k) << ':' << v;
    first = false;
  }
  os << "},\"certified\":" << (r.certified ? "true" : "false") << '}';
  return os.str();
}

}  // namespace nodal
