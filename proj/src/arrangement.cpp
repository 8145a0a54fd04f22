#include "nodal/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "nodal/io.hpp"

namespace nodal {

LineForm LineForm::non_vertical(double tangent, double gamma, LineLabel label) {
  return LineForm(Kind::NonVertical, tangent, gamma, label);
}

LineForm LineForm::vertical(double c, LineLabel label) { return LineForm(Kind::VerticalX, 0.0, c, label); }

LineForm LineForm::horizontal(double c, LineLabel label) { return LineForm(Kind::HorizontalY, 0.0, c, label); }

LineForm LineForm::from_affine(double a, double b, double c, LineLabel label) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) throw DegenerateError("line with zero normal");
  if (std::abs(b) <= 1e-14 * scale) return vertical(-c / a, label);
  if (std::abs(a) <= 1e-14 * scale) return horizontal(-c / b, label);
  return non_vertical(-a / b, -c / b, label);
}

double LineForm::operator()(double x, double y) const {
  switch (kind_) {
    case Kind::NonVertical: return y - x * tangent_ - offset_;
    case Kind::VerticalX: return x - offset_;
    case Kind::HorizontalY: return y - offset_;
  }
  return 0.0;
}

AffineCoefficients LineForm::affine() const {
  switch (kind_) {
    case Kind::NonVertical: return {-tangent_, 1.0, -offset_};
    case Kind::VerticalX: return {1.0, 0.0, -offset_};
    case Kind::HorizontalY: return {0.0, 1.0, -offset_};
  }
  return {};
}

AffineCoefficients LineForm::normalized() const {
  AffineCoefficients ac = affine();
  double n = std::hypot(ac.a, ac.b);
  double sign = (ac.a > 0.0 || (ac.a == 0.0 && ac.b > 0.0)) ? 1.0 : -1.0;
  return {sign * ac.a / n, sign * ac.b / n, sign * ac.c / n};
}

bool same_line(const LineForm& a, const LineForm& b, double tol) {
  AffineCoefficients p = a.normalized();
  AffineCoefficients q = b.normalized();
  // Antiparallel unit normals with a ≈ 0 can carry opposite canonical signs.
  auto close = [tol](const AffineCoefficients& u, const AffineCoefficients& v, double s) {
    double scale = 1.0 + std::max(std::abs(u.c), std::abs(v.c));
    return std::abs(u.a - s * v.a) < tol && std::abs(u.b - s * v.b) < tol &&
           std::abs(u.c - s * v.c) < tol * scale;
  };
  return close(p, q, 1.0) || close(p, q, -1.0);
}

std::string to_string(ArrangementKind kind) {
  switch (kind) {
    case ArrangementKind::C: return "C";
    case ArrangementKind::D: return "D";
    case ArrangementKind::SigmaC: return "Sigma_C";
    case ArrangementKind::SigmaD: return "Sigma_D";
    case ArrangementKind::MMinus1: return "M_minus1";
    case ArrangementKind::M8: return "M_8";
    case ArrangementKind::Custom: return "Custom";
  }
  return "Custom";
}

std::string to_string(LineSystem system) { return system == LineSystem::C ? "C" : "D"; }

Arrangement::Arrangement(ArrangementKind kind, int d, std::vector<LineForm> lines, double tol)
    : kind_(kind), d_(d), lines_(std::move(lines)) {
  for (std::size_t i = 0; i < lines_.size(); ++i)
    for (std::size_t j = i + 1; j < lines_.size(); ++j)
      if (same_line(lines_[i], lines_[j], tol))
        throw DegenerateError("arrangement has coincident lines " + std::to_string(i) + " and " +
                              std::to_string(j));
}

namespace detail {

void check_line_index(LineSystem system, int nu, int d) {
  auto fail = [&] {
    throw DomainError("no line L^" + to_string(system) + "_{" + std::to_string(nu) + "," +
                      std::to_string(d) + "}");
  };
  if (d % 2 != 0) fail();
  const int m = d / 2;
  if (system == LineSystem::D) {
    if (m < 3 || nu < 1 || nu >= d || nu == m) fail();
  } else {
    if (m < 3 || m % 3 != 0 || nu < 1 || nu >= d || nu == m) fail();
  }
}

}  // namespace detail

double gamma_term(LineSystem system, int nu, int d) { return detail::gamma_term_in<double>(system, nu, d); }

Arrangement build_system(LineSystem system, int d) {
  const int m = d / 2;
  if (d % 2 != 0 || m < 3 || (system == LineSystem::C && m % 3 != 0))
    throw DomainError("no " + to_string(system) + " system with d = " + std::to_string(d));
  const LineFamily family = system == LineSystem::C ? LineFamily::C : LineFamily::D;
  std::vector<LineForm> lines;
  lines.push_back(LineForm::horizontal(0.0, {family, 0, d}));
  for (int nu = 1; nu < d; ++nu) {
    if (nu == m) {
      lines.push_back(LineForm::vertical(0.0, {family, m, d}));
      continue;
    }
    lines.push_back(LineForm::non_vertical(RationalTrig<double>::tan_pi(nu, d), gamma_term(system, nu, d),
                                           {family, nu, d}));
  }
  return Arrangement(system == LineSystem::C ? ArrangementKind::C : ArrangementKind::D, d, std::move(lines));
}

Arrangement subsystem(const Arrangement& arr, Parity parity) {
  if (arr.kind() != ArrangementKind::C && arr.kind() != ArrangementKind::D)
    throw DomainError("subsystem needs a full (C) or (D) system, got " + to_string(arr.kind()));
  std::vector<LineForm> kept;
  const int want = parity == Parity::Odd ? 1 : 0;
  for (const LineForm& line : arr.lines())
    if (line.label().nu % 2 == want) kept.push_back(line);
  ArrangementKind kind = ArrangementKind::Custom;
  if (arr.kind() == ArrangementKind::D && parity == Parity::Odd) kind = ArrangementKind::SigmaD;
  if (arr.kind() == ArrangementKind::C && parity == Parity::Even) kind = ArrangementKind::SigmaC;
  return Arrangement(kind, arr.d(), std::move(kept));
}

Arrangement sigma_d(int m) { return subsystem(build_system(LineSystem::D, 2 * m), Parity::Odd); }
Arrangement sigma_c(int m) { return subsystem(build_system(LineSystem::C, 2 * m), Parity::Even); }

namespace {

bool intersect(const LineForm& l1, const LineForm& l2, Point2& out) {
  AffineCoefficients p = l1.normalized();
  AffineCoefficients q = l2.normalized();
  double det = p.a * q.b - q.a * p.b;
  if (std::abs(det) < 1e-13) return false;
  out = {(-p.c * q.b + q.c * p.b) / det, (-p.a * q.c + q.a * p.c) / det};
  return true;
}

}  // namespace

VertexReport vertices(const Arrangement& arr, double tol) {
  if (arr.size() < 2) throw DomainError("vertices need at least two lines");
  VertexReport report;
  const auto n = static_cast<int>(arr.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Point2 p;
      if (!intersect(arr[i], arr[j], p)) {
        if (same_line(arr[i], arr[j])) throw DegenerateError("parallel lines with identical offset");
        continue;
      }
      auto hit = std::find_if(report.points.begin(), report.points.end(), [&](const Vertex& v) {
        return distance(v.point, p) < tol * (1.0 + norm(p));
      });
      if (hit == report.points.end()) {
        report.points.push_back({p, 0, {i, j}});
      } else {
        hit->lines.push_back(i);
        hit->lines.push_back(j);
      }
    }
  }
  for (Vertex& v : report.points) {
    std::sort(v.lines.begin(), v.lines.end());
    v.lines.erase(std::unique(v.lines.begin(), v.lines.end()), v.lines.end());
    v.incident = static_cast<int>(v.lines.size());
    if (v.incident != 2) report.simple = false;
  }
  return report;
}

TriangleReport triangular_faces(const Arrangement& arr, double tol) {
  if (!vertices(arr, tol).simple) throw DegenerateError("triangular_faces needs a simple arrangement");
  TriangleReport report;
  const auto n = static_cast<int>(arr.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Point2 a, b, c;
        if (!intersect(arr[i], arr[j], a) || !intersect(arr[j], arr[k], b) || !intersect(arr[i], arr[k], c))
          continue;
        const double scale = 1.0 + std::max({norm(a), norm(b), norm(c)});
        if (distance(a, b) < tol * scale || distance(b, c) < tol * scale || distance(a, c) < tol * scale)
          continue;
        bool crossed = false;
        for (int l = 0; l < n && !crossed; ++l) {
          if (l == i || l == j || l == k) continue;
          AffineCoefficients nl = arr[l].normalized();
          auto side = [&](const Point2& p) { return nl.a * p.x + nl.b * p.y + nl.c; };
          double sa = side(a), sb = side(b), sc = side(c);
          crossed = !((sa > 0 && sb > 0 && sc > 0) || (sa < 0 && sb < 0 && sc < 0));
        }
        if (crossed) continue;
        TriangularFace face;
        face.lines = {i, j, k};
        face.corners = {a, b, c};
        face.barycenter = {(a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0};
        report.triangles.push_back(face);
      }
  report.count = static_cast<int>(report.triangles.size());
  return report;
}

LineForm lbar_line(int k, int m) {
  if (m < 3 || m % 3 != 0) throw DomainError("L̄ lines need m = 3q, got m = " + std::to_string(m));
  const int period = 6 * m;
  k %= period;
  if (k < 0) k += period;
  const LineLabel label{LineFamily::Bar, k, period};
  if (k == 0) return LineForm::horizontal(0.0, label);
  if (k == 3 * m) return LineForm::vertical(-1.0, label);
  using Trig = RationalTrig<double>;
  const double t = Trig::tan_pi(k, period);
  return LineForm::non_vertical(-t, Trig::cos_pi(2L * k, period) * t + Trig::sin_pi(2L * k, period), label);
}

Arrangement rotated(const Arrangement& arr, Point2 center, double angle) {
  const double co = std::cos(angle), si = std::sin(angle);
  std::vector<LineForm> out;
  for (const LineForm& line : arr.lines()) {
    // ℓ'(p) = ℓ(R⁻¹(p − center) + center)
    AffineCoefficients ac = line.affine();
    double a = ac.a * co + ac.b * si;
    double b = -ac.a * si + ac.b * co;
    double c = ac.c + ac.a * center.x + ac.b * center.y - a * center.x - b * center.y;
    out.push_back(LineForm::from_affine(a, b, c, {LineFamily::Custom, line.label().nu, line.label().d}));
  }
  return Arrangement(ArrangementKind::Custom, arr.d(), std::move(out));
}

bool same_line_set(const Arrangement& a, const Arrangement& b, double tol) {
  if (a.size() != b.size()) return false;
  for (const LineForm& la : a.lines()) {
    bool found = std::any_of(b.lines().begin(), b.lines().end(),
                             [&](const LineForm& lb) { return same_line(la, lb, tol); });
    if (!found) return false;
  }
  return true;
}

std::string arrangement_json(const Arrangement& arr) {
  std::ostringstream os;
  os << "{\"system\":" << json_escape(to_string(arr.kind())) << ",\"d\":" << arr.d() << ",\"lines\":[";
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const LineForm& l = arr[i];
    if (i) os << ',';
    const char* kind = l.kind() == LineForm::Kind::NonVertical ? "NonVertical"
                       : l.kind() == LineForm::Kind::VerticalX ? "VerticalX"
                                                               : "HorizontalY";
    os << "{\"kind\":\"" << kind << "\",\"t\":" << format_real(l.tangent())
       << ",\"gamma\":" << format_real(l.offset()) << ",\"nu\":" << l.label().nu << '}';
  }
  os << "]}";
  return os.str();
}

void write_vertex_csv(std::ostream& os, const VertexReport& report) {
  os << "x,y,count\n";
  for (const Vertex& v : report.points)
    os << format_real(v.point.x) << ',' << format_real(v.point.y) << ',' << v.incident << '\n';
}

void write_triangle_csv(std::ostream& os, const TriangleReport& report) {
  os << "x,y,count\n";
  for (const TriangularFace& t : report.triangles)
    os << format_real(t.barycenter.x) << ',' << format_real(t.barycenter.y) << ",3\n";
}

}  // namespace nodal
