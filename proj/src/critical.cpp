#include "nodal/critical.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "nodal/construction.hpp"
#include "nodal/errors.hpp"

namespace nodal {

namespace {

void require_multiple_of_3(int m) {
  if (m < 3 || m % 3 != 0) throw DomainError("degree m = " + std::to_string(m) + " is not of the form 3q");
}

int wrap(int k, int period) {
  k = (k - 1) % period;
  if (k < 0) k += period;
  return k + 1;
}

bool intersect(const LineForm& l1, const LineForm& l2, Point2& out) {
  AffineCoefficients p = l1.normalized(), q = l2.normalized();
  double det = p.a * q.b - q.a * p.b;
  if (std::abs(det) < 1e-13) return false;
  out = {(-p.c * q.b + q.c * p.b) / det, (-p.a * q.c + q.a * p.c) / det};
  return true;
}

std::vector<Concurrence> triple_points(const Arrangement& arr, double tol) {
  std::vector<Concurrence> out;
  for (const Vertex& v : vertices(arr, tol).points) {
    if (v.incident != 3) continue;
    out.push_back({v.point, {v.lines[0] + 1, v.lines[1] + 1, v.lines[2] + 1}});
  }
  return out;
}

std::string count_mismatch(const char* what, int m, std::size_t got, int want) {
  return std::string(what) + " at m = " + std::to_string(m) + ": found " + std::to_string(got) + ", expected " +
         std::to_string(want);
}

bool less_point(const Point2& a, const Point2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

}  // namespace

Arrangement m_minus1(int m) {
  require_multiple_of_3(m);
  std::vector<LineForm> lines;
  for (int nu = 0; nu < m; ++nu) {
    lines.push_back(lbar_line(6 * nu, m));
    lines.push_back(lbar_line(6 * nu + 2, m));
  }
  return Arrangement(ArrangementKind::MMinus1, 2 * m, std::move(lines));
}

Arrangement m_8(int m) {
  require_multiple_of_3(m);
  std::vector<LineForm> lines;
  for (int nu = 0; nu < m; ++nu) lines.push_back(lbar_line(6 * nu + 4, m));
  return Arrangement(ArrangementKind::M8, 2 * m, std::move(lines));
}

bool minimum_label_rule(const std::array<int, 3>& l, int m) {
  const int parity = l[0] % 2;
  if (l[1] % 2 != parity || l[2] % 2 != parity) return false;
  const int target = parity == 0 ? 2 * m + 4 : 2 * m + 3;
  return ((l[0] + l[1] + l[2] - target) % (2 * m) + 2 * m) % (2 * m) == 0;
}

bool maximum_label_rule(const std::array<int, 3>& l, int m) {
  return ((l[0] + l[1] + l[2] - 1) % m + m) % m == 0;
}

std::vector<Concurrence> minimum_concurrences(int m, double tol) {
  std::vector<Concurrence> pts = triple_points(m_minus1(m), tol);
  const int want = 1 + m * (m - 3) / 3;
  if (static_cast<int>(pts.size()) != want) throw SpectrumError(count_mismatch("M_-1 triple points", m, pts.size(), want));
  for (const Concurrence& c : pts)
    if (!minimum_label_rule(c.labels, m))
      throw SpectrumError("M_-1 concurrence l" + std::to_string(c.labels[0]) + ", l" + std::to_string(c.labels[1]) +
                          ", l" + std::to_string(c.labels[2]) + " breaks the label rule");
  return pts;
}

std::vector<Concurrence> maximum_concurrences(int m, double tol) {
  std::vector<Concurrence> pts = triple_points(m_8(m), tol);
  const int want = m * (m - 3) / 6;
  if (static_cast<int>(pts.size()) != want) throw SpectrumError(count_mismatch("M_8 triple points", m, pts.size(), want));
  for (const Concurrence& c : pts)
    if (!maximum_label_rule(c.labels, m))
      throw SpectrumError("M_8 concurrence breaks the label rule at m = " + std::to_string(m));
  return pts;
}

std::vector<Point2> candidate_minima(int m) {
  std::vector<Point2> out;
  for (const Concurrence& c : minimum_concurrences(m)) out.push_back({c.point.x, -c.point.y});
  return out;
}

std::vector<Point2> candidate_maxima(int m) {
  std::vector<Point2> out;
  for (const Concurrence& c : maximum_concurrences(m)) out.push_back({c.point.x, -c.point.y});
  return out;
}

int predicted_axis_minima(int m) { return 1 + (m - 3) / 2; }

std::vector<std::array<int, 2>> predicted_minimum_pairs(int m) {
  require_multiple_of_3(m);
  const int q = m / 3;
  const int period = 2 * m;
  std::vector<std::array<int, 2>> base;
  std::vector<std::array<int, 2>> out;
  // x-axis: l1 ∩ l_{3+2k}; the central one (k = q−1) is its own orbit.
  for (int k = 0; k <= (m - 3) / 2; ++k) {
    if (k == q - 1) out.push_back({1, 3 + 2 * k});
    else base.push_back({1, 3 + 2 * k});
  }
  // odd family, rows while they are nonempty
  for (int j = 0; q - 3 - 2 * j > 0; ++j) {
    for (int s = 5 + 2 * j; s <= 2 * q - 3 - 2 * j; s += 2) base.push_back({3 + 2 * j, s});
    for (int t = 3 + 2 * j; t <= 2 * q - 5 - 2 * j; t += 2) base.push_back({6 * q - 1 - 2 * j, 6 * q - t});
  }
  // even family
  for (int i = 1; i <= q; ++i)
    for (int k = i + 1; k <= q; ++k) base.push_back({2 * i, 2 * k});
  for (const auto& pr : base)
    for (int n = 0; n < 3; ++n) out.push_back({wrap(pr[0] + 2 * q * n, period), wrap(pr[1] + 2 * q * n, period)});
  return out;
}

std::vector<std::array<int, 2>> predicted_maximum_pairs(int m) {
  require_multiple_of_3(m);
  const int q = m / 3;
  std::vector<std::array<int, 2>> out;
  for (int i = 1; i <= q; ++i)
    for (int k = i + 1; k <= q; ++k)
      for (int n = 0; n < 3; ++n) out.push_back({wrap(i + q * n, m), wrap(k + q * n, m)});
  return out;
}

std::vector<Point2> pair_points(const Arrangement& lines, const std::vector<std::array<int, 2>>& pairs) {
  std::vector<Point2> out;
  for (const auto& pr : pairs) {
    Point2 p;
    if (!intersect(lines[pr[0] - 1], lines[pr[1] - 1], p))
      throw SpectrumError("predicted pair l" + std::to_string(pr[0]) + ", l" + std::to_string(pr[1]) + " is parallel");
    out.push_back(p);
  }
  return out;
}

std::vector<CriticalPoint> sorted_by_location(std::vector<CriticalPoint> pts) {
  std::sort(pts.begin(), pts.end(),
            [](const CriticalPoint& a, const CriticalPoint& b) { return less_point(a.location, b.location); });
  return pts;
}

Box2 critical_window(int m, SpectrumFrame frame, double margin) {
  std::vector<Point2> pts;
  if (frame == SpectrumFrame::SigmaD) {
    for (const Vertex& v : vertices(sigma_d(m)).points) pts.push_back(v.point);
  } else {
    require_multiple_of_3(m);
    const NormalizationData nd = normalization_data(m);
    for (const Vertex& v : vertices(sigma_c(m)).points) {
      Point2 p = sigma_to_jc(nd, v.point);
      if (frame == SpectrumFrame::Jbar) p.y = -p.y;
      pts.push_back(p);
    }
  }
  Box2 box{pts[0].x, pts[0].x, pts[0].y, pts[0].y};
  for (const Point2& p : pts) {
    box.xmin = std::min(box.xmin, p.x);
    box.xmax = std::max(box.xmax, p.x);
    box.ymin = std::min(box.ymin, p.y);
    box.ymax = std::max(box.ymax, p.y);
  }
  const double grow = margin * std::max(box.xmax - box.xmin, box.ymax - box.ymin);
  return {box.xmin - grow, box.xmax + grow, box.ymin - grow, box.ymax + grow};
}

UnivarPoly restrict_to_line(const BivarPoly& p, Point2 origin, Point2 direction) {
  return p.substitute_affine(direction.x, 0.0, origin.x, direction.y, 0.0, origin.y).restrict_y0();
}

std::vector<CriticalPoint> brute_force_critical(const BivarPoly& p, const Box2& window, int grid_n) {
  if (grid_n < 64) throw DomainError("brute_force_critical needs grid_n >= 64");
  const int n = grid_n;
  const double hx = (window.xmax - window.xmin) / n, hy = (window.ymax - window.ymin) / n;
  std::vector<Gradient2> grid(static_cast<std::size_t>((n + 1) * (n + 1)));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      grid[static_cast<std::size_t>(i * (n + 1) + j)] = p.gradient(window.xmin + i * hx, window.ymin + j * hy);

  const double dedupe = 1e-7;
  std::vector<CriticalPoint> found;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double gxmin = INFINITY, gxmax = -INFINITY, gymin = INFINITY, gymax = -INFINITY;
      for (int di = 0; di <= 1; ++di)
        for (int dj = 0; dj <= 1; ++dj) {
          const Gradient2& g = grid[static_cast<std::size_t>((i + di) * (n + 1) + j + dj)];
          gxmin = std::min(gxmin, g.x);
          gxmax = std::max(gxmax, g.x);
          gymin = std::min(gymin, g.y);
          gymax = std::max(gymax, g.y);
        }
      if (gxmin > 0 || gxmax < 0 || gymin > 0 || gymax < 0) continue;
      const Point2 seed{window.xmin + (i + 0.5) * hx, window.ymin + (j + 0.5) * hy};
      CriticalPoint cp;
      try {
        cp = polish_critical(p, seed);
      } catch (const Error&) {
        continue;
      }
      const Point2& x = cp.location;
      if (x.x < window.xmin || x.x > window.xmax || x.y < window.ymin || x.y > window.ymax) continue;
      const bool dup = std::any_of(found.begin(), found.end(), [&](const CriticalPoint& o) {
        return distance(o.location, x) < dedupe * (1.0 + norm(x));
      });
      if (!dup) found.push_back(cp);
    }
  return sorted_by_location(std::move(found));
}

CriticalSpectrum critical_spectrum(const BivarPoly& p, int m, SpectrumFrame frame, const SpectrumOptions& options) {
  const double level_tol = options.level_tol;
  CriticalSpectrum spec;
  std::vector<Point2> saddle_seeds, min_seeds, max_seeds;
  if (frame == SpectrumFrame::SigmaD) {
    if (m < 3) throw DomainError("Sigma_D spectrum needs m >= 3");
    const Arrangement s = sigma_d(m);
    for (const Vertex& v : vertices(s).points) saddle_seeds.push_back(v.point);
    for (const TriangularFace& t : triangular_faces(s).triangles) min_seeds.push_back(t.barycenter);
  } else {
    require_multiple_of_3(m);
    const NormalizationData nd = normalization_data(m);
    for (const Vertex& v : vertices(sigma_c(m)).points) saddle_seeds.push_back(sigma_to_jc(nd, v.point));
    min_seeds = candidate_minima(m);
    max_seeds = candidate_maxima(m);
    if (frame == SpectrumFrame::Jbar) {
      for (auto* seeds : {&saddle_seeds, &min_seeds, &max_seeds})
        for (Point2& pt : *seeds) pt.y = -pt.y;
    }
  }

  auto polish_all = [&](const std::vector<Point2>& seeds, Morse expected, const char* what) {
    std::vector<CriticalPoint> out;
    for (const Point2& s : seeds) {
      CriticalPoint cp = polish_critical(p, s);
      if (options.values) cp.value = (*options.values)(cp.location);
      if (cp.morse != expected)
        throw SpectrumError(std::string(what) + " seed polished to a " + to_string(cp.morse) + " at m = " +
                            std::to_string(m));
      out.push_back(cp);
    }
    return out;
  };

  std::vector<CriticalPoint> saddles = polish_all(saddle_seeds, Morse::Saddle, "vertex");
  std::vector<CriticalPoint> minima, maxima;
  if (frame == SpectrumFrame::SigmaD) {
    // Which bounded faces carry minima depends on the sign pattern, so the
    // extrema are taken from the grid oracle and classified as found.
    int oracle_saddles = 0;
    for (CriticalPoint cp : brute_force_critical(p, critical_window(m, SpectrumFrame::SigmaD), 256)) {
      if (options.values) cp.value = (*options.values)(cp.location);
      if (cp.morse == Morse::Min) minima.push_back(cp);
      else if (cp.morse == Morse::Max) maxima.push_back(cp);
      else ++oracle_saddles;
    }
    if (oracle_saddles != static_cast<int>(saddles.size()))
      throw SpectrumError(count_mismatch("grid-oracle saddles", m, static_cast<std::size_t>(oracle_saddles),
                                         static_cast<int>(saddles.size())));
    for (const Point2& s : min_seeds) {
      const CriticalPoint cp = polish_critical(p, s);
      const auto& pool = cp.morse == Morse::Min ? minima : maxima;
      if (cp.morse == Morse::Saddle ||
          std::none_of(pool.begin(), pool.end(), [&](const CriticalPoint& o) { return distance(o.location, cp.location) < 1e-7; }))
        throw SpectrumError("triangle barycenter does not polish to an oracle extremum at m = " + std::to_string(m));
    }
  } else {
    minima = polish_all(min_seeds, Morse::Min, "minimum");
    maxima = polish_all(max_seeds, Morse::Max, "maximum");
  }

  auto mean = [](const std::vector<CriticalPoint>& pts) {
    double s = 0.0;
    for (const CriticalPoint& c : pts) s += c.value;
    return pts.empty() ? 0.0 : s / static_cast<double>(pts.size());
  };
  double scale = 1.0;
  if (frame == SpectrumFrame::SigmaD) {
    spec.saddle_level = 0.0;
    spec.min_level = mean(minima);
    spec.max_level = maxima.empty() ? 0.0 : mean(maxima);
    scale = std::max({std::abs(spec.min_level), std::abs(spec.max_level), 1e-300});
  }
  auto check = [&](const std::vector<CriticalPoint>& pts, double level) {
    for (const CriticalPoint& c : pts) {
      const double dev = std::abs(c.value - level) / scale;
      spec.worst_deviation = std::max(spec.worst_deviation, dev);
      if (dev > level_tol)
        throw SpectrumError("critical value " + std::to_string(c.value) + " at (" + std::to_string(c.location.x) +
                            ", " + std::to_string(c.location.y) + ") is off its level " + std::to_string(level));
    }
  };
  check(saddles, spec.saddle_level);
  check(minima, spec.min_level);
  check(maxima, spec.max_level);

  spec.saddles = static_cast<int>(saddles.size());
  spec.minima = static_cast<int>(minima.size());
  spec.maxima = static_cast<int>(maxima.size());
  std::vector<CriticalPoint> all = saddles;
  all.insert(all.end(), minima.begin(), minima.end());
  all.insert(all.end(), maxima.begin(), maxima.end());
  spec.points = sorted_by_location(std::move(all));
  for (std::size_t i = 1; i < spec.points.size(); ++i)
    if (distance(spec.points[i].location, spec.points[i - 1].location) < 1e-7)
      throw SpectrumError("two seeds polished to the same critical point at m = " + std::to_string(m));

  const int want_saddles = m * (m - 1) / 2;
  if (spec.saddles != want_saddles) throw SpectrumError(count_mismatch("saddles", m, saddles.size(), want_saddles));
  if (frame != SpectrumFrame::SigmaD) {
    if (spec.minima != 1 + m * (m - 3) / 3) throw SpectrumError(count_mismatch("minima", m, minima.size(), 1 + m * (m - 3) / 3));
    if (spec.maxima != m * (m - 3) / 6) throw SpectrumError(count_mismatch("maxima", m, maxima.size(), m * (m - 3) / 6));
  } else if (spec.saddles + spec.minima + spec.maxima != (m - 1) * (m - 1)) {
    throw SpectrumError(count_mismatch("Sigma_D critical points", m, spec.points.size(), (m - 1) * (m - 1)));
  }
  return spec;
}

}  // namespace nodal
