#include "nodal/render.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "nodal/construction.hpp"
#include "nodal/errors.hpp"
#include "nodal/io.hpp"

namespace nodal {

namespace {

struct Vec3 {
  double x = 0, y = 0, z = 0;
};
Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
Vec3 cross(Vec3 a, Vec3 b) { return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x}; }
Vec3 normalize(Vec3 a) {
  const double n = std::sqrt(dot(a, a));
  return n > 0 ? (1.0 / n) * a : a;
}
Vec3 vec(Point3 p) { return {p.x, p.y, p.z}; }
Point3 point(Vec3 v) { return {v.x, v.y, v.z}; }

std::uint8_t to_byte(double v) { return static_cast<std::uint8_t>(std::clamp(std::lround(v * 255.0), 0L, 255L)); }

/// Marching tetrahedra over a (n+1)³ value grid; `usable` marks grid points inside the clip sphere.
Mesh march(const std::vector<double>& values, const std::vector<char>& usable, int n, Point3 origin, double h,
           double iso) {
  const int np = n + 1;
  auto gid = [np](int i, int j, int k) { return (static_cast<std::int64_t>(k) * np + j) * np + i; };
  auto pos = [&](std::int64_t g) {
    const int i = static_cast<int>(g % np), j = static_cast<int>((g / np) % np), k = static_cast<int>(g / (np * np));
    return Vec3{origin.x + i * h, origin.y + j * h, origin.z + k * h};
  };
  Mesh mesh;
  std::unordered_map<std::int64_t, int> edge_vertex;
  const std::int64_t total = static_cast<std::int64_t>(np) * np * np;
  auto vertex_on = [&](std::int64_t a, std::int64_t b) {
    if (a > b) std::swap(a, b);
    const std::int64_t key = a * total + b;
    auto it = edge_vertex.find(key);
    if (it != edge_vertex.end()) return it->second;
    const double va = values[static_cast<std::size_t>(a)] - iso, vb = values[static_cast<std::size_t>(b)] - iso;
    const double t = va / (va - vb);
    const Vec3 p = pos(a) + t * (pos(b) - pos(a));
    const int id = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(point(p));
    edge_vertex.emplace(key, id);
    return id;
  };
  auto emit = [&](int a, int b, int c, Vec3 toward_positive) {
    const Vec3 pa = vec(mesh.vertices[a]), pb = vec(mesh.vertices[b]), pc = vec(mesh.vertices[c]);
    if (dot(cross(pb - pa, pc - pa), toward_positive) < 0) std::swap(b, c);
    mesh.faces.push_back({a, b, c});
  };
  // Six tetrahedra around the 0–7 diagonal; corner index = dx + 2 dy + 4 dz.
  static const int kTets[6][4] = {{0, 1, 3, 7}, {0, 3, 2, 7}, {0, 2, 6, 7}, {0, 6, 4, 7}, {0, 4, 5, 7}, {0, 5, 1, 7}};
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        std::int64_t corner[8];
        bool inside = true;
        for (int c = 0; c < 8; ++c) {
          corner[c] = gid(i + (c & 1), j + ((c >> 1) & 1), k + ((c >> 2) & 1));
          inside = inside && usable[static_cast<std::size_t>(corner[c])];
        }
        if (!inside) continue;
        for (const auto& tet : kTets) {
          std::int64_t neg[4], posv[4];
          int nn = 0, np_ = 0;
          for (int c : tet) {
            const std::int64_t g = corner[c];
            if (values[static_cast<std::size_t>(g)] < iso) neg[nn++] = g;
            else posv[np_++] = g;
          }
          if (nn == 0 || np_ == 0) continue;
          Vec3 cn{}, cp{};
          for (int a = 0; a < nn; ++a) cn = cn + pos(neg[a]);
          for (int a = 0; a < np_; ++a) cp = cp + pos(posv[a]);
          const Vec3 dir = (1.0 / np_) * cp - (1.0 / nn) * cn;
          if (nn == 1) {
            emit(vertex_on(neg[0], posv[0]), vertex_on(neg[0], posv[1]), vertex_on(neg[0], posv[2]), dir);
          } else if (np_ == 1) {
            emit(vertex_on(posv[0], neg[0]), vertex_on(posv[0], neg[1]), vertex_on(posv[0], neg[2]), dir);
          } else {
            const int a = vertex_on(neg[0], posv[0]), b = vertex_on(neg[0], posv[1]);
            const int c = vertex_on(neg[1], posv[1]), d = vertex_on(neg[1], posv[0]);
            emit(a, b, c, dir);
            emit(a, c, d, dir);
          }
        }
      }
  if (mesh.faces.empty()) mesh.warning = "zero set does not meet the clip sphere; mesh is empty";
  return mesh;
}

struct Grid3 {
  int n;
  Point3 origin;
  double h;
  std::vector<char> usable;
};

Grid3 clip_grid(const RenderConfig& cfg) {
  Grid3 g;
  g.n = cfg.resolution;
  g.h = 2.0 * cfg.clip.radius / g.n;
  g.origin = {cfg.clip.center.x - cfg.clip.radius, cfg.clip.center.y - cfg.clip.radius,
              cfg.clip.center.z - cfg.clip.radius};
  const int np = g.n + 1;
  g.usable.assign(static_cast<std::size_t>(np) * np * np, 0);
  for (int k = 0; k < np; ++k)
    for (int j = 0; j < np; ++j)
      for (int i = 0; i < np; ++i) {
        const Vec3 p{g.origin.x + i * g.h, g.origin.y + j * g.h, g.origin.z + k * g.h};
        const Vec3 d = p - vec(cfg.clip.center);
        g.usable[(static_cast<std::size_t>(k) * np + j) * np + i] = dot(d, d) <= cfg.clip.radius * cfg.clip.radius;
      }
  return g;
}

}  // namespace

void validate(const RenderConfig& cfg) {
  if (cfg.width < 16 || cfg.height < 16)
    throw DomainError("image size must be at least 16x16, got " + std::to_string(cfg.width) + "x" +
                      std::to_string(cfg.height));
  if (cfg.mode == RenderMode::SignPlot && cfg.window.empty()) throw DomainError("render window is empty");
  if (cfg.mode != RenderMode::SignPlot && !(cfg.clip.radius > 0)) throw DomainError("clip radius must be positive");
  if (cfg.samples < 1) throw DomainError("samples must be at least 1");
  if (cfg.mode == RenderMode::Mesh && (cfg.resolution < 2 || cfg.resolution > 256))
    throw DomainError("mesh resolution must lie in [2, 256]");
}

std::string to_pgm(const GrayImage& img) {
  std::string out = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  out.append(img.pixels.begin(), img.pixels.end());
  return out;
}

std::string to_ppm(const RgbImage& img) {
  std::string out = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  out.append(img.rgb.begin(), img.rgb.end());
  return out;
}

GrayImage render_sign_plot(const BivarPoly& p, const RenderConfig& cfg, const std::vector<Point2>& markers,
                           int marker_radius) {
  validate(cfg);
  GrayImage img{cfg.width, cfg.height, std::vector<std::uint8_t>(static_cast<std::size_t>(cfg.width) * cfg.height)};
  const Box2& w = cfg.window;
  for (int r = 0; r < cfg.height; ++r) {
    const double y = w.ymax - (r + 0.5) * (w.ymax - w.ymin) / cfg.height;
    for (int c = 0; c < cfg.width; ++c) {
      const double x = w.xmin + (c + 0.5) * (w.xmax - w.xmin) / cfg.width;
      img.pixels[static_cast<std::size_t>(r) * cfg.width + c] = p(x, y) < cfg.iso ? 0 : 255;
    }
  }
  for (const Point2& m : markers) {
    const double fc = (m.x - w.xmin) / (w.xmax - w.xmin) * cfg.width - 0.5;
    const double fr = (w.ymax - m.y) / (w.ymax - w.ymin) * cfg.height - 0.5;
    const int c = static_cast<int>(std::lround(fc)), r = static_cast<int>(std::lround(fr));
    for (int dr = -marker_radius - 1; dr <= marker_radius + 1; ++dr)
      for (int dc = -marker_radius - 1; dc <= marker_radius + 1; ++dc) {
        const int rr = r + dr, cc = c + dc;
        const double dy = rr - fr, dx = cc - fc;
        if (dx * dx + dy * dy > marker_radius * marker_radius) continue;
        if (rr >= 0 && rr < cfg.height && cc >= 0 && cc < cfg.width)
          img.pixels[static_cast<std::size_t>(rr) * cfg.width + cc] = 128;
      }
  }
  return img;
}

GrayImage eroded(const GrayImage& src, std::uint8_t value, int passes) {
  GrayImage img = src;
  const std::uint8_t other = value == 0 ? 255 : 0;
  for (int pass = 0; pass < passes; ++pass) {
    GrayImage next = img;
    for (int y = 0; y < img.height; ++y)
      for (int x = 0; x < img.width; ++x) {
        if (img.at(x, y) != value) continue;
        const bool keep = (x > 0 && img.at(x - 1, y) == value) && (x + 1 < img.width && img.at(x + 1, y) == value) &&
                          (y > 0 && img.at(x, y - 1) == value) && (y + 1 < img.height && img.at(x, y + 1) == value);
        if (!keep) next.pixels[static_cast<std::size_t>(y) * img.width + x] = other;
      }
    img = std::move(next);
  }
  return img;
}

std::vector<Component> bounded_components(const GrayImage& src, std::uint8_t value, int erosion) {
  const GrayImage img = erosion > 0 ? eroded(src, value, erosion) : src;
  std::vector<char> seen(img.pixels.size(), 0);
  std::vector<Component> out;
  std::vector<int> stack;
  for (int start = 0; start < static_cast<int>(img.pixels.size()); ++start) {
    if (seen[start] || img.pixels[start] != value) continue;
    Component comp;
    bool touches = false;
    stack.assign(1, start);
    seen[start] = 1;
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      comp.pixels.push_back(cur);
      const int x = cur % img.width, y = cur / img.width;
      if (x == 0 || y == 0 || x == img.width - 1 || y == img.height - 1) touches = true;
      const int nbr[4][2] = {{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}};
      for (const auto& q : nbr) {
        if (q[0] < 0 || q[1] < 0 || q[0] >= img.width || q[1] >= img.height) continue;
        const int idx = q[1] * img.width + q[0];
        if (!seen[idx] && img.pixels[idx] == value) {
          seen[idx] = 1;
          stack.push_back(idx);
        }
      }
    }
    if (touches) continue;
    std::sort(comp.pixels.begin(), comp.pixels.end());
    comp.area = static_cast<int>(comp.pixels.size());
    for (int px : comp.pixels) {
      comp.cx += px % img.width;
      comp.cy += px / img.width;
    }
    comp.cx /= comp.area;
    comp.cy /= comp.area;
    out.push_back(std::move(comp));
  }
  return out;
}

int count_bounded_components(const GrayImage& img, std::uint8_t value, int erosion) {
  return static_cast<int>(bounded_components(img, value, erosion).size());
}

Box2 arrangement_window(const Arrangement& arr, double margin) {
  const VertexReport v = vertices(arr);
  if (v.points.empty()) throw DomainError("arrangement has no vertices");
  Box2 b{v.points[0].point.x, v.points[0].point.x, v.points[0].point.y, v.points[0].point.y};
  for (const Vertex& p : v.points) {
    b.xmin = std::min(b.xmin, p.point.x);
    b.xmax = std::max(b.xmax, p.point.x);
    b.ymin = std::min(b.ymin, p.point.y);
    b.ymax = std::max(b.ymax, p.point.y);
  }
  const double g = margin * std::max(b.xmax - b.xmin, b.ymax - b.ymin);
  return {b.xmin - g, b.xmax + g, b.ymin - g, b.ymax + g};
}

Implicit implicit_of(const SurfaceSpec& s) {
  const UnivarPoly dz = s.z_part.derivative();
  return {[&s](const Point3& p) { return s(p); },
          [&s, dz](const Point3& p) {
            const Gradient2 g = s.xy_part.gradient(p.x, p.y);
            return Point3{g.x, g.y, dz(p.z)};
          }};
}

ClipSphere default_clip(const SurfaceSpec& s) {
  std::vector<Point2> pts;
  Point2 center{0, 0};
  if (is_c_family(s.family)) {
    const NormalizationData nd = normalization_data(s.m);
    for (const Vertex& v : vertices(sigma_c(s.m)).points) pts.push_back(sigma_to_jc(nd, v.point));
  } else {
    for (const Vertex& v : vertices(sigma_d(s.m)).points) {
      pts.push_back(s.family == SurfaceFamily::Chmutov ? sigma_d_to_folding(s.m, v.point) : v.point);
      center.x += pts.back().x;
      center.y += pts.back().y;
    }
    center.x /= static_cast<double>(pts.size());
    center.y /= static_cast<double>(pts.size());
  }
  double r = 0.0;
  for (const Point2& p : pts) r = std::max(r, distance(p, center));
  return {{center.x, center.y, 0.0}, 1.15 * r};
}

RgbImage render_implicit(const Implicit& f, const RenderConfig& cfg) {
  validate(cfg);
  const Vec3 c = vec(cfg.clip.center);
  const double r = cfg.clip.radius, dist = 3.0 * r;
  const Vec3 eye = c + dist * Vec3{std::sin(cfg.azimuth), 0.0, std::cos(cfg.azimuth)};
  const Vec3 fwd = normalize(c - eye);
  const Vec3 right = normalize(cross(fwd, {0, 1, 0}));
  const Vec3 up = cross(right, fwd);
  const double half = 1.05 * r / std::sqrt(dist * dist - r * r);
  const double aspect = static_cast<double>(cfg.width) / cfg.height;
  const int steps = std::max(256, 2 * std::max(cfg.width, cfg.height));
  const int s = cfg.samples;

  RgbImage img{cfg.width, cfg.height, std::vector<std::uint8_t>(static_cast<std::size_t>(cfg.width) * cfg.height * 3)};
  for (int row = 0; row < cfg.height; ++row)
    for (int col = 0; col < cfg.width; ++col) {
      Vec3 acc{};
      for (int sy = 0; sy < s; ++sy)
        for (int sx = 0; sx < s; ++sx) {
          const double u = ((col + (sx + 0.5) / s) / cfg.width * 2.0 - 1.0) * half * aspect;
          const double v = (1.0 - (row + (sy + 0.5) / s) / cfg.height * 2.0) * half;
          const Vec3 dir = normalize(fwd + u * right + v * up);
          Vec3 color{0.09, 0.09, 0.12};
          const Vec3 oc = eye - c;
          const double b = dot(oc, dir), disc = b * b - (dot(oc, oc) - r * r);
          if (disc > 0) {
            const double t0 = -b - std::sqrt(disc), t1 = -b + std::sqrt(disc);
            const double dt = (t1 - t0) / steps;
            double ta = t0, fa = f.value(point(eye + t0 * dir));
            for (int k = 1; k <= steps; ++k) {
              const double tb = t0 + k * dt, fb = f.value(point(eye + tb * dir));
              if ((fa < 0) != (fb < 0)) {
                double lo = ta, hi = tb, flo = fa;
                for (int it = 0; it < 32; ++it) {
                  const double mid = 0.5 * (lo + hi), fm = f.value(point(eye + mid * dir));
                  if ((fm < 0) == (flo < 0)) {
                    lo = mid;
                    flo = fm;
                  } else {
                    hi = mid;
                  }
                }
                const Vec3 hit = eye + (0.5 * (lo + hi)) * dir;
                const Vec3 n = normalize(vec(f.gradient(point(hit))));
                const double facing = -dot(n, dir);
                const double shade = 0.15 + 0.85 * std::abs(facing);
                const Vec3 base = facing >= 0 ? Vec3{0.95, 0.72, 0.30} : Vec3{0.35, 0.55, 0.90};
                color = shade * base;
                break;
              }
              ta = tb;
              fa = fb;
            }
          }
          acc = acc + color;
        }
      const std::size_t o = (static_cast<std::size_t>(row) * cfg.width + col) * 3;
      img.rgb[o] = to_byte(acc.x / (s * s));
      img.rgb[o + 1] = to_byte(acc.y / (s * s));
      img.rgb[o + 2] = to_byte(acc.z / (s * s));
    }
  return img;
}

RgbImage render_surface(const SurfaceSpec& s, const RenderConfig& cfg) { return render_implicit(implicit_of(s), cfg); }

RgbImage flipped_vertically(const RgbImage& img) {
  RgbImage out = img;
  const std::size_t stride = static_cast<std::size_t>(img.width) * 3;
  for (int r = 0; r < img.height; ++r)
    std::copy_n(img.rgb.begin() + static_cast<std::ptrdiff_t>(r * stride), stride,
                out.rgb.begin() + static_cast<std::ptrdiff_t>((img.height - 1 - r) * stride));
  return out;
}

double pixel_mismatch(const RgbImage& a, const RgbImage& b, int tolerance) {
  if (a.width != b.width || a.height != b.height) return 1.0;
  std::size_t differing = 0;
  for (std::size_t p = 0; p < a.rgb.size(); p += 3)
    for (int ch = 0; ch < 3; ++ch)
      if (std::abs(static_cast<int>(a.rgb[p + ch]) - static_cast<int>(b.rgb[p + ch])) > tolerance) {
        ++differing;
        break;
      }
  return static_cast<double>(differing) / (static_cast<double>(a.width) * a.height);
}

int Mesh::euler_characteristic() const {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(faces.size() * 3);
  for (const auto& f : faces)
    for (int e = 0; e < 3; ++e) edges.emplace_back(std::minmax(f[e], f[(e + 1) % 3]));
  std::sort(edges.begin(), edges.end());
  const auto unique_edges = std::unique(edges.begin(), edges.end()) - edges.begin();
  return static_cast<int>(vertices.size()) - static_cast<int>(unique_edges) + static_cast<int>(faces.size());
}

Mesh mesh_implicit(const std::function<double(const Point3&)>& f, const RenderConfig& cfg) {
  validate(cfg);
  const Grid3 g = clip_grid(cfg);
  const int np = g.n + 1;
  std::vector<double> values(g.usable.size());
  for (int k = 0; k < np; ++k)
    for (int j = 0; j < np; ++j)
      for (int i = 0; i < np; ++i)
        values[(static_cast<std::size_t>(k) * np + j) * np + i] =
            f({g.origin.x + i * g.h, g.origin.y + j * g.h, g.origin.z + k * g.h});
  return march(values, g.usable, g.n, g.origin, g.h, cfg.iso);
}

Mesh export_mesh(const SurfaceSpec& s, const RenderConfig& cfg) {
  validate(cfg);
  const Grid3 g = clip_grid(cfg);
  const int np = g.n + 1;
  std::vector<double> xy(static_cast<std::size_t>(np) * np), z(static_cast<std::size_t>(np));
  for (int j = 0; j < np; ++j)
    for (int i = 0; i < np; ++i) xy[static_cast<std::size_t>(j) * np + i] = s.xy_part(g.origin.x + i * g.h, g.origin.y + j * g.h);
  for (int k = 0; k < np; ++k) z[static_cast<std::size_t>(k)] = s.z_part(g.origin.z + k * g.h);
  std::vector<double> values(g.usable.size());
  for (int k = 0; k < np; ++k)
    for (int j = 0; j < np; ++j)
      for (int i = 0; i < np; ++i)
        values[(static_cast<std::size_t>(k) * np + j) * np + i] = xy[static_cast<std::size_t>(j) * np + i] + z[static_cast<std::size_t>(k)];
  return march(values, g.usable, g.n, g.origin, g.h, cfg.iso);
}

std::string to_obj(const Mesh& mesh) {
  std::ostringstream os;
  if (!mesh.warning.empty()) os << "# " << mesh.warning << '\n';
  for (const Point3& v : mesh.vertices)
    os << "v " << format_real(v.x) << ' ' << format_real(v.y) << ' ' << format_real(v.z) << '\n';
  for (const auto& f : mesh.faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  return os.str();
}

}  // namespace nodal
