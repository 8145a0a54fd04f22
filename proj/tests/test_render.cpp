#include <gtest/gtest.h>

#include <cmath>

#include "nodal/arrangement.hpp"
#include "nodal/construction.hpp"
#include "nodal/errors.hpp"
#include "nodal/render.hpp"
#include "nodal/surface.hpp"

using namespace nodal;

namespace {

RenderConfig small_plot(Box2 window) {
  RenderConfig cfg;
  cfg.width = cfg.height = 64;
  cfg.window = window;
  return cfg;
}

}  // namespace

TEST(SignPlot, HalfPlaneIsBlackOnTheLeft) {
  const BivarPoly x = BivarPoly::from_terms({{1, 0, 1.0}});
  const GrayImage img = render_sign_plot(x, small_plot({-1, 1, -1, 1}));
  EXPECT_EQ(img.at(0, 10), 0);
  EXPECT_EQ(img.at(63, 10), 255);
  // unbounded region only
  EXPECT_EQ(count_bounded_components(img), 0);
}

TEST(SignPlot, RowZeroIsTheTop) {
  const BivarPoly y = BivarPoly::from_terms({{0, 1, 1.0}});
  const GrayImage img = render_sign_plot(y, small_plot({-1, 1, -1, 1}));
  EXPECT_EQ(img.at(5, 0), 255);
  EXPECT_EQ(img.at(5, 63), 0);
}

TEST(SignPlot, DiscInsideIsOneComponent) {
  const BivarPoly disc = BivarPoly::from_terms({{2, 0, 1.0}, {0, 2, 1.0}, {0, 0, -0.25}});
  const auto comps = bounded_components(render_sign_plot(disc, small_plot({-1, 1, -1, 1})));
  ASSERT_EQ(comps.size(), 1u);
  EXPECT_NEAR(comps[0].cx, 31.5, 1.0);
  EXPECT_NEAR(comps[0].cy, 31.5, 1.0);
}

TEST(SignPlot, NonicTrianglesAreSeparated) {
  const Arrangement s = sigma_c(9);
  RenderConfig cfg;
  cfg.width = cfg.height = 1024;
  cfg.window = arrangement_window(s);
  std::vector<Point2> marks;
  for (const Vertex& v : vertices(s).points) marks.push_back(v.point);
  const GrayImage img = render_sign_plot(expand_sigma_poly(s), cfg, marks, 4);
  const auto comps = bounded_components(img);
  ASSERT_EQ(comps.size(), 19u);
  std::vector<int> owner(img.pixels.size(), -1);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int px : comps[c].pixels) owner[static_cast<std::size_t>(px)] = static_cast<int>(c);
  std::vector<int> hits(comps.size(), 0);
  for (const TriangularFace& t : triangular_faces(s).triangles) {
    const int col = static_cast<int>((t.barycenter.x - cfg.window.xmin) / (cfg.window.xmax - cfg.window.xmin) * 1024);
    const int row = static_cast<int>((cfg.window.ymax - t.barycenter.y) / (cfg.window.ymax - cfg.window.ymin) * 1024);
    const int o = owner[static_cast<std::size_t>(row) * 1024 + col];
    ASSERT_GE(o, 0);
    ++hits[static_cast<std::size_t>(o)];
  }
  for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(SignPlot, IsDeterministic) {
  const Arrangement s = sigma_c(6);
  RenderConfig cfg = small_plot(arrangement_window(s));
  cfg.width = cfg.height = 200;
  EXPECT_EQ(to_pgm(render_sign_plot(expand_sigma_poly(s), cfg)), to_pgm(render_sign_plot(expand_sigma_poly(s), cfg)));
}

TEST(Images, NetpbmHeaders) {
  GrayImage g;
  g.width = 3;
  g.height = 2;
  g.pixels.assign(6, 7);
  const std::string pgm = to_pgm(g);
  EXPECT_EQ(pgm.substr(0, 11), "P5\n3 2\n255\n");
  EXPECT_EQ(pgm.size(), 11u + 6u);
  RgbImage c;
  c.width = 2;
  c.height = 2;
  c.rgb.assign(12, 1);
  const std::string ppm = to_ppm(c);
  EXPECT_EQ(ppm.substr(0, 11), "P6\n2 2\n255\n");
  EXPECT_EQ(ppm.size(), 11u + 12u);
}

TEST(Config, ValidationRejectsBadInput) {
  RenderConfig cfg;
  cfg.width = 4;
  EXPECT_THROW(validate(cfg), DomainError);
  cfg = RenderConfig{};
  cfg.window = {1, 1, 0, 1};
  EXPECT_THROW(validate(cfg), DomainError);
  cfg = RenderConfig{};
  cfg.mode = RenderMode::Raymarch;
  cfg.clip.radius = -1;
  EXPECT_THROW(validate(cfg), DomainError);
  cfg = RenderConfig{};
  cfg.mode = RenderMode::Mesh;
  cfg.resolution = 1000;
  EXPECT_THROW(validate(cfg), DomainError);
  EXPECT_NO_THROW(validate(RenderConfig{}));
}

TEST(Raymarch, MirrorPairRendersAsFlippedImages) {
  const SurfaceSpec q = build_surface(SurfaceFamily::Q_C, 6), qb = build_surface(SurfaceFamily::Qbar_C, 6);
  RenderConfig cfg;
  cfg.mode = RenderMode::Raymarch;
  cfg.width = cfg.height = 128;
  cfg.clip = default_clip(q);
  const RgbImage a = render_surface(q, cfg), b = render_surface(qb, cfg);
  EXPECT_LE(pixel_mismatch(a, flipped_vertically(b)), 0.005);
  // the surface is not itself symmetric, so the comparison has teeth
  EXPECT_GT(pixel_mismatch(a, flipped_vertically(a)), 0.05);
  EXPECT_EQ(to_ppm(a), to_ppm(render_surface(q, cfg)));
}

TEST(Raymarch, SphereCoversTheMiddleOnly) {
  Implicit sphere{[](const Point3& p) { return p.x * p.x + p.y * p.y + p.z * p.z - 1.0; },
                  [](const Point3& p) { return Point3{2 * p.x, 2 * p.y, 2 * p.z}; }};
  RenderConfig cfg;
  cfg.mode = RenderMode::Raymarch;
  cfg.width = cfg.height = 64;
  cfg.clip = {{0, 0, 0}, 2.0};
  const RgbImage img = render_implicit(sphere, cfg);
  const RgbImage blank = render_implicit({[](const Point3&) { return 1.0; }, [](const Point3&) { return Point3{}; }}, cfg);
  auto px = [](const RgbImage& im, int x, int y) {
    const std::size_t o = 3 * (static_cast<std::size_t>(y) * im.width + x);
    return std::array<int, 3>{im.rgb[o], im.rgb[o + 1], im.rgb[o + 2]};
  };
  EXPECT_NE(px(img, 32, 32), px(blank, 32, 32));
  EXPECT_EQ(px(img, 1, 1), px(blank, 1, 1));
}

TEST(Mesh, SphereIsClosedWithEulerTwo) {
  RenderConfig cfg;
  cfg.mode = RenderMode::Mesh;
  cfg.resolution = 32;
  cfg.clip = {{0.1, -0.05, 0.02}, 2.0};
  const Mesh m = mesh_implicit([](const Point3& p) { return p.x * p.x + p.y * p.y + p.z * p.z - 1.0; }, cfg);
  EXPECT_TRUE(m.warning.empty());
  ASSERT_FALSE(m.faces.empty());
  EXPECT_EQ(m.euler_characteristic(), 2);
  for (const Point3& v : m.vertices) EXPECT_NEAR(std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z), 1.0, 0.02);
}

TEST(Mesh, EmptyIntersectionWarns) {
  RenderConfig cfg;
  cfg.mode = RenderMode::Mesh;
  cfg.resolution = 16;
  cfg.clip = {{0, 0, 0}, 1.0};
  const Mesh m = mesh_implicit([](const Point3& p) { return p.x * p.x + 5.0; }, cfg);
  EXPECT_TRUE(m.faces.empty());
  EXPECT_FALSE(m.warning.empty());
}

TEST(Mesh, NonicNodesLieOnTheMesh) {
  const SurfaceSpec s = build_surface(SurfaceFamily::P_C, 9);
  RenderConfig cfg;
  cfg.mode = RenderMode::Mesh;
  cfg.resolution = 128;
  cfg.clip = default_clip(s);
  const Mesh mesh = export_mesh(s, cfg);
  const double cell = 2.0 * cfg.clip.radius / cfg.resolution;
  const NodeEnumeration nodes = enumerate_nodes(s);
  ASSERT_EQ(nodes.nodes.size(), 220u);
  for (const Node& n : nodes.nodes) {
    double best = INFINITY;
    for (const Point3& v : mesh.vertices) best = std::min(best, distance(v, n.location));
    EXPECT_LT(best, 2.0 * cell);
  }
}

TEST(Mesh, ObjListsVerticesThenFaces) {
  Mesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  m.faces = {{0, 1, 2}};
  const std::string obj = to_obj(m);
  EXPECT_NE(obj.find("v 0 0 0"), std::string::npos);
  EXPECT_NE(obj.find("f 1 2 3"), std::string::npos);
}
