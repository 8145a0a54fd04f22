#pragma once

// Sign plots (PGM), sphere-clipped raymarching (PPM) and marching-tetrahedra
// meshes (OBJ) of the polynomials and surfaces.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nodal/arrangement.hpp"
#include "nodal/polynomial.hpp"
#include "nodal/surface.hpp"

namespace nodal {

enum class RenderMode { SignPlot, Raymarch, Mesh };

struct ClipSphere {
  Point3 center;
  double radius = 1.0;
};

struct RenderConfig {
  int width = 512;
  int height = 512;
  Box2 window;      // sign plots
  ClipSphere clip;  // raymarch and mesh
  RenderMode mode = RenderMode::SignPlot;
  double iso = 0.0;
  int samples = 1;       // raymarch supersampling per axis
  int resolution = 64;   // mesh cells per axis, at most 256
  double azimuth = 0.5;  // camera angle about the y axis; the camera stays in the plane y = center.y
};

/// Throws DomainError on sizes below 16, an empty window, a nonpositive clip
/// radius or a mesh resolution outside [2, 256].
void validate(const RenderConfig& cfg);

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, row 0 at the top
  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // row-major triples, row 0 at the top
};

std::string to_pgm(const GrayImage& img);
std::string to_ppm(const RgbImage& img);

/// Black (0) where p < iso, white (255) elsewhere; markers drawn as gray (128)
/// discs of the given pixel radius.
GrayImage render_sign_plot(const BivarPoly& p, const RenderConfig& cfg, const std::vector<Point2>& markers = {},
                           int marker_radius = 1);

/// Pixels equal to `value` whose four neighbors also equal it, repeated `passes` times.
GrayImage eroded(const GrayImage& img, std::uint8_t value = 0, int passes = 1);

struct Component {
  int area = 0;
  double cx = 0.0, cy = 0.0;  // pixel centroid
  std::vector<int> pixels;    // y·width + x
};

/// 4-connected components of pixels equal to `value` that do not touch the
/// border, in scan order, after `erosion` passes.
std::vector<Component> bounded_components(const GrayImage& img, std::uint8_t value = 0, int erosion = 0);
int count_bounded_components(const GrayImage& img, std::uint8_t value = 0, int erosion = 0);

/// Vertex bounding box of the arrangement grown by `margin` times its larger side.
Box2 arrangement_window(const Arrangement& arr, double margin = 0.1);

struct Implicit {
  std::function<double(const Point3&)> value;
  std::function<Point3(const Point3&)> gradient;
};

/// Keeps a reference to s.
Implicit implicit_of(const SurfaceSpec& s);

/// Radius 1.15 × the largest arrangement vertex radius, centered at the
/// symmetry center of the xy part (the origin for the C families, the Σ_D
/// vertex centroid for the D families).
ClipSphere default_clip(const SurfaceSpec& s);

/// Perspective raymarch inside the clip sphere with 32-step bisection and
/// headlight shading. Two-sided coloring by the sign of the gradient toward
/// the viewer.
RgbImage render_implicit(const Implicit& f, const RenderConfig& cfg);
RgbImage render_surface(const SurfaceSpec& s, const RenderConfig& cfg);

RgbImage flipped_vertically(const RgbImage& img);
/// Fraction of pixels whose channels differ by more than `tolerance`.
double pixel_mismatch(const RgbImage& a, const RgbImage& b, int tolerance = 8);

struct Mesh {
  std::vector<Point3> vertices;
  std::vector<std::array<int, 3>> faces;
  std::string warning;  // set when the zero set misses the clip sphere
  int euler_characteristic() const;
};

/// Marching tetrahedra over the cells of a resolution³ grid lying fully
/// inside the clip sphere. Vertices are shared along grid edges.
Mesh mesh_implicit(const std::function<double(const Point3&)>& f, const RenderConfig& cfg);
Mesh export_mesh(const SurfaceSpec& s, const RenderConfig& cfg);

std::string to_obj(const Mesh& mesh);

}  // namespace nodal
