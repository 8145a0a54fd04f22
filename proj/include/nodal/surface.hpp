#pragma once

// Separable surfaces xy_part(x, y) + z_part(z) = 0, their real nodes and the
// node counts of the four-variable mirror hypersurfaces.

#include <map>
#include <string>
#include <vector>

#include "nodal/construction.hpp"
#include "nodal/polish.hpp"
#include "nodal/polynomial.hpp"

namespace nodal {

enum class SurfaceFamily { P_SigmaD, Chmutov, P_C, Q_C, Qbar_C };

std::string to_string(SurfaceFamily family);
/// Accepts the names printed by to_string; throws DomainError otherwise.
SurfaceFamily parse_family(const std::string& name);
bool is_c_family(SurfaceFamily family);

struct SurfaceSpec {
  SurfaceFamily family = SurfaceFamily::P_C;
  int m = 0;
  BivarPoly xy_part{0};
  UnivarPoly z_part;
  /// λ scaling the Chebyshev term (1 for the normalized families).
  double lambda = 1.0;

  double operator()(double x, double y, double z) const { return xy_part(x, y) + z_part(z); }
  double operator()(Point3 p) const { return (*this)(p.x, p.y, p.z); }
};

/// Throws DomainError for an incompatible (family, m): C families need m = 3q,
/// every family needs m ≥ 3.
SurfaceSpec build_surface(SurfaceFamily family, int m, Precision precision = Precision::Compensated);

struct Term3 {
  int i = 0, j = 0, k = 0;
  double c = 0.0;
};
/// The surface as one three-variable term list.
std::vector<Term3> assembled_terms(const SurfaceSpec& s);
double evaluate_terms(const std::vector<Term3>& terms, Point3 p);

struct ZCritical {
  double z = 0.0;
  double value = 0.0;
  Morse type = Morse::Min;  // Saddle marks a degenerate (inflection) point
};

/// Real critical points of g, ascending: grid sign changes of g′ over the
/// Fujiwara root bound, refined by bisection and Newton.
std::vector<ZCritical> z_critical_points(const UnivarPoly& g);

enum class NodeClass { Vertex, Triangle, Other };
std::string to_string(NodeClass c);

struct Node {
  Point3 location;
  NodeClass cls = NodeClass::Vertex;
  double grad_norm = 0.0;
  double hessian3_det = 0.0;
  int sig_plus = 0;
  int sig_minus = 0;
};

struct NodeCountReport {
  int m = 0;
  SurfaceFamily family = SurfaceFamily::P_C;
  int enumerated = 0;
  int formula = 0;
  std::map<std::string, int> per_class;
  bool certified = false;
};

struct NodeEnumeration {
  std::vector<Node> nodes;  // sorted lexicographically by location
  NodeCountReport report;
};

/// Pairs every critical point of xy_part with every critical point of z_part
/// whose values sum to zero (within 1e−5 of the level scale), then certifies
/// each node. Throws CertificationError naming the first failing point.
NodeEnumeration enumerate_nodes(const SurfaceSpec& s);
/// Same, with the critical points of xy_part supplied by the caller.
NodeEnumeration enumerate_nodes(const SurfaceSpec& s, const std::vector<CriticalPoint>& xy_points);

/// C(m,2)·⌊m/2⌋ + t·⌊(m−1)/2⌋ with t the closed-form number of minima:
/// 1 + m(m−3)/3 for the C families; m²/3 − m (3 | m) or (m² − 3m + 2)/3
/// otherwise for the D families.
int node_count_formula(SurfaceFamily family, int m);

struct LevelCount {
  double level = 0.0;
  int count = 0;
};

struct HypersurfaceCount {
  int count_J = 0;
  int count_Chmutov = 0;
  int excess = 0;
  std::vector<LevelCount> levels_J;
  std::vector<LevelCount> levels_F;
};

/// Groups critical values that agree within tol·(1 + |v|).
std::vector<LevelCount> level_counts(const std::vector<CriticalPoint>& pts, double tol = 1e-6);
/// Σ over levels of count².
int sum_of_squares(const std::vector<LevelCount>& levels);

/// Node counts of J_m^C(x₀,x₁) − J_m^C(x₂,x₃) and of the Chmutov analogue
/// built from F, from the measured spectra. m = 3q.
HypersurfaceCount hypersurface_node_count(int m);

/// Critical points of the folding polynomial F_m from the grid oracle, with
/// values from the exact factor product. Throws SpectrumError unless there
/// are (m − 1)² of them.
std::vector<CriticalPoint> folding_critical_points(const BivarPoly& f, int m);

std::string node_csv(const std::vector<Node>& nodes);
std::string report_json(const NodeCountReport& r);

}  // namespace nodal
