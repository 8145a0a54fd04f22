// nodal: command-line front end.
//
//   nodal build    --family P_C --degree 9          polynomial JSON
//   nodal arrange  --family Sigma_C --degree 9      vertex/triangle census
//   nodal critical --family J_C --degree 9          critical spectrum
//   nodal nodes    --family P_C --degree 9          node report (+ CSV via --out)
//   nodal verify   [--degree 6]                     regression suite
//   nodal render   --family J_SigmaC --degree 9 --out f.pgm
//   nodal hyper    --degree 9                       hypersurface counts
//
// Exit status: 0 success, 1 verification failure, 2 usage or domain error.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nodal/arrangement.hpp"
#include "nodal/construction.hpp"
#include "nodal/critical.hpp"
#include "nodal/errors.hpp"
#include "nodal/io.hpp"
#include "nodal/regression.hpp"
#include "nodal/render.hpp"
#include "nodal/surface.hpp"

using namespace nodal;
using json = nlohmann::ordered_json;

namespace {

struct Args {
  std::string family;
  int degree = 0;
  std::string out;
  std::vector<double> window;
  int size = 512;
  double tolerance = 1e-5;
  std::string precision = "compensated";
  std::uint64_t seed = 1;
  std::string mode = "sign";
  int resolution = 64;
  int samples = 1;
  bool markers = false;
};

// Planar polynomials that are not surfaces.
const std::vector<std::string> kPlanar{"J_C", "Jbar_C", "F", "J_SigmaC", "J_SigmaD"};

bool is_planar(const std::string& name) { return std::find(kPlanar.begin(), kPlanar.end(), name) != kPlanar.end(); }

void emit(const Args& a, const std::string& text) {
  if (a.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(a.out, std::ios::binary);
  if (!f) throw DomainError("cannot open output file " + a.out);
  f << text;
}

BivarPoly planar(const std::string& name, int m, Precision prec) {
  if (name == "J_C") return normalized_JC(m, prec);
  if (name == "Jbar_C") return build_Jbar(m, prec);
  if (name == "F") return folding_F(m, prec);
  if (name == "J_SigmaC") return expand_sigma_poly(sigma_c(m), prec);
  if (name == "J_SigmaD") return expand_sigma_poly(sigma_d(m), prec);
  throw DomainError("unknown planar family " + name);
}

/// Arrangement vertices carried into the frame of the named polynomial.
std::vector<Point2> frame_vertices(const std::string& name, int m) {
  std::vector<Point2> out;
  const bool d = name == "J_SigmaD" || name == "F";
  for (const Vertex& v : vertices(d ? sigma_d(m) : sigma_c(m)).points) {
    Point2 p = v.point;
    if (name == "F") p = sigma_d_to_folding(m, p);
    if (name == "J_C" || name == "Jbar_C") p = sigma_to_jc(normalization_data(m), p);
    if (name == "Jbar_C") p.y = -p.y;
    out.push_back(p);
  }
  return out;
}

Box2 padded_box(const std::vector<Point2>& pts, double margin = 0.1) {
  Box2 b{INFINITY, -INFINITY, INFINITY, -INFINITY};
  for (const Point2& p : pts) {
    b.xmin = std::min(b.xmin, p.x);
    b.xmax = std::max(b.xmax, p.x);
    b.ymin = std::min(b.ymin, p.y);
    b.ymax = std::max(b.ymax, p.y);
  }
  const double pad = margin * std::max(b.xmax - b.xmin, b.ymax - b.ymin);
  return {b.xmin - pad, b.xmax + pad, b.ymin - pad, b.ymax + pad};
}

int cmd_build(const Args& a) {
  const Precision prec = parse_precision(a.precision);
  json j;
  if (is_planar(a.family)) {
    j["family"] = a.family;
    j["m"] = a.degree;
    j["polynomial"] = json::parse(polynomial_json(planar(a.family, a.degree, prec)));
  } else {
    const SurfaceSpec s = build_surface(parse_family(a.family), a.degree, prec);
    j["family"] = to_string(s.family);
    j["m"] = s.m;
    j["lambda"] = s.lambda;
    j["xy_part"] = json::parse(polynomial_json(s.xy_part));
    j["z_part"] = json::parse(polynomial_json(s.z_part));
  }
  emit(a, j.dump(2) + "\n");
  return 0;
}

int cmd_arrange(const Args& a) {
  if (a.family != "Sigma_C" && a.family != "Sigma_D")
    throw DomainError("arrange needs --family Sigma_C or Sigma_D, got '" + a.family + "'");
  const Arrangement arr = a.family == "Sigma_C" ? sigma_c(a.degree) : sigma_d(a.degree);
  const VertexReport v = vertices(arr);
  const TriangleReport t = triangular_faces(arr);
  json j;
  j["family"] = a.family;
  j["m"] = a.degree;
  j["vertices"] = v.points.size();
  j["simple"] = v.simple;
  j["triangles"] = t.count;
  j["arrangement"] = json::parse(arrangement_json(arr));
  emit(a, j.dump(2) + "\n");
  return v.simple ? 0 : 1;
}

int cmd_critical(const Args& a) {
  const std::string fam = a.family.empty() ? "J_C" : a.family;
  SpectrumFrame frame;
  FactoredPolynomial exact = fam == "Jbar_C" ? factored_Jbar(a.degree) : FactoredPolynomial(1.0, {});
  if (fam == "J_C") frame = SpectrumFrame::JC, exact = factored_JC(a.degree);
  else if (fam == "Jbar_C") frame = SpectrumFrame::Jbar;
  else if (fam == "J_SigmaD") frame = SpectrumFrame::SigmaD, exact = factored_sigma(sigma_d(a.degree));
  else throw DomainError("critical needs --family J_C, Jbar_C or J_SigmaD, got '" + fam + "'");
  const CriticalSpectrum s =
      critical_spectrum(planar(fam, a.degree, parse_precision(a.precision)), a.degree, frame, {a.tolerance, &exact});
  json j;
  j["family"] = fam;
  j["m"] = a.degree;
  j["levels"] = {{"saddle", s.saddle_level}, {"min", s.min_level}, {"max", s.max_level}};
  j["counts"] = {{"saddles", s.saddles}, {"minima", s.minima}, {"maxima", s.maxima}};
  j["worst_deviation"] = s.worst_deviation;
  json pts = json::array();
  for (const CriticalPoint& c : s.points)
    pts.push_back({{"x", c.location.x}, {"y", c.location.y}, {"value", c.value}, {"type", to_string(c.morse)}});
  j["points"] = pts;
  emit(a, j.dump(2) + "\n");
  return 0;
}

int cmd_nodes(const Args& a) {
  const NodeEnumeration e = enumerate_nodes(build_surface(parse_family(a.family), a.degree, parse_precision(a.precision)));
  std::cout << report_json(e.report) << "\n";
  if (!a.out.empty()) emit(a, node_csv(e.nodes));
  return e.report.certified && e.report.enumerated == e.report.formula ? 0 : 1;
}

/// Polynomial JSON survives a round trip at random points.
CheckResult round_trip(int m, std::uint64_t seed) {
  CheckResult r;
  r.name = "json round-trip";
  const BivarPoly p = normalized_JC(m);
  const BivarPoly back = bivar_from_json(polynomial_json(p, 0.0));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng), y = u(rng);
    const double want = p(x, y);
    worst = std::max(worst, std::abs(back(x, y) - want) / std::max(std::abs(want), 1e-300));
  }
  r.passed = worst < 1e-12;
  char buf[96];
  std::snprintf(buf, sizeof buf, "m=%d seed %llu, 100 points, worst relative error %.2e", m,
                static_cast<unsigned long long>(seed), worst);
  r.detail = buf;
  return r;
}

int cmd_verify(const Args& a) {
  std::vector<CheckResult> results;
  if (a.degree > 0) {
    results = verify_degree(a.degree);
    results.push_back(round_trip(a.degree, a.seed));
  } else {
    for (int k = 1; k <= 9; ++k) results.push_back(run_criterion(k));
  }
  int failed = 0;
  for (const CheckResult& r : results) {
    failed += !r.passed;
    std::printf("%s %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
  }
  return failed ? 1 : 0;
}

int cmd_render(const Args& a) {
  if (a.out.empty()) throw DomainError("render needs --out");
  RenderConfig cfg;
  cfg.width = cfg.height = a.size;
  cfg.samples = a.samples;
  cfg.resolution = a.resolution;
  const Precision prec = parse_precision(a.precision);
  if (a.mode == "sign") {
    cfg.mode = RenderMode::SignPlot;
    const BivarPoly p = is_planar(a.family) ? planar(a.family, a.degree, prec)
                                            : build_surface(parse_family(a.family), a.degree, prec).xy_part;
    const std::string frame = is_planar(a.family) ? a.family
                              : is_c_family(parse_family(a.family))  ? "J_C"
                              : parse_family(a.family) == SurfaceFamily::Chmutov ? "F"
                                                                                 : "J_SigmaD";
    const std::vector<Point2> verts = frame_vertices(frame, a.degree);
    cfg.window = a.window.empty() ? padded_box(verts) : Box2{a.window[0], a.window[1], a.window[2], a.window[3]};
    const GrayImage img = render_sign_plot(p, cfg, a.markers ? verts : std::vector<Point2>{}, a.markers ? 4 : 1);
    emit(a, to_pgm(img));
    std::printf("bounded black components: %d\n", count_bounded_components(img));
    return 0;
  }
  const SurfaceSpec s = build_surface(parse_family(a.family), a.degree, prec);
  cfg.clip = default_clip(s);
  if (!a.window.empty()) cfg.clip = {{a.window[0], a.window[1], a.window[2]}, a.window[3]};
  if (a.mode == "raymarch") {
    cfg.mode = RenderMode::Raymarch;
    emit(a, to_ppm(render_surface(s, cfg)));
    return 0;
  }
  if (a.mode == "mesh") {
    cfg.mode = RenderMode::Mesh;
    const Mesh mesh = export_mesh(s, cfg);
    if (!mesh.warning.empty()) std::fprintf(stderr, "warning: %s\n", mesh.warning.c_str());
    emit(a, to_obj(mesh));
    std::printf("vertices %zu, faces %zu\n", mesh.vertices.size(), mesh.faces.size());
    return 0;
  }
  throw DomainError("--mode must be sign, raymarch or mesh");
}

int cmd_hyper(const Args& a) {
  const HypersurfaceCount h = hypersurface_node_count(a.degree);
  auto levels = [](const std::vector<LevelCount>& ls) {
    json arr = json::array();
    for (const LevelCount& l : ls) arr.push_back({{"level", l.level}, {"count", l.count}});
    return arr;
  };
  json j;
  j["m"] = a.degree;
  j["count_J"] = h.count_J;
  j["count_Chmutov"] = h.count_Chmutov;
  j["excess"] = h.excess;
  j["levels_J"] = levels(h.levels_J);
  j["levels_F"] = levels(h.levels_F);
  emit(a, j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Real nodal surfaces from simple line arrangements"};
  app.require_subcommand(1);
  Args a;

  auto common = [&a](CLI::App* sub, bool family_required) {
    auto* f = sub->add_option("--family", a.family, "surface or polynomial family");
    if (family_required) f->required();
    sub->add_option("--out", a.out, "output path (stdout when omitted)");
    sub->add_option("--precision", a.precision, "double or compensated")
        ->check(CLI::IsMember({"double", "compensated"}));
    sub->add_option("--seed", a.seed, "seed for randomized checks");
    sub->add_option("--tolerance", a.tolerance, "critical level tolerance")->check(CLI::PositiveNumber);
  };
  auto degree = [&a](CLI::App* sub, bool required) {
    auto* d = sub->add_option("--degree", a.degree, "degree m")->check(CLI::Range(1, 60));
    if (required) d->required();
  };

  std::map<std::string, std::function<int(const Args&)>> handlers{
      {"build", cmd_build}, {"arrange", cmd_arrange}, {"critical", cmd_critical}, {"nodes", cmd_nodes},
      {"verify", cmd_verify}, {"render", cmd_render}, {"hyper", cmd_hyper}};
  std::map<std::string, CLI::App*> subs;
  subs["build"] = app.add_subcommand("build", "emit polynomial JSON");
  subs["arrange"] = app.add_subcommand("arrange", "vertex and triangle census of Sigma_C or Sigma_D");
  subs["critical"] = app.add_subcommand("critical", "critical spectrum of J_C, Jbar_C or J_SigmaD");
  subs["nodes"] = app.add_subcommand("nodes", "enumerate, certify and count the nodes of a surface");
  subs["verify"] = app.add_subcommand("verify", "regression suite, per degree or in full");
  subs["render"] = app.add_subcommand("render", "sign plot (PGM), raymarch (PPM) or mesh (OBJ)");
  subs["hyper"] = app.add_subcommand("hyper", "hypersurface node counts for J and the folding polynomial");
  for (const char* n : {"build", "nodes", "render"}) common(subs[n], true), degree(subs[n], true);
  for (const char* n : {"arrange", "critical"}) common(subs[n], std::string(n) == "arrange"), degree(subs[n], true);
  common(subs["verify"], false);
  degree(subs["verify"], false);
  common(subs["hyper"], false);
  degree(subs["hyper"], true);

  auto* r = subs["render"];
  r->add_option("--mode", a.mode, "sign, raymarch or mesh")->check(CLI::IsMember({"sign", "raymarch", "mesh"}));
  r->add_option("--size", a.size, "image width and height in pixels")->check(CLI::Range(16, 8192));
  r->add_option("--window", a.window, "xmin xmax ymin ymax (sign) or cx cy cz radius (clip sphere)")
      ->expected(4)
      ->delimiter(',');
  r->add_option("--resolution", a.resolution, "mesh cells per axis")->check(CLI::Range(2, 256));
  r->add_option("--samples", a.samples, "raymarch supersampling per axis")->check(CLI::Range(1, 8));
  r->add_flag("--markers", a.markers, "draw arrangement vertices in gray");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  try {
    for (const auto& [name, sub] : subs)
      if (sub->parsed()) return handlers.at(name)(a);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
