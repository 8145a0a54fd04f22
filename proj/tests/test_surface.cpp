#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nodal/critical.hpp"
#include "nodal/errors.hpp"
#include "nodal/surface.hpp"

using namespace nodal;

namespace {

int count_at(const std::vector<ZCritical>& zc, double value, Morse type) {
  int n = 0;
  for (const ZCritical& z : zc) n += (std::abs(z.value - value) < 1e-8 && z.type == type);
  return n;
}

// Closed forms written out independently of node_count_formula.
int c_family_count(int m) { return m * (m - 1) / 2 * (m / 2) + (1 + m * (m - 3) / 3) * ((m - 1) / 2); }

}  // namespace

TEST(ZCritical, ChebyshevLevels) {
  const auto t9 = z_critical_points(chebyshev_T(9));
  ASSERT_EQ(t9.size(), 8u);
  EXPECT_EQ(count_at(t9, -1.0, Morse::Min), 4);
  EXPECT_EQ(count_at(t9, 1.0, Morse::Max), 4);
  const auto t18 = z_critical_points(chebyshev_T(18));
  ASSERT_EQ(t18.size(), 17u);
  EXPECT_EQ(count_at(t18, -1.0, Morse::Min), 9);
  EXPECT_EQ(count_at(t18, 1.0, Morse::Max), 8);
  for (std::size_t k = 0; k < t18.size(); ++k)
    EXPECT_NEAR(t18[k].z, std::cos((17 - static_cast<double>(k)) * std::numbers::pi / 18), 1e-12);
}

TEST(ZCritical, AxisRestrictionOfJ9HasFourMinimaAtMinusOne) {
  const auto zc = z_critical_points(normalized_JC(9).restrict_y0());
  int at_minus_one = 0;
  for (const ZCritical& z : zc) at_minus_one += (z.type == Morse::Min && std::abs(z.value + 1.0) < 1e-8);
  EXPECT_EQ(at_minus_one, 4);
}

TEST(ZCritical, ConstantAndLinearHaveNone) {
  EXPECT_TRUE(z_critical_points(UnivarPoly({3.0})).empty());
  EXPECT_TRUE(z_critical_points(UnivarPoly({1.0, 2.0})).empty());
  const auto q = z_critical_points(UnivarPoly({1.0, 0.0, 1.0}));
  ASSERT_EQ(q.size(), 1u);
  EXPECT_NEAR(q[0].z, 0.0, 1e-14);
}

TEST(Surfaces, BuildShapes) {
  const SurfaceSpec p9 = build_surface(SurfaceFamily::P_C, 9);
  const UnivarPoly expected = (chebyshev_T(9) + 1.0) * 0.5;
  ASSERT_EQ(p9.z_part.degree(), 9);
  for (int k = 0; k <= 9; ++k) EXPECT_DOUBLE_EQ(p9.z_part.coeff(k), expected.coeff(k));
  EXPECT_EQ(p9.xy_part.degree(), 9);
  const SurfaceSpec c9 = build_surface(SurfaceFamily::Chmutov, 9);
  EXPECT_EQ(c9.xy_part.degree(), 9);
  // m even: g = (3 − J(z,0))/4.
  const SurfaceSpec q6 = build_surface(SurfaceFamily::Q_C, 6);
  const UnivarPoly j0 = q6.xy_part.restrict_y0();
  for (double z : {-0.7, 0.1, 1.3}) EXPECT_NEAR(q6.z_part(z), (3.0 - j0(z)) / 4.0, 1e-12);
  const SurfaceSpec q9 = build_surface(SurfaceFamily::Q_C, 9);
  for (double z : {-0.7, 0.1, 1.3}) EXPECT_NEAR(q9.z_part(z), (q9.xy_part.restrict_y0()(z) + 1.0) / 4.0, 1e-12);
}

TEST(Surfaces, IncompatibleFamilyAndDegree) {
  EXPECT_THROW(build_surface(SurfaceFamily::P_C, 4), DomainError);
  EXPECT_THROW(build_surface(SurfaceFamily::Qbar_C, 10), DomainError);
  EXPECT_THROW(build_surface(SurfaceFamily::Chmutov, 2), DomainError);
  EXPECT_THROW(parse_family("P_X"), DomainError);
  EXPECT_EQ(parse_family("Qbar_C"), SurfaceFamily::Qbar_C);
}

TEST(Surfaces, SeparabilityIsExact) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (SurfaceFamily f : {SurfaceFamily::P_C, SurfaceFamily::Q_C, SurfaceFamily::Chmutov}) {
    const SurfaceSpec s = build_surface(f, 9);
    const auto terms = assembled_terms(s);
    for (int k = 0; k < 100; ++k) {
      const Point3 p{u(rng), u(rng), u(rng)};
      const double direct = s.xy_part(p.x, p.y) + s.z_part(p.z);
      const double mag = s.xy_part.abs_eval(p.x, p.y) + s.z_part.abs_eval(p.z);
      EXPECT_LE(std::abs(evaluate_terms(terms, p) - direct), 1e-13 * (1.0 + mag));
      EXPECT_DOUBLE_EQ(s(p), direct);
    }
  }
}

TEST(Nodes, FormulaValues) {
  EXPECT_EQ(node_count_formula(SurfaceFamily::P_C, 12), 581);
  EXPECT_EQ(node_count_formula(SurfaceFamily::P_C, 3), 4);
  EXPECT_EQ(node_count_formula(SurfaceFamily::P_SigmaD, 9), 216);
  for (int m : {6, 9, 12, 15, 18}) EXPECT_EQ(node_count_formula(SurfaceFamily::Q_C, m), c_family_count(m));
  for (int m = 3; m <= 18; m += 3)
    EXPECT_EQ(node_count_formula(SurfaceFamily::P_C, m) - node_count_formula(SurfaceFamily::Chmutov, m), (m - 1) / 2);
}

TEST(Nodes, CFamiliesMatchTheCounts) {
  const int golden[] = {59, 220, 581, 1162, 2105};
  int idx = 0;
  for (int m : {6, 9, 12, 15, 18}) {
    for (SurfaceFamily f : {SurfaceFamily::P_C, SurfaceFamily::Q_C, SurfaceFamily::Qbar_C}) {
      const NodeEnumeration e = enumerate_nodes(build_surface(f, m));
      EXPECT_EQ(e.report.enumerated, golden[idx]) << to_string(f) << " " << m;
      EXPECT_EQ(e.report.formula, golden[idx]);
      EXPECT_TRUE(e.report.certified);
      EXPECT_EQ(e.report.per_class.at("vertex"), m * (m - 1) / 2 * (m / 2));
      EXPECT_EQ(e.report.per_class.at("triangle"), (1 + m * (m - 3) / 3) * ((m - 1) / 2));
    }
    ++idx;
  }
}

TEST(Nodes, DFamiliesMatchTheCounts) {
  for (int m = 3; m <= 12; ++m)
    for (SurfaceFamily f : {SurfaceFamily::P_SigmaD, SurfaceFamily::Chmutov}) {
      const NodeEnumeration e = enumerate_nodes(build_surface(f, m));
      EXPECT_EQ(e.report.enumerated, e.report.formula) << to_string(f) << " " << m;
    }
  EXPECT_EQ(enumerate_nodes(build_surface(SurfaceFamily::P_SigmaD, 9)).report.enumerated,
            enumerate_nodes(build_surface(SurfaceFamily::Chmutov, 9)).report.enumerated);
}

TEST(Nodes, CubicsAreCayleyAndChmutov) {
  EXPECT_EQ(enumerate_nodes(build_surface(SurfaceFamily::P_C, 3)).report.enumerated, 4);
  EXPECT_EQ(enumerate_nodes(build_surface(SurfaceFamily::Chmutov, 3)).report.enumerated, 3);
}

TEST(Nodes, ExcessOverTheDFamily) {
  for (int m : {3, 6, 9, 12}) {
    const int c = enumerate_nodes(build_surface(SurfaceFamily::P_C, m)).report.enumerated;
    const int d = enumerate_nodes(build_surface(SurfaceFamily::P_SigmaD, m)).report.enumerated;
    EXPECT_EQ(c - d, (m - 1) / 2) << m;
  }
}

TEST(Nodes, EveryNodeIsCertifiedConical) {
  for (int m : {6, 18}) {
    const SurfaceSpec s = build_surface(SurfaceFamily::P_C, m);
    const double scale = 1.0 + std::max(s.xy_part.coefficient_scale(), s.z_part.coefficient_scale());
    for (const Node& n : enumerate_nodes(s).nodes) {
      EXPECT_LT(n.grad_norm, 1e-8 * scale);
      // xy block above 1e-8·scale², z block above 1e-8·scale
      EXPECT_GT(std::abs(n.hessian3_det), 1e-16 * scale * scale * scale);
      EXPECT_EQ(n.sig_plus + n.sig_minus, 3);
      EXPECT_TRUE(n.sig_plus == 1 || n.sig_plus == 2);
      EXPECT_NEAR(s(n.location), 0.0, 1e-5);
    }
  }
}

TEST(Nodes, MirrorSurfacesHaveMirrorNodes) {
  for (int m : {6, 9}) {
    const auto q = enumerate_nodes(build_surface(SurfaceFamily::Q_C, m)).nodes;
    const auto qb = enumerate_nodes(build_surface(SurfaceFamily::Qbar_C, m)).nodes;
    ASSERT_EQ(q.size(), qb.size());
    std::vector<bool> used(qb.size(), false);
    for (const Node& a : q) {
      const Point3 target{a.location.x, -a.location.y, a.location.z};
      bool found = false;
      for (std::size_t i = 0; i < qb.size() && !found; ++i)
        if (!used[i] && distance(qb[i].location, target) < 1e-6) {
          used[i] = true;
          found = true;
        }
      EXPECT_TRUE(found) << m;
    }
  }
}

TEST(Nodes, SolitaryPointFailsCertification) {
  SurfaceSpec s;
  s.family = SurfaceFamily::P_C;
  s.m = 2;
  s.xy_part = BivarPoly::from_terms({{2, 0, 1}, {0, 2, 1}});
  s.z_part = UnivarPoly({0.0, 0.0, 1.0});
  const CriticalPoint origin = polish_critical(s.xy_part, {0.1, 0.1});
  EXPECT_THROW(enumerate_nodes(s, {origin}), CertificationError);
  s.z_part = UnivarPoly({0.0, 0.0, -1.0});
  EXPECT_EQ(enumerate_nodes(s, {origin}).nodes.size(), 1u);
}

TEST(Nodes, ReportsAreDeterministic) {
  const NodeEnumeration a = enumerate_nodes(build_surface(SurfaceFamily::Q_C, 6));
  const NodeEnumeration b = enumerate_nodes(build_surface(SurfaceFamily::Q_C, 6));
  EXPECT_EQ(node_csv(a.nodes), node_csv(b.nodes));
  EXPECT_EQ(report_json(a.report),
            "{\"family\":\"Q_C\",\"m\":6,\"enumerated\":59,\"formula\":59,\"per_class\":{\"triangle\":14,\"vertex\":45},"
            "\"certified\":true}");
  EXPECT_EQ(node_csv(a.nodes).substr(0, 54), "x,y,z,class,grad_norm,hessian3_det,sig_plus,sig_minus\n");
}

TEST(Hypersurface, ExcessAndLevelCounts) {
  const HypersurfaceCount h6 = hypersurface_node_count(6);
  EXPECT_EQ(h6.count_J, 15 * 15 + 7 * 7 + 3 * 3);
  EXPECT_EQ(h6.count_J, 283);
  EXPECT_EQ(h6.excess, 6);
  const HypersurfaceCount h9 = hypersurface_node_count(9);
  EXPECT_EQ(h9.excess, 18);
  for (const auto& lv : {h6.levels_F, h9.levels_F}) {
    ASSERT_EQ(lv.size(), 3u);
    EXPECT_NEAR(lv[0].level, -1.0, 1e-9);
    EXPECT_NEAR(lv[1].level, 0.0, 1e-9);
    EXPECT_NEAR(lv[2].level, 8.0, 1e-9);
  }
  EXPECT_THROW(hypersurface_node_count(7), DomainError);
}

TEST(Hypersurface, OracleConfirmsLevelCounts) {
  for (int m : {6, 9}) {
    const BivarPoly j = normalized_JC(m);
    const auto brute = level_counts(brute_force_critical(j, critical_window(m), 256));
    const auto spec = hypersurface_node_count(m).levels_J;
    ASSERT_EQ(brute.size(), spec.size());
    for (std::size_t i = 0; i < brute.size(); ++i) EXPECT_EQ(brute[i].count, spec[i].count);
  }
}
