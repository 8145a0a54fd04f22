#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "nodal/arrangement.hpp"

using namespace nodal;

namespace {

// Independent triangle census: a triple bounds a face iff no other line
// properly crosses any of its three edges.
int triangle_census_by_segments(const Arrangement& arr) {
  const auto n = static_cast<int>(arr.size());
  auto meet = [&](int i, int j, Point2& p) {
    AffineCoefficients a = arr[i].affine(), b = arr[j].affine();
    double det = a.a * b.b - b.a * a.b;
    if (std::abs(det) < 1e-13) return false;
    p = {(-a.c * b.b + b.c * a.b) / det, (-a.a * b.c + b.a * a.c) / det};
    return true;
  };
  int count = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Point2 p, q, r;
        if (!meet(i, j, p) || !meet(j, k, q) || !meet(i, k, r)) continue;
        bool empty = true;
        const Point2 edges[3][2] = {{p, q}, {q, r}, {r, p}};
        for (int l = 0; l < n && empty; ++l) {
          if (l == i || l == j || l == k) continue;
          for (const auto& e : edges) {
            double s0 = arr[l](e[0]), s1 = arr[l](e[1]);
            if (s0 * s1 < 0.0) { empty = false; break; }
          }
        }
        if (empty) ++count;
      }
  return count;
}

int binomial2(int m) { return m * (m - 1) / 2; }

}  // namespace

TEST(GammaTerm, SmallestDSystem) {
  EXPECT_NEAR(gamma_term(LineSystem::D, 1, 6), -std::sin(2.0 * std::numbers::pi / 6.0), 1e-15);
  EXPECT_NEAR(gamma_term(LineSystem::D, 1, 6), -0.8660254037844386, 1e-15);
}

TEST(GammaTerm, CVanishesAtMMinusOne) {
  for (int m : {3, 6, 9, 12, 15, 18}) EXPECT_EQ(gamma_term(LineSystem::C, m - 1, 2 * m), 0.0) << m;
}

TEST(GammaTerm, DFirstIndexAboveMFlipsSign) {
  for (int m = 3; m <= 12; ++m) {
    const double s = std::sin((m - 1) * std::numbers::pi / (2 * m));
    EXPECT_NEAR(gamma_term(LineSystem::D, m + 1, 2 * m), s, 1e-15);
    EXPECT_NEAR(gamma_term(LineSystem::D, 1, 2 * m), -s, 1e-15);
  }
}

TEST(GammaTerm, NinePrintedOffsets) {
  // Offsets of the nine-line factor list of J_{9Σ_C}.
  auto s = [](int k) { return std::sin(k * std::numbers::pi / 18.0); };
  EXPECT_NEAR(gamma_term(LineSystem::C, 2, 18), -(s(7) + s(5)), 1e-14);
  EXPECT_NEAR(gamma_term(LineSystem::C, 4, 18), -(s(7) + s(5) + s(3) + s(1)), 1e-14);
  EXPECT_NEAR(gamma_term(LineSystem::C, 6, 18), -(s(7) + s(5)), 1e-14);
  EXPECT_NEAR(gamma_term(LineSystem::C, 10, 18), s(9) + s(7), 1e-14);
  EXPECT_NEAR(gamma_term(LineSystem::C, 12, 18), s(9) + s(7) + s(5) + s(3), 1e-14);
  EXPECT_NEAR(gamma_term(LineSystem::C, 14, 18), s(9) + s(7) + s(5) + s(3), 1e-14);
  EXPECT_NEAR(gamma_term(LineSystem::C, 16, 18), s(9) + s(7), 1e-14);
}

TEST(GammaTerm, RejectsIndicesOutsideTheSystem) {
  EXPECT_THROW(gamma_term(LineSystem::D, 3, 6), DomainError);   // ν = m
  EXPECT_THROW(gamma_term(LineSystem::D, 0, 6), DomainError);
  EXPECT_THROW(gamma_term(LineSystem::D, 6, 6), DomainError);
  EXPECT_THROW(gamma_term(LineSystem::C, 1, 8), DomainError);   // m = 4 is not 3q
  try {
    gamma_term(LineSystem::C, 9, 18);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("9,18"), std::string::npos);
  }
}

TEST(BuildSystem, SmallestD) {
  Arrangement d6 = build_system(LineSystem::D, 6);
  EXPECT_EQ(d6.size(), 6u);  // axes + ν ∈ {1, 2, 4, 5}
  int nonvertical = 0;
  for (const LineForm& l : d6.lines()) {
    if (l.kind() != LineForm::Kind::NonVertical) continue;
    ++nonvertical;
    EXPECT_NEAR(l.tangent(), std::tan(l.label().nu * std::numbers::pi / 6.0), 1e-15);
    EXPECT_NE(l.label().nu, 3);
  }
  EXPECT_EQ(nonvertical, 4);
  EXPECT_THROW(build_system(LineSystem::C, 8), DomainError);
  EXPECT_THROW(build_system(LineSystem::D, 7), DomainError);
}

TEST(Subsystem, LineCountsAndAxes) {
  EXPECT_EQ(sigma_d(7).size(), 7u);
  EXPECT_EQ(sigma_d(9).size(), 9u);
  EXPECT_EQ(sigma_d(11).size(), 11u);
  EXPECT_EQ(sigma_d(12).size(), 12u);
  for (int m : {9, 12, 15, 18}) EXPECT_EQ(sigma_c(m).size(), static_cast<std::size_t>(m));
  EXPECT_EQ(subsystem(build_system(LineSystem::D, 6), Parity::Even).size(), 3u);

  for (int m = 3; m <= 12; ++m) {
    Arrangement s = sigma_d(m);
    EXPECT_EQ(s.kind(), ArrangementKind::SigmaD);
    bool has_x = false, has_y = false;
    for (const LineForm& l : s.lines()) {
      has_x |= l.kind() == LineForm::Kind::VerticalX;
      has_y |= l.kind() == LineForm::Kind::HorizontalY;
    }
    EXPECT_EQ(has_x, m % 2 == 1) << m;
    EXPECT_FALSE(has_y);
  }
  for (int m : {3, 6, 9, 12, 15, 18}) {
    Arrangement s = sigma_c(m);
    bool has_x = false, has_y = false;
    for (const LineForm& l : s.lines()) {
      has_x |= l.kind() == LineForm::Kind::VerticalX;
      has_y |= l.kind() == LineForm::Kind::HorizontalY;
    }
    EXPECT_EQ(has_x, m % 2 == 0) << m;
    EXPECT_TRUE(has_y);
  }
}

TEST(LineForm, EvaluatesToZeroOnItsPoints) {
  for (const LineForm& l : build_system(LineSystem::D, 14).lines()) {
    for (double x : {-3.0, 0.5, 2.0}) {
      Point2 p;
      if (l.kind() == LineForm::Kind::VerticalX) p = {l.offset(), x};
      else if (l.kind() == LineForm::Kind::HorizontalY) p = {x, l.offset()};
      else p = {x, x * l.tangent() + l.offset()};
      EXPECT_LT(std::abs(l(p)), 1e-12 * (1 + std::abs(p.x) + std::abs(p.y)));
    }
  }
}

TEST(Vertices, SimpleSigmaArrangements) {
  for (int m = 3; m <= 12; ++m) {
    VertexReport r = vertices(sigma_d(m));
    EXPECT_EQ(static_cast<int>(r.points.size()), binomial2(m)) << m;
    EXPECT_TRUE(r.simple) << m;
  }
  for (int m : {3, 6, 9, 12, 15, 18}) {
    VertexReport r = vertices(sigma_c(m));
    EXPECT_EQ(static_cast<int>(r.points.size()), binomial2(m)) << m;
    EXPECT_TRUE(r.simple) << m;
  }
}

TEST(Vertices, FullSystemIsNotSimple) {
  VertexReport r = vertices(build_system(LineSystem::D, 12));
  EXPECT_FALSE(r.simple);
  for (const Vertex& v : r.points) EXPECT_GE(v.incident, 2);
  EXPECT_THROW(triangular_faces(build_system(LineSystem::D, 12)), DegenerateError);
}

TEST(Vertices, CoincidentLinesAreRejected) {
  std::vector<LineForm> lines{LineForm::non_vertical(1.0, 0.5), LineForm::from_affine(-2.0, 2.0, -1.0),
                              LineForm::horizontal(0.0)};
  EXPECT_THROW(Arrangement(ArrangementKind::Custom, 0, lines), DegenerateError);
}

TEST(TriangularFaces, SigmaCPrintedCounts) {
  EXPECT_EQ(triangular_faces(sigma_c(9)).count, 19);
  EXPECT_EQ(triangular_faces(sigma_c(15)).count, 61);
  EXPECT_EQ(triangular_faces(sigma_c(18)).count, 91);
}

TEST(TriangularFaces, SigmaDNineAgainstSegmentOracle) {
  const int oracle = triangle_census_by_segments(sigma_d(9));
  EXPECT_EQ(oracle, 18);
  EXPECT_EQ(triangular_faces(sigma_d(9)).count, oracle);
}

TEST(TriangularFaces, ClosedFormsForAllDegrees) {
  for (int m = 4; m <= 12; ++m) {
    const int expected = (m % 3 == 0) ? (m * m - 3 * m) / 3 : (m * m - 3 * m + 2) / 3;
    const Arrangement s = sigma_d(m);
    EXPECT_EQ(triangle_census_by_segments(s), expected) << m;
    EXPECT_EQ(triangular_faces(s).count, expected) << m;
  }
  for (int m : {3, 6, 9, 12, 15, 18}) {
    const int c = triangular_faces(sigma_c(m)).count;
    EXPECT_EQ(c, 1 + m * (m - 3) / 3) << m;
    if (m > 3) {
      EXPECT_EQ(c, triangular_faces(sigma_d(m)).count + 1) << m;
    }
  }
}

TEST(Symmetry, SigmaCIsInvariantUnderThirdTurn) {
  for (int q = 1; q <= 6; ++q) {
    const int m = 3 * q;
    const Arrangement s = sigma_c(m);
    const Point2 center = {std::sqrt(3.0) / 4.0 + std::sin((q - 1) * std::numbers::pi / (6 * q)) /
                                                      (2 * std::sin(std::numbers::pi / (6 * q))),
                           0.25};
    EXPECT_TRUE(same_line_set(s, rotated(s, center, 2 * std::numbers::pi / 3), 1e-9)) << m;
    EXPECT_FALSE(same_line_set(s, rotated(s, center, std::numbers::pi / 3), 1e-9)) << m;
  }
}

TEST(Symmetry, SigmaDHasThreefoldSymmetryExactlyWhenThreeDividesM) {
  for (int m = 3; m <= 12; ++m) {
    const Arrangement s = sigma_d(m);
    Point2 center;
    const VertexReport v = vertices(s);
    for (const Vertex& p : v.points) { center.x += p.point.x; center.y += p.point.y; }
    center.x /= static_cast<double>(v.points.size());
    center.y /= static_cast<double>(v.points.size());
    EXPECT_EQ(same_line_set(s, rotated(s, center, 2 * std::numbers::pi / 3), 1e-9), m % 3 == 0) << m;
  }
}

TEST(TriangularFaces, CubicHasOneTriangle) {
  // Three lines in general position bound exactly one triangle; the closed form
  // m²/3 − m gives 0 here and only holds from m = 6 on.
  EXPECT_EQ(triangular_faces(sigma_d(3)).count, 1);
  EXPECT_EQ(triangular_faces(sigma_c(3)).count, 1);
}

TEST(Export, JsonAndCsv) {
  const Arrangement s = sigma_c(9);
  const std::string json = arrangement_json(s);
  EXPECT_NE(json.find("\"system\":\"Sigma_C\""), std::string::npos);
  EXPECT_NE(json.find("\"d\":18"), std::string::npos);
  std::ostringstream os;
  write_vertex_csv(os, vertices(s));
  std::string line;
  std::istringstream is(os.str());
  int rows = 0;
  std::getline(is, line);
  EXPECT_EQ(line, "x,y,count");
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 36);
}
