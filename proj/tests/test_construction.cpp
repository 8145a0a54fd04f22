#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nodal/arrangement.hpp"
#include "nodal/construction.hpp"
#include "nodal/double_double.hpp"
#include "nodal/trig.hpp"

using namespace nodal;

namespace {

const std::vector<double> kJ9Printed{-1, 0, 27, -9, -54, 36, 21, -27, 9, -1};
const std::vector<double> kJ15Printed{-1,   0,    75,  -25,  -450, 300, 895, -945,
                                      -495, 1045, -297, -285, 260,  -90, 15,  -1};
const std::vector<double> kJ18Printed{-1,    0,    108,   -36,  -945,  630, 2919,  -3024, -3366, 5720,
                                      0,     -4212, 2457, 378,  -1035, 528, -135, 18,    -1};

double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace

TEST(DoubleDouble, RationalTrigAgreesWithLibm) {
  for (long den : {6L, 18L, 36L, 54L, 108L})
    for (long num = -2 * den; num <= 2 * den; num += 5) {
      EXPECT_NEAR(static_cast<double>(RationalTrig<DoubleDouble>::sin_pi(num, den)),
                  std::sin(std::numbers::pi * num / den), 1e-15);
      EXPECT_NEAR(static_cast<double>(RationalTrig<DoubleDouble>::cos_pi(num, den)),
                  std::cos(std::numbers::pi * num / den), 1e-15);
    }
  // sin²+cos² = 1 at double-double accuracy
  DoubleDouble s = RationalTrig<DoubleDouble>::sin_pi(7, 54), c = RationalTrig<DoubleDouble>::cos_pi(7, 54);
  DoubleDouble one = s * s + c * c - DoubleDouble(1.0);
  EXPECT_LT(std::abs(one.hi), 1e-30);
}

TEST(Chebyshev, LowDegrees) {
  const UnivarPoly t2 = chebyshev_T(2);
  ASSERT_EQ(t2.degree(), 2);
  EXPECT_EQ(t2.coeff(0), -1.0);
  EXPECT_EQ(t2.coeff(1), 0.0);
  EXPECT_EQ(t2.coeff(2), 2.0);
  EXPECT_EQ(chebyshev_T(0).degree(), 0);
  EXPECT_THROW(chebyshev_T(-1), DomainError);
}

TEST(Chebyshev, CosineIdentity) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  for (int m : {3, 9, 18}) {
    const UnivarPoly t = chebyshev_T(m);
    for (int k = 0; k < 100; ++k) {
      const double th = angle(rng);
      EXPECT_LT(std::abs(t(std::cos(th)) - std::cos(m * th)), 1e-9);
    }
  }
}

TEST(ExpandSigma, DegreeAndVertexZeros) {
  for (int m = 3; m <= 12; ++m) {
    const Arrangement s = sigma_d(m);
    const BivarPoly j = expand_sigma_poly(s);
    EXPECT_EQ(j.degree(), m);
    for (const Vertex& v : vertices(s).points)
      EXPECT_LT(std::abs(j(v.point)), 1e-9 * (1 + j.abs_eval(v.point.x, v.point.y))) << m;
  }
  for (int m : {3, 6, 9, 12, 15, 18}) {
    const Arrangement s = sigma_c(m);
    const BivarPoly j = expand_sigma_poly(s);
    EXPECT_EQ(j.degree(), m);
    for (const Vertex& v : vertices(s).points)
      EXPECT_LT(std::abs(j(v.point)), 1e-9 * (1 + j.abs_eval(v.point.x, v.point.y))) << m;
  }
  EXPECT_THROW(expand_sigma_poly(build_system(LineSystem::D, 8)), DomainError);
}

TEST(ExpandSigma, NineLineFactorsOfSigmaC) {
  // Factored form of the degree-9 Σ_C polynomial, written out line by line.
  auto s = [](int k) { return std::sin(k * std::numbers::pi / 18.0); };
  auto t = [](int k) { return std::tan(k * std::numbers::pi / 18.0); };
  auto factored = [&](double x, double y) {
    return (y - x * t(2) + s(7) + s(5)) * (y - x * t(4) + s(7) + s(5) + s(3) + s(1)) * (y - x * t(6) + s(7) + s(5)) *
           (y - x * t(8)) * (y - x * t(10) - s(9) - s(7)) * (y - x * t(12) - s(9) - s(7) - s(5) - s(3)) *
           (y - x * t(14) - s(9) - s(7) - s(5) - s(3)) * (y - x * t(16) - s(9) - s(7)) * y;
  };
  const BivarPoly j = expand_sigma_poly(sigma_c(9));
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> pt(-2.0, 3.0);
  for (int k = 0; k < 50; ++k) {
    const double x = pt(rng), y = pt(rng);
    EXPECT_NEAR(j(x, y), factored(x, y), 1e-10 * (1 + j.abs_eval(x, y)));
  }
}

TEST(Normalization, LambdaValues) {
  const NormalizationData n9 = normalization_data(9);
  EXPECT_NEAR(n9.lambda, 13.28, 0.01);
  EXPECT_LT(std::abs(n9.lambda - n9.lambda_barycenter) / n9.lambda, 1e-9);
  EXPECT_LT(n9.lambda_spread, 1e-8);
  // The odd-m closed form that holds is a^m/2 (the printed c^m/2 does not, see the acceptance suite).
  EXPECT_LT(rel_err(n9.lambda, std::pow(n9.a, 9) / 2), 1e-9);

  const NormalizationData n15 = normalization_data(15);
  EXPECT_NEAR(n15.lambda / 2.4e5, 1.0, 0.05);
  const NormalizationData n18 = normalization_data(18);
  EXPECT_NEAR(n18.lambda / 4.8e6, 1.0, 0.05);
  EXPECT_LT(std::abs(n18.lambda - std::pow(n18.a, 18) / 36.0) / n18.lambda, 1e-6);
  EXPECT_DOUBLE_EQ(n18.theta, std::numbers::pi / 108.0);
  EXPECT_EQ(n18.q, 6);
  EXPECT_GT(n18.lambda, 0);
  EXPECT_THROW(normalization_data(10), DomainError);
}

TEST(Normalization, CoordinateMapsAreInverse) {
  const NormalizationData nd = normalization_data(12);
  const Point2 p{0.3, -0.7};
  const Point2 back = sigma_to_jc(nd, jc_to_sigma(nd, p));
  EXPECT_NEAR(back.x, p.x, 1e-14);
  EXPECT_NEAR(back.y, p.y, 1e-14);
  const Point2 origin = jc_to_sigma(nd, {0, 0});
  EXPECT_DOUBLE_EQ(origin.x, nd.c);
  EXPECT_DOUBLE_EQ(origin.y, 0.25);
}

TEST(NormalizedJC, PrintedRestrictions) {
  const std::pair<int, const std::vector<double>*> cases[] = {{9, &kJ9Printed}, {15, &kJ15Printed}, {18, &kJ18Printed}};
  for (const auto& [m, printed] : cases) {
    const UnivarPoly r = normalized_JC(m).restrict_y0();
    ASSERT_EQ(r.degree(), m);
    for (int k = 0; k <= m; ++k) EXPECT_LT(rel_err(r.coeff(k), (*printed)[k]), 1e-6) << "m=" << m << " k=" << k;
  }
}

TEST(NormalizedJC, DegreeAndVerticesAtZero) {
  for (int m : {3, 6, 9, 12, 15, 18}) {
    const BivarPoly j = normalized_JC(m);
    EXPECT_EQ(j.degree(), m);
    const NormalizationData nd = normalization_data(m);
    EXPECT_NEAR(j(0.0, 0.0), -1.0, 1e-9);
    for (const Vertex& v : vertices(sigma_c(m)).points) {
      const Point2 p = sigma_to_jc(nd, v.point);
      EXPECT_LT(std::abs(j(p)), 1e-9 * (1 + j.abs_eval(p.x, p.y))) << m;
    }
  }
}

TEST(Jbar, MirrorIdentity) {
  for (int m : {3, 6, 9, 12, 15, 18}) {
    const BivarPoly j = normalized_JC(m), jb = build_Jbar(m);
    EXPECT_EQ(jb.degree(), m);
    const double scale = j.coefficient_scale();
    for (int i = 0; i <= m; ++i)
      for (int k = 0; k <= m - i; ++k) {
        const double want = (k % 2 ? -1.0 : 1.0) * j.coeff(i, k);
        EXPECT_LE(std::abs(jb.coeff(i, k) - want), 1e-6 * std::max(std::abs(want), 1e-3 * scale))
            << m << " " << i << " " << k;
      }
  }
  const UnivarPoly a = build_Jbar(9).restrict_y0(), b = normalized_JC(9).restrict_y0();
  for (int k = 0; k <= 9; ++k) EXPECT_NEAR(a.coeff(k), b.coeff(k), 1e-9);
}

TEST(NormalizedJC, NonIntegerCoefficientsOnlyAtOddYPowers) {
  for (int m : {6, 9, 12}) {
    const BivarPoly j = normalized_JC(m);
    bool odd_nonint = false;
    for (int i = 0; i <= m; ++i)
      for (int k = 0; k <= m - i; ++k) {
        const double c = j.coeff(i, k);
        const bool integer = std::abs(c - std::round(c)) < 1e-6;
        if (k % 2 == 0) EXPECT_TRUE(integer) << m << " x^" << i << " y^" << k << " = " << c;
        else if (!integer) odd_nonint = true;
      }
    EXPECT_TRUE(odd_nonint) << m;  // the property is not vacuous
  }
}

TEST(Folding, IntegerCoefficients) {
  for (int m : {3, 6, 9, 12, 15, 18}) {
    const BivarPoly f = folding_F(m);
    EXPECT_EQ(f.degree(), m);
    for (const Term& t : f.terms()) EXPECT_LT(std::abs(t.c - std::round(t.c)), 1e-6) << m << " " << t.i << "," << t.j;
  }
  for (int m : {4, 5, 7, 8, 10, 11}) {
    const BivarPoly f = folding_F(m);
    for (const Term& t : f.terms()) EXPECT_LT(std::abs(t.c - std::round(t.c)), 1e-6) << m;
  }
}

TEST(Folding, RoutesAgree) {
  for (int m : {3, 6, 9, 12, 15, 18}) {
    const BivarPoly a = folding_F(m, FoldingRoute::Identity), b = folding_F(m, FoldingRoute::Substitution);
    const double scale = a.coefficient_scale();
    for (int i = 0; i <= m; ++i)
      for (int k = 0; k <= m - i; ++k) EXPECT_LE(std::abs(a.coeff(i, k) - b.coeff(i, k)), 1e-6 * scale) << m;
  }
  EXPECT_THROW(folding_F(7, FoldingRoute::Identity), DomainError);
}

TEST(Folding, CubicSpotCheck) {
  const BivarPoly f = folding_F(3), j = normalized_JC(3), jb = build_Jbar(3);
  std::mt19937 rng(50);
  std::uniform_real_distribution<double> pt(-1.5, 1.5);
  for (int k = 0; k < 50; ++k) {
    const double x = pt(rng), y = pt(rng);
    EXPECT_NEAR(f(x, y), 6.0 - j(x, y) - jb(x, y), 1e-12 * (1 + f.abs_eval(x, y)));
  }
}

TEST(Precision, DoubleModeIsCoarserAtEighteen) {
  const BivarPoly comp = folding_F(18, Precision::Compensated);
  const BivarPoly dbl = folding_F(18, Precision::Double);
  double worst_comp = 0, worst_dbl = 0;
  for (const Term& t : comp.terms()) worst_comp = std::max(worst_comp, std::abs(t.c - std::round(t.c)));
  for (const Term& t : dbl.terms()) worst_dbl = std::max(worst_dbl, std::abs(t.c - std::round(t.c)));
  EXPECT_LT(worst_comp, 1e-6);
  EXPECT_LT(worst_comp, worst_dbl);
  EXPECT_EQ(parse_precision("double"), Precision::Double);
  EXPECT_THROW(parse_precision("quad"), DomainError);
}
