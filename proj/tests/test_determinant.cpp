#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "kdv/determinant.hpp"
#include "kdv/errors.hpp"
#include "kdv/reconstruct.hpp"

namespace kdv {
namespace {

TEST(ResidueT, Examples) {
  EXPECT_DOUBLE_EQ(residue_T({1}, 0), 2.0);
  EXPECT_DOUBLE_EQ(residue_T({1, 0.5}, 0), 6.0);
  EXPECT_DOUBLE_EQ(residue_T({1, 0.5}, 1), -3.0);
}

TEST(ResidueT, AlternatingSign) {
  const std::vector<double> k{2, 1.5, 0.7, 0.4, 0.1};
  for (std::size_t n = 0; n < k.size(); ++n) {
    EXPECT_EQ(residue_T(k, n) > 0, n % 2 == 0) << n;
  }
}

TEST(GammaFromC, Examples) {
  EXPECT_NEAR(gamma_from_c({{1}, {1}}).gammas[0], std::sqrt(2.0), 1e-15);
  const GammaData g = gamma_from_c({{1, 0.5}, {1, -1}});
  EXPECT_NEAR(g.gammas[0], std::sqrt(6.0), 1e-15);
  EXPECT_NEAR(g.gammas[1], std::sqrt(3.0), 1e-15);
  EXPECT_THROW(gamma_from_c({{1}, {-1}}), NegativeSquare);
}

TEST(GammaFromC, ReferencedToTimeZero) {
  const SpectralData d{{0.9}, {1.5}};
  EXPECT_NEAR(gamma_from_c(evolve(d, 0.4)).gammas[0], gamma_from_c(d).gammas[0], 1e-14);
}

TEST(QDet, Examples) {
  const GammaData one{{1}, {std::sqrt(2.0)}};
  EXPECT_NEAR(q_det(one, 0.0, 0.0), -2.0, 1e-14);
  const double s = 1 / std::cosh(3.0);
  EXPECT_NEAR(q_det(one, 3.0, 0.0), -2 * s * s, 1e-15);
  EXPECT_NEAR(q_det(gamma_from_c({{1, 0.5}, {1, -1}}), 0.0, 0.0), -1.5, 1e-13);
  EXPECT_THROW(q_det(GammaData{}, 0.0, 0.0), InvalidN);
}

TEST(QDet, MatchesCouplingRoute) {
  const SpectralData d{{1, 0.5}, {1, -1}};
  const GammaData g = gamma_from_c(d);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ux(-10, 10), ut(-1, 1);
  for (int i = 0; i < 50; ++i) {
    const double x = ux(rng), t = ut(rng);
    EXPECT_NEAR(q_det(g, x, t), q_at<double>(d, x, t), 1e-8);
  }
}

TEST(QDet, SingleSolitonClosedForm) {
  for (double kappa : {0.3, 1.0, 1.8}) {
    for (double c : {0.05, 1.0, 20.0}) {
      const GammaData g = gamma_from_c({{kappa}, {c}});
      const double xi = 0.5 * std::log(g.gammas[0] * g.gammas[0] / (2 * kappa));
      EXPECT_NEAR(xi, 0.5 * std::log(c), 1e-14);
      for (double x : {-3.0, 0.0, 1.1}) {
        const double s = 1 / std::cosh(kappa * x - 4 * std::pow(kappa, 3) * 0.2 - xi);
        EXPECT_NEAR(q_det(g, x, 0.2), -2 * kappa * kappa * s * s, 1e-12);
      }
    }
  }
}

TEST(QDet, FarFieldNoOverflow) {
  const GammaData g = gamma_from_c({{1.5, 0.9, 0.2}, {3, -0.01, 40}});
  for (double x : {-500.0, -200.0, 200.0, 500.0}) {
    const double q = q_det(g, x, 0.0);
    EXPECT_TRUE(std::isfinite(q)) << x;
    EXPECT_LT(std::abs(q), 1e-12) << x;
    EXPECT_TRUE(std::isfinite(log_det(g, x, 0.0))) << x;
  }
}

TEST(QDet, GlobalSignFlipInvariant) {
  GammaData g = gamma_from_c({{1.2, 0.7, 0.25}, {0.5, -2, 3}});
  GammaData neg = g;
  for (double& v : neg.gammas) v = -v;
  for (double x : {-2.0, 0.3, 4.0}) EXPECT_NEAR(q_det(g, x, 0.1), q_det(neg, x, 0.1), 1e-14);
}

// Analytic second derivative against central differences of log det A.
TEST(LogDet, SecondDerivativeOracle) {
  for (const SpectralData& d :
       {SpectralData{{1}, {1}}, SpectralData{{1, 0.5}, {1, -1}},
        SpectralData{{1, 0.6, 0.3}, {1, -1, 1}}, SpectralData{{1.6, 1.1, 0.5, 0.2}, {0.3, -4, 2, -0.2}}}) {
    const GammaData g = gamma_from_c(d);
    for (long double x : {-4.0L, -0.7L, 0.0L, 1.3L, 5.0L}) {
      for (long double t : {0.0L, 0.5L}) {
        const long double h = 1e-5L;
        const long double fd =
            -2 * (log_det<long double>(g, x + h, t) - 2 * log_det<long double>(g, x, t) +
                  log_det<long double>(g, x - h, t)) /
            (h * h);
        EXPECT_NEAR(static_cast<double>(fd), q_det<double>(g, static_cast<double>(x),
                                                           static_cast<double>(t)),
                    1e-6);
      }
    }
  }
}

TEST(LeadingMinors, Positive) {
  const GammaData g = gamma_from_c({{1.6, 1.1, 0.5, 0.2}, {0.3, -4, 2, -0.2}});
  for (double x : {-30.0, -2.0, 0.0, 3.0, 30.0}) {
    for (double m : leading_minors(g, x, 0.2)) EXPECT_GT(m, 0.0);
  }
}

TEST(Compare, Examples) {
  EXPECT_LE(compare({{1}, {1}}, GridSpec{-10, 10, 201, {0, 1}}), 1e-9);
  EXPECT_LE(compare({{1, 0.5}, {1, -1}}, GridSpec{-10, 10, 201, {0, 1}}), 1e-8);
  EXPECT_THROW(compare({}, GridSpec{}), InvalidN);
}

}  // namespace
}  // namespace kdv
