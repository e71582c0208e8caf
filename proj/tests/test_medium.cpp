#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "wgabc/medium.hpp"

using namespace wgabc;

namespace {

// Closed-form depth means of the two analytic profiles on [0, L].
double duct_mean_exact(double L) {
  // 1 - (0.5/L) int_0^L exp(-(y - L/2)^2 / 3) dy
  const double r = std::sqrt(3.0);
  return 1.0 - 0.5 / L * r * std::sqrt(std::numbers::pi) * std::erf(L / (2.0 * r));
}

double erf_step_mean_exact(double L) {
  // c = 4 - (3/2) erfc(-(y - L/5)); int erfc(z) dz = z erfc(z) - exp(-z^2)/sqrt(pi)
  auto F = [](double z) { return z * std::erfc(z) - std::exp(-z * z) / std::sqrt(std::numbers::pi); };
  const double a = -(0.0 - L / 5.0), b = -(L - L / 5.0);
  const double int_erfc_neg = F(a) - F(b);  // int_0^L erfc(-(y - L/5)) dy, substituting z = -(y - L/5)
  return 4.0 - 1.5 * int_erfc_neg / L;
}

}  // namespace

TEST(Medium, ConstantHasNoDerivatives) {
  const auto m = SoundSpeedModel::constant(1.0);
  const SpeedSample s = m.eval(3.7, 8.1);
  EXPECT_EQ(s.c, 1.0);
  EXPECT_EQ(s.c_y, 0.0);
  EXPECT_EQ(s.c_yy, 0.0);
  EXPECT_EQ(m.c_max(), 1.0);
  EXPECT_THROW(SoundSpeedModel::constant(0.0), std::invalid_argument);
}

TEST(Medium, GaussianDuctAxis) {
  const auto m = SoundSpeedModel::gaussian_duct(10.0);
  const SpeedSample s = m.eval(0.0, 5.0);
  EXPECT_DOUBLE_EQ(s.c, 0.5);
  EXPECT_EQ(s.c_y, 0.0);
  EXPECT_NEAR(s.c_yy, 1.0 / 3.0, 1e-15);
  EXPECT_EQ(m.c_max(), 1.0);
}

TEST(Medium, GaussianDuctMirrorSymmetry) {
  const auto m = SoundSpeedModel::gaussian_duct(10.0);
  // dyadic depths keep 10 - y exact, so the mirror must hold bit for bit
  for (int k = 0; k <= 80; ++k) {
    const double y = 0.125 * k;
    const SpeedSample a = m.eval(1.0, y), b = m.eval(1.0, 10.0 - y);
    EXPECT_EQ(a.c, b.c) << y;
    EXPECT_EQ(a.c_y, -b.c_y) << y;
    EXPECT_EQ(a.c_yy, b.c_yy) << y;
  }
}

TEST(Medium, ErfStepLimits) {
  const auto m = SoundSpeedModel::erf_step(10.0);
  EXPECT_NEAR(m.speed(0.0, 40.0), 1.0, 1e-14);
  EXPECT_NEAR(m.speed(0.0, -40.0), 4.0, 1e-14);
  EXPECT_NEAR(m.speed(0.0, 2.0), 2.5, 1e-15);  // half way down at the centre
  EXPECT_EQ(m.c_max(), 4.0);
}

TEST(Medium, RangeGaussianDependsOnXOnly) {
  const auto m = SoundSpeedModel::range_gaussian(10.0);
  EXPECT_DOUBLE_EQ(m.speed(7.0, 1.0), 0.5);
  EXPECT_EQ(m.speed(7.0, 1.0), m.speed(7.0, 9.0));
  const SpeedSample s = m.eval(3.0, 4.0);
  EXPECT_EQ(s.c_y, 0.0);
  EXPECT_EQ(s.c_yy, 0.0);
}

TEST(Medium, AnalyticDerivativesMatchFiniteDifferences) {
  const double d = 1e-4;
  for (const auto& m : {SoundSpeedModel::gaussian_duct(10.0), SoundSpeedModel::erf_step(10.0)}) {
    for (double y = 0.25; y < 10.0; y += 0.5) {
      const SpeedSample s = m.eval(2.0, y);
      const double cp = m.speed(2.0, y + d), cm = m.speed(2.0, y - d);
      EXPECT_NEAR(s.c_y, (cp - cm) / (2 * d), 1e-7) << m.kind_name() << " y=" << y;
      EXPECT_NEAR(s.c_yy, (cp - 2 * s.c + cm) / (d * d), 1e-5) << m.kind_name() << " y=" << y;
    }
  }
}

TEST(Medium, SpeedsArePositiveOnTheDomain) {
  for (const auto& m : {SoundSpeedModel::gaussian_duct(10.0), SoundSpeedModel::erf_step(10.0),
                        SoundSpeedModel::range_gaussian(10.0)})
    for (double x = -30.0; x <= 10.0; x += 0.5)
      for (double y = 0.0; y <= 10.0; y += 0.25) {
        const double c = m.speed(x, y);
        EXPECT_GT(c, 0.0);
        EXPECT_LE(c, m.c_max());
      }
}

TEST(Medium, DepthAverageOfConstant) {
  EXPECT_NEAR(depth_average(SoundSpeedModel::constant(2.0), 0.0, 10.0), 2.0, 1e-15);
}

TEST(Medium, DepthAverageMatchesClosedForm) {
  const double duct = depth_average(SoundSpeedModel::gaussian_duct(10.0), 0.0, 10.0);
  const double step = depth_average(SoundSpeedModel::erf_step(10.0), 0.0, 10.0);
  EXPECT_NEAR(duct / duct_mean_exact(10.0) - 1.0, 0.0, 1e-6);
  EXPECT_NEAR(step / erf_step_mean_exact(10.0) - 1.0, 0.0, 1e-6);
  EXPECT_NEAR(duct, 0.8465, 5e-5);
  EXPECT_NEAR(step, 1.600, 5e-4);
}

TEST(Medium, TabulatedReadsHeaderAndValues) {
  std::istringstream in("2 4 0 0 1 0.5\n1 1 1 1\n2 2 2 2\n");
  const auto m = read_tabulated(in);
  EXPECT_EQ(m.kind_name(), "tabulated");
  EXPECT_DOUBLE_EQ(m.speed(0.5, 1.0), 1.5);
  EXPECT_EQ(m.c_max(), 2.0);
  EXPECT_THROW(m.eval(1.5, 0.0), std::domain_error);
  EXPECT_THROW(m.eval(0.0, -0.1), std::domain_error);
}

TEST(Medium, TabulatedRejectsBadInput) {
  std::istringstream short_in("2 4 0 0 1 1\n1 2 3\n");
  EXPECT_THROW(read_tabulated(short_in), std::invalid_argument);
  std::istringstream neg("2 4 0 0 1 1\n1 1 1 1 1 -1 1 1\n");
  EXPECT_THROW(read_tabulated(neg), std::invalid_argument);
  std::istringstream bad_header("two 4 0 0 1 1\n");
  EXPECT_THROW(read_tabulated(bad_header), std::invalid_argument);
}

TEST(Medium, TabulatedDerivativesConvergeAtSecondOrder) {
  const auto exact = SoundSpeedModel::gaussian_duct(10.0);
  auto max_err = [&](double dy) {
    const auto ny = static_cast<std::size_t>(std::lround(10.0 / dy)) + 1;
    const auto t = sample_to_table(exact, 2, ny, 0.0, 0.0, 1.0, dy);
    double e1 = 0.0, e2 = 0.0;
    for (std::size_t k = 0; k < ny; ++k) {
      const double y = dy * static_cast<double>(k);
      const SpeedSample a = t.eval(0.0, y), b = exact.eval(0.0, y);
      e1 = std::max(e1, std::abs(a.c_y - b.c_y));
      e2 = std::max(e2, std::abs(a.c_yy - b.c_yy));
    }
    return std::pair{e1, e2};
  };
  const auto [a1, a2] = max_err(0.1);
  const auto [b1, b2] = max_err(0.05);
  EXPECT_GT(a1 / b1, 3.0);
  EXPECT_LT(a1 / b1, 5.0);
  EXPECT_GT(a2 / b2, 3.0);
  EXPECT_LT(a2 / b2, 5.0);
}
