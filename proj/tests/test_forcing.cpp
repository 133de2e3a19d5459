#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "thinfilm/error.hpp"
#include "thinfilm/forcing.hpp"
#include "thinfilm/grid.hpp"

using namespace thinfilm;
using std::numbers::pi;

namespace {
const CosineProfile kSpace{1.0, 0.01, 10.0};
Force exp_force(double kappa = 1.0) { return Force::time_dependent(ExpDecay{kappa}, kSpace, 200.0); }
}  // namespace

TEST(CosineProfile, Validation) {
  EXPECT_NO_THROW((CosineProfile{1.0, 0.5, 10.0}.validate(200.0, "u0")));
  EXPECT_THROW((CosineProfile{1.0, 0.5, 7.0}.validate(200.0, "u0")), ConfigError);
  EXPECT_NO_THROW((CosineProfile{1.0, 0.0, 7.0}.validate(200.0, "u0")));
  EXPECT_THROW((CosineProfile{0.0, 0.0, 10.0}.validate(200.0, "u0")), ConfigError);
  try {
    CosineProfile{1.0, 0.5, -1.0}.validate(100.0, "force");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "force.m");
  }
}

TEST(CosineProfile, SlopeNormAndAmplitudeCondition) {
  const CosineProfile u0{3.0, 0.01, 10.0};
  EXPECT_NEAR(u0.slope_l2(200.0), 0.031416, 1e-6);
  EXPECT_TRUE(u0.amplitude_condition(200.0));
  EXPECT_FALSE((CosineProfile{3.0, 1.0, 10.0}.amplitude_condition(200.0)));
  const Grid g(200.0, 800);
  const Field d = g.sample([&](double x) { return u0.derivative(x); });
  EXPECT_NEAR(discrete_l2(d, g.dx()), u0.slope_l2(200.0), 1e-6);
}

TEST(Force, Eval) {
  EXPECT_EQ(Force::constant(1.0, 100.0).eval(3.0, 17.0), 1.0);
  EXPECT_DOUBLE_EQ(exp_force().eval(0.0, 0.0), 1.01);
  EXPECT_NEAR(exp_force().eval(std::log(2.0), 50.0), 0.5 * (1.0 - 0.01), 1e-15);
}

TEST(Force, GradientNorm) {
  EXPECT_EQ(Force::constant(2.0, 100.0).grad_l2_norm(1.0), 0.0);
  EXPECT_NEAR(exp_force().grad_l2_norm(0.0), 0.031416, 1e-6);
  EXPECT_NEAR(exp_force().grad_l2_norm(std::log(10.0)), exp_force().grad_l2_norm(0.0) / 10, 1e-15);
}

TEST(Force, GradientNormMatchesGridSampleAtSecondOrder) {
  const Force f = exp_force();
  double prev = 0.0;
  for (std::size_t n : {100u, 200u, 400u}) {
    const Grid g(200.0, n);
    Field fx(n - 1);
    for (std::size_t k = 1; k < n; ++k) fx[k - 1] = (f.eval(0.0, g.x(k)) - f.eval(0.0, g.x(k - 1))) / g.dx();
    const double err = std::abs(discrete_l2(fx, g.dx()) - f.grad_l2_norm(0.0));
    if (prev > 0.0) EXPECT_GT(prev / err, 3.0);
    prev = err;
  }
}

TEST(Force, MassRateAndCumulativeMass) {
  EXPECT_DOUBLE_EQ(Force::constant(1.0, 100.0).mass_rate(0.3), 100.0);
  EXPECT_NEAR(exp_force().mass_rate(0.0), 200.0, 1e-10);
  const Force pw = Force::time_dependent(PowerDecay{2.0}, CosineProfile{1.0, 0.0, 10.0}, 200.0);
  EXPECT_NEAR(pw.mass_rate(1.0), 50.0, 1e-12);
  EXPECT_EQ(exp_force().cumulative_mass(0.0), 0.0);
  EXPECT_EQ(pw.cumulative_mass(0.0), 0.0);
  EXPECT_NEAR(exp_force().cumulative_mass(60.0), 200.0, 1e-9);
  EXPECT_DOUBLE_EQ(Force::constant(1.0, 100.0).cumulative_mass(0.5), 50.0);
}

TEST(Force, CumulativeMassDerivativeIsMassRate) {
  const Force forces[] = {exp_force(0.7), Force::time_dependent(PowerDecay{1.5}, kSpace, 200.0),
                          Force::time_independent(kSpace, 200.0), Force::constant(0.3, 200.0),
                          Force::time_dependent(Tabulated({0.0, 1.0, 3.0}, {2.0, 0.5, 1.0}), kSpace, 200.0)};
  for (const Force& f : forces) {
    for (double t : {0.25, 1.7, 4.0}) {
      const double h = 1e-5;
      const double fd = (f.cumulative_mass(t + h) - f.cumulative_mass(t - h)) / (2 * h);
      EXPECT_NEAR(fd, f.mass_rate(t), 1e-8 * std::max(1.0, std::abs(f.mass_rate(t)))) << f.describe() << " t=" << t;
    }
  }
}

TEST(Force, CumulativeGradNorm) {
  EXPECT_EQ(exp_force().cumulative_grad_norm(2.0, 2.0), 0.0);
  EXPECT_NEAR(exp_force().cumulative_grad_norm(0.0, std::numeric_limits<double>::infinity()), 0.031416, 1e-6);
  const Force st = Force::time_independent(kSpace, 200.0);
  EXPECT_NEAR(st.cumulative_grad_norm(0.0, 5.0), 5.0 * st.grad_l2_norm(0.0), 1e-12);
  EXPECT_TRUE(std::isinf(st.cumulative_grad_norm(0.0, std::numeric_limits<double>::infinity())));
  const Force pw = Force::time_dependent(PowerDecay{2.0}, kSpace, 200.0);
  EXPECT_TRUE(std::isfinite(pw.cumulative_grad_norm(0.0, std::numeric_limits<double>::infinity())));
  EXPECT_NEAR(exp_force(2.0).cumulative_grad_norm_sq(0.0, 1.0),
              std::pow(exp_force().grad_l2_norm(0.0), 2) * (1 - std::exp(-4.0)) / 4, 1e-15);
}

TEST(Force, Validation) {
  EXPECT_THROW(Force::time_dependent(ExpDecay{0.0}, kSpace, 200.0), ConfigError);
  EXPECT_THROW(Force::time_dependent(PowerDecay{1.0}, kSpace, 200.0), ConfigError);
  try {
    Force::constant(-1.0, 100.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DryOut);
  }
}

TEST(Tabulated, InterpolatesAndIntegratesExactly) {
  const Tabulated g({0.0, 1.0, 3.0}, {2.0, 0.0, 1.0});
  EXPECT_DOUBLE_EQ(g(0.5), 1.0);
  EXPECT_DOUBLE_EQ(g(2.0), 0.5);
  EXPECT_DOUBLE_EQ(g(10.0), 1.0);
  EXPECT_NEAR(g.integral(0.0, 3.0), 1.0 + 1.0, 1e-14);
  EXPECT_NEAR(g.integral(0.5, 2.0), 0.25 + 0.25, 1e-14);
  EXPECT_NEAR(g.integral(3.0, 5.0), 2.0, 1e-14);
  // int_0^1 (2 - 2t)^2 = 4/3
  EXPECT_NEAR(g.integral_sq(0.0, 1.0), 4.0 / 3.0, 1e-14);
  EXPECT_THROW(Tabulated({0.5, 1.0}, {1.0, 1.0}), ConfigError);
  EXPECT_THROW(Tabulated({0.0, 1.0}, {1.0, -1.0}), ConfigError);
  EXPECT_THROW(Tabulated({0.0, 0.0}, {1.0, 1.0}), ConfigError);
  EXPECT_TRUE(Force::time_dependent(g, kSpace, 200.0).numeric());
}

TEST(Hypotheses, Example81DataPasses) {
  const auto v = hypothesis_check(exp_force(), CosineProfile{3.0, 0.01, 10.0}, 200.0);
  EXPECT_NEAR(v.u0_slope, 0.031416, 1e-6);
  EXPECT_NEAR(v.u0_slope_limit, 0.21213, 1e-5);
  EXPECT_NEAR(v.force_ratio, 1.5708e-4, 1e-8);
  EXPECT_NEAR(v.force_ratio_limit, 3.5355e-4, 1e-8);
  EXPECT_TRUE(v.all());
}

TEST(Hypotheses, FlatDataTriviallyPasses) {
  const auto v = hypothesis_check(Force::time_dependent(ExpDecay{1.0}, CosineProfile{1.0, 0.0, 10.0}, 200.0),
                                  CosineProfile{3.0, 0.0, 10.0}, 200.0);
  EXPECT_TRUE(v.all());
  EXPECT_TRUE(v.u0_amplitude && v.force_amplitude);
}
