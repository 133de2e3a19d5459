#include <cmath>

#include <gtest/gtest.h>

#include "thinfilm/error.hpp"
#include "thinfilm/ode_lemmas.hpp"

using namespace thinfilm;

namespace {

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

OdeInstance k_instance(double beta, double lambda, double k0, TimeFunction f = TimeFunction::zero()) {
  OdeInstance inst;
  inst.beta = beta;
  inst.lambda = lambda;
  inst.k0 = k0;
  inst.f = f;
  return inst;
}

OdeInstance x_instance(double alpha, double beta, double lambda, double p, double x0) {
  OdeInstance inst;
  inst.alpha = alpha;
  inst.beta = beta;
  inst.lambda = lambda;
  inst.p = p;
  inst.k0 = x0;
  return inst;
}

}  // namespace

TEST(TimeFunction, Integrals) {
  EXPECT_NEAR(TimeFunction::exp(2.0, 0.5).integral(0.0, std::numeric_limits<double>::infinity()), 4.0, 1e-14);
  EXPECT_NEAR(TimeFunction::power(1.0, 2.0).integral(0.0, std::numeric_limits<double>::infinity()), 1.0, 1e-14);
  EXPECT_NEAR(TimeFunction::power(1.0, 2.0).integral(0.0, 1.0), 0.5, 1e-14);
  EXPECT_EQ(TimeFunction::zero().integral(0.0, 5.0), 0.0);
}

TEST(BoundY1, Examples) {
  const auto lin = k_instance(1.0, 1.0, 2.0);
  EXPECT_NEAR(bound_y1(lin, 2.0), 2.0 * std::exp(-1.0), 1e-12);
  const auto quad = k_instance(1.0, 2.0, 1.0);
  EXPECT_NEAR(bound_y1(quad, 2.0), 0.5, 1e-12);
  for (const auto& inst : {lin, quad, k_instance(0.7, 0.5, 3.0, TimeFunction::exp(1.0, 1.0))}) {
    EXPECT_NEAR(bound_y1(inst, 0.0), y1_m0(inst), 1e-12);
  }
  // exact solutions lie below
  EXPECT_LE(2.0 * std::exp(-2.0), bound_y1(lin, 2.0));
  EXPECT_LE(1.0 / 3.0, bound_y1(quad, 2.0));
}

TEST(BoundY1, ContinuousAcrossLambdaOne) {
  const auto f = TimeFunction::exp(0.5, 0.8);
  const double at_one = bound_y1(k_instance(1.3, 1.0, 2.0, f), 3.0);
  EXPECT_NEAR(bound_y1(k_instance(1.3, 1.0 + 1e-7, 2.0, f), 3.0), at_one, 1e-5);
  EXPECT_NEAR(bound_y1(k_instance(1.3, 1.0 - 1e-7, 2.0, f), 3.0), at_one, 1e-5);
}

TEST(LowerBoundLem01, Examples) {
  const auto lin = k_instance(1.0, 1.0, 1.0);
  EXPECT_EQ(lower_bound_lem01(lin, 2.0, 1.7, 2.0), 1.7);
  EXPECT_NEAR(lower_bound_lem01(lin, 0.0, 1.0, 1.0), std::exp(-1.0), 1e-14);
  const auto quad = k_instance(1.0, 2.0, 1.0);
  EXPECT_NEAR(lower_bound_lem01(quad, 1.0, 1.0, 4.0), 0.25, 1e-14);
  const std::vector<double> ts = linspace(1.0, 4.0, 301);
  const auto y = ode_oracle(quad, LemmaKind::Lem01, ts);
  EXPECT_NEAR(y.back(), 0.25, 1e-9);
  // lambda < 1 reaches zero and stays there
  const auto sub = k_instance(1.0, 0.5, 1.0);
  EXPECT_EQ(lower_bound_lem01(sub, 0.0, 1.0, 2.0), 0.0);
  EXPECT_EQ(lower_bound_lem01(sub, 0.0, 1.0, 10.0), 0.0);
}

TEST(BoundInequ, EquilibriumAndExample) {
  const auto eq_inst = x_instance(1.0, -1.0, 0.0, 2.0, 1.0);
  EXPECT_NEAR(inequ_equilibrium(eq_inst), 1.0, 1e-15);
  for (double t : {0.0, 1.0, 10.0}) EXPECT_NEAR(bound_inequ(eq_inst, t), 1.0, 1e-12);
  const auto inst = x_instance(1.0, -1.0, 0.0, 2.0, 2.0);
  const std::vector<double> ts = linspace(0.0, 10.0, 501);
  const auto x = ode_oracle(inst, LemmaKind::Inequ, ts);
  for (std::size_t i = 0; i < ts.size(); ++i) EXPECT_LE(x[i], bound_inequ(inst, ts[i]) * (1 + 1e-9));
  EXPECT_NEAR(bound_inequ(inst, 0.0), 2.0, 1e-12);
}

TEST(BoundInequ11, LimitAndDominance) {
  const auto inst = x_instance(0.5, -1.0, 0.3, 0.8, 5.0);
  const double limit = std::pow(0.5 * std::pow(5.0, 1 - 0.8) / 1.0, 1 / (1 - 0.3));
  EXPECT_NEAR(bound_inequ11(inst, 1e6), limit, 1e-10);
  EXPECT_NEAR(bound_inequ11(inst, 0.0), 5.0, 1e-12);
  const std::vector<double> ts = linspace(0.0, 20.0, 1001);
  const auto x = ode_oracle(inst, LemmaKind::Inequ11, ts);
  for (std::size_t i = 0; i < ts.size(); ++i) EXPECT_LE(x[i], bound_inequ11(inst, ts[i]) * (1 + 1e-9));
}

TEST(Oracle, LinearDecayIsAccurate) {
  const auto inst = k_instance(0.8, 1.0, 3.0);
  const std::vector<double> ts = linspace(0.0, 10.0, 101);
  const auto y = ode_oracle(inst, LemmaKind::Y1, ts);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    EXPECT_NEAR(y[i], 3.0 * std::exp(-0.8 * ts[i]), 1e-9 * 3.0 * std::exp(-0.8 * ts[i]));
  }
}

TEST(Oracle, ForcedInstancesRespectBounds) {
  const auto inst = k_instance(1.2, 0.6, 2.0, TimeFunction::exp(1.0, 1.0));
  const std::vector<double> ts = linspace(0.0, 20.0, 1000);
  const auto y = ode_oracle(inst, LemmaKind::Y1, ts);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    EXPECT_LE(y[i], bound_y1(inst, ts[i]) * (1 + 1e-6) + 1e-12);
    EXPECT_LE(y[i], y1_m0(inst));
  }
  const auto lo = ode_oracle(inst, LemmaKind::Lem01, ts);
  for (std::size_t i = 0; i < ts.size(); ++i) EXPECT_GE(lo[i] + 1e-12, lower_bound_lem01(inst, 0.0, 2.0, ts[i]));
}

TEST(Oracle, BlowUpIsReported) {
  const auto inst = x_instance(1.0, 1.0, 0.5, 3.0, 2.0);  // beta > 0: finite-time blow-up
  try {
    ode_oracle(inst, LemmaKind::Inequ, linspace(0.0, 10.0, 11));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BlowUp);
  }
}

TEST(RandomInstance, DeterministicPerSeedAndIndex) {
  for (LemmaKind k : {LemmaKind::Y1, LemmaKind::Lem01, LemmaKind::Inequ, LemmaKind::Inequ11}) {
    EXPECT_EQ(random_instance(k, 5, 3).describe(), random_instance(k, 5, 3).describe());
    EXPECT_NE(random_instance(k, 5, 3).describe(), random_instance(k, 5, 4).describe());
    EXPECT_NE(random_instance(k, 5, 3).describe(), random_instance(k, 6, 3).describe());
  }
  for (std::size_t i = 0; i < 200; ++i) {
    const auto y = random_instance(LemmaKind::Y1, 1, i);
    EXPECT_GE(y.beta, 0.1);
    EXPECT_LE(y.beta, 5.0);
    EXPECT_GE(y.lambda, 0.2);
    EXPECT_LE(y.lambda, 3.0);
    const auto x = random_instance(LemmaKind::Inequ11, 1, i);
    EXPECT_LT(x.lambda, x.p);
    EXPECT_LE(x.p, 1.0);
    EXPECT_LT(x.beta, 0.0);
    const auto xi = random_instance(LemmaKind::Inequ, 1, i);
    EXPECT_GT(xi.p, 1.0);
  }
}

TEST(Suites, SmallRunsPass) {
  for (LemmaKind k : {LemmaKind::Y1, LemmaKind::Lem01, LemmaKind::Inequ, LemmaKind::Inequ11}) {
    const auto r = run_lemma_suite(k, 42, 25);
    EXPECT_EQ(r.failures, 0u) << to_string(k) << ": " << r.worst_instance;
    EXPECT_EQ(r.bound_failures, 0u);
    EXPECT_EQ(r.instances, 25u);
  }
}

TEST(Suites, ParseNames) {
  EXPECT_EQ(parse_lemma("inequ1.1"), LemmaKind::Inequ11);
  EXPECT_EQ(parse_lemma(to_string(LemmaKind::Lem01)), LemmaKind::Lem01);
  EXPECT_THROW(parse_lemma("nope"), ConfigError);
}
