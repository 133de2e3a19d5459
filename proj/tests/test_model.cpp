#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "thinfilm/error.hpp"
#include "thinfilm/model.hpp"

using namespace thinfilm;

TEST(PhiEps, SpecialValues) {
  for (double a : {0.3, 1.0, 2.5}) EXPECT_EQ(phi_eps(0.0, a, 1e-3), 0.0);
  for (double s : {-3.0, 0.2, 7.0}) EXPECT_EQ(phi_eps(s, 1.0, 1e-3), s);
  EXPECT_DOUBLE_EQ(phi_eps(2.0, 3.0, 0.0), 8.0);
}

TEST(PhiEps, DissipativeAndOdd) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> s(-50, 50), a(0.1, 4.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = s(rng), al = a(rng);
    EXPECT_GE(phi_eps(x, al, 1e-8) * x, 0.0);
    EXPECT_DOUBLE_EQ(phi_eps(-x, al, 1e-8), -phi_eps(x, al, 1e-8));
  }
}

TEST(PhiEps, ApproachesPowerAsEpsShrinks) {
  for (double al : {1.5, 2.0, 3.0}) {
    const double s = 0.7;
    const double target = std::pow(std::abs(s), al - 1) * s;
    double prev = std::numeric_limits<double>::infinity();
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
      const double d = std::abs(phi_eps(s, al, eps) - target);
      EXPECT_LE(d, prev);
      prev = d;
    }
    EXPECT_LT(prev, 1e-6);
  }
  EXPECT_NEAR(phi_eps(0.7, 0.5, 1e-9), std::pow(0.7, -0.5) * 0.7, 1e-9);
}

TEST(Model, Validation) {
  EXPECT_THROW(FluidModel::power_law(0.0), ConfigError);
  EXPECT_THROW(FluidModel::power_law(1.0, -1.0), ConfigError);
  EXPECT_THROW(FluidModel::power_law(1.0, 1.0, 0.0), ConfigError);
  EXPECT_THROW(FluidModel::ellis(0.5), ConfigError);
  EXPECT_THROW(FluidModel::ellis(2.0, 1.0, 0.0), ConfigError);
  try {
    FluidModel::power_law(-1.0);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "model.alpha");
  }
}

TEST(Model, FluxExamples) {
  EXPECT_EQ(FluidModel::power_law(0.5).face_flux(2.0, 0.0), 0.0);
  EXPECT_EQ(FluidModel::ellis(2.0).face_flux(2.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(FluidModel::power_law(1.0).face_flux(2.0, 3.0), 24.0);
  EXPECT_NEAR(FluidModel::ellis(2.0, 1.0, 1.0, 1e-12).face_flux(1.0, 1.0), 2.0, 1e-12);
}

TEST(Model, NonPositiveHeightThrows) {
  const auto m = FluidModel::power_law(1.0);
  EXPECT_THROW(m.face_flux(0.0, 1.0), Error);
  try {
    m.mobility(-1.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonPositiveHeight);
  }
}

TEST(Model, FluxIsOddAndEllisDominatesNewtonian) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.1, 5.0), s(-20, 20);
  const auto pl = FluidModel::power_law(0.7, 1.3);
  const auto el = FluidModel::ellis(2.5, 0.8, 1.7);
  for (int i = 0; i < 1000; ++i) {
    const double h = u(rng), x = s(rng);
    EXPECT_DOUBLE_EQ(pl.face_flux(h, -x), -pl.face_flux(h, x));
    EXPECT_DOUBLE_EQ(el.face_flux(h, -x), -el.face_flux(h, x));
    EXPECT_GE(el.face_flux(h, x) * x, 0.8 * h * h * h * x * x * (1 - 1e-14));
  }
}

TEST(Model, EffectiveStiffness) {
  EXPECT_DOUBLE_EQ(FluidModel::power_law(1.0).effective_stiffness(2.0, 0.0), 8.0);
  EXPECT_DOUBLE_EQ(FluidModel::power_law(1.0).effective_stiffness(2.0, 123.0), 8.0);
  const double k = FluidModel::power_law(0.5, 1.0, 1e-8).effective_stiffness(2.0, 0.0);
  EXPECT_NEAR(k, std::pow(2.0, 2.5) * 1e4, 1e-6 * k);
  const double ell = FluidModel::ellis(2.0, 1.0, 1e-12).effective_stiffness(2.0, 1.0);
  EXPECT_NEAR(ell, 8.0, 1e-9);
}

TEST(Model, DissipationDensities) {
  const auto m = FluidModel::power_law(1.5);
  EXPECT_DOUBLE_EQ(m.dissipation_density(2.0, 0.5), m.face_flux(2.0, 0.5) * 0.5);
  EXPECT_NEAR(m.unregularized_dissipation_density(2.0, 0.5), std::pow(2.0, 3.5) * std::pow(0.5, 2.5), 1e-12);
}

TEST(Model, Describe) {
  EXPECT_NE(FluidModel::power_law(0.5).describe().find("power-law"), std::string::npos);
  EXPECT_NE(FluidModel::ellis(2.0).describe().find("ellis"), std::string::npos);
  EXPECT_TRUE(FluidModel::ellis(2.0).is_ellis());
  EXPECT_DOUBLE_EQ(FluidModel::ellis(2.0, 3.0).prefactor(), 3.0);
}
