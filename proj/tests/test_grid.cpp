#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "thinfilm/error.hpp"
#include "thinfilm/grid.hpp"

using namespace thinfilm;
using std::numbers::pi;

TEST(Grid, GeometryIsExact) {
  const Grid g(200.0, 400);
  EXPECT_DOUBLE_EQ(g.dx() * 400, 200.0);
  EXPECT_DOUBLE_EQ(g.x(0), g.dx() / 2);
  EXPECT_NEAR(g.x(399), 200.0 - g.dx() / 2, 1e-12);
}

TEST(Grid, RejectsTooFewCellsAndBadLength) {
  EXPECT_THROW(Grid(1.0, 7), ConfigError);
  EXPECT_THROW(Grid(0.0, 64), ConfigError);
  EXPECT_THROW(Grid(-1.0, 64), ConfigError);
}

TEST(ExtendEven, MirrorsTwoCellsPerSide) {
  const Field u{1.0, 2.0, 3.0};
  EXPECT_EQ(extend_even(u), (Field{2.0, 1.0, 1.0, 2.0, 3.0, 3.0, 2.0}));
}

TEST(ExtendEven, ConstantStaysConstantAndInteriorIsRestored) {
  const Field u(10, 4.5);
  for (double v : extend_even(u)) EXPECT_EQ(v, 4.5);
  const Field w{0.3, 1.7, -2.0, 5.5, 0.1, 9.0, 2.2, 3.3};
  const Field ext = extend_even(w);
  EXPECT_EQ(Field(ext.begin() + 2, ext.end() - 2), w);
}

TEST(ExtendEven, BoundaryGradientVanishesForCosine) {
  const Grid g(1.0, 64);
  const Field u = g.sample([](double x) { return std::cos(pi * x); });
  const Field ext = extend_even(u);
  EXPECT_EQ(ext[2] - ext[1], 0.0);
  EXPECT_EQ(ext[ext.size() - 2] - ext[ext.size() - 3], 0.0);
}

TEST(FaceThirdDerivative, ConstantGivesZero) {
  const Field u(16, 2.0);
  for (double v : face_third_derivative(extend_even(u), 0.1)) EXPECT_EQ(v, 0.0);
}

TEST(FaceThirdDerivative, BoundaryFacesExactlyZeroForArbitraryData) {
  const Field u{0.3, 1.7, -2.0, 5.5, 0.1, 9.0, 2.2, 3.3, 8.8, -1.0};
  const Field d3 = face_third_derivative(extend_even(u), 0.37);
  ASSERT_EQ(d3.size(), u.size() + 1);
  EXPECT_EQ(d3.front(), 0.0);
  EXPECT_EQ(d3.back(), 0.0);
}

TEST(FaceThirdDerivative, CubicGivesSixInTheInterior) {
  for (std::size_t n : {32u, 64u, 128u}) {
    const Grid g(1.0, n);
    const Field d3 = face_third_derivative(extend_even(g.sample([](double x) { return x * x * x; })), g.dx());
    // faces at least two cells from the boundary see no reflected values
    for (std::size_t k = 2; k + 2 <= n; ++k) EXPECT_NEAR(d3[k], 6.0, 1e-6) << "face " << k;
  }
}

TEST(FaceThirdDerivative, SecondOrderOnSmoothInteriorData) {
  // u = cos(2 pi x): u''' = 8 pi^3 sin(2 pi x)
  double prev = 0.0;
  for (std::size_t n : {64u, 128u, 256u}) {
    const Grid g(1.0, n);
    const Field d3 =
        face_third_derivative(extend_even(g.sample([](double x) { return std::cos(2 * pi * x); })), g.dx());
    double err = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
      const double xf = static_cast<double>(k) * g.dx();
      err = std::max(err, std::abs(d3[k] - 8 * pi * pi * pi * std::sin(2 * pi * xf)));
    }
    if (prev > 0.0) EXPECT_NEAR(prev / err, 4.0, 0.3);
    prev = err;
  }
}

TEST(DiscreteNorms, SimpleValues) {
  EXPECT_EQ(discrete_l2(Field(50, 0.0), 0.5), 0.0);
  EXPECT_NEAR(discrete_l2(Field(400, 1.0), 0.5), std::sqrt(200.0), 1e-12);
}

TEST(DiscreteNorms, CosineH1ErrorMatchesClosedForm) {
  const Grid g(200.0, 400);
  const Field u = g.sample([](double x) { return 3.0 + 0.01 * std::cos(pi * x / 10); });
  const double exact = std::sqrt(1e-4 * 100 + std::pow(0.01 * pi / 10, 2) * 100);
  EXPECT_NEAR(exact, 0.10482, 5e-5);
  EXPECT_NEAR(discrete_h1_error(u, 3.0, g.dx()), exact, 1e-3 * exact);
}

TEST(DiscreteNorms, L2OfCosineConvergesAtSecondOrder) {
  // midpoint rule on a whole number of periods is exact, so test a shifted
  // interval where it is not: cos(pi x / 10)^2 on (0, 15)
  const double exact = std::sqrt(7.5);
  double prev = 0.0;
  for (std::size_t n : {30u, 60u, 120u, 240u}) {
    const Grid g(15.0, n);
    const double err = std::abs(discrete_l2(g.sample([](double x) { return std::cos(pi * x / 10); }), g.dx()) - exact);
    if (prev > 0.0 && err > 1e-13) EXPECT_GT(prev / err, 3.5);
    prev = err;
  }
}
