#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "unisearch/unisearch.hpp"

using namespace unisearch;

TEST(BruteForce, SymmetricGridHitsZero) {
  const auto m = oracle::brute_force_minimum([](double x) { return x * x; }, Interval(-1, 1),
                                              {10001, false});
  EXPECT_EQ(m.x, 0.0);
}

TEST(BruteForce, KnownMinimizers) {
  const auto c = oracle::brute_force_minimum([](double x) { return std::cos(x); }, Interval(2, 4));
  EXPECT_NEAR(c.x, std::numbers::pi, 2e-6);
  const auto q = oracle::brute_force_minimum([](double x) { return (x - 1.1) * (x - 1.1); },
                                              Interval(0, 2));
  EXPECT_NEAR(q.x, 1.1, 2e-6);
}

TEST(BruteForce, TiesGoToLowestAbscissa) {
  const auto m = oracle::brute_force_minimum([](double) { return 3.0; }, Interval(-2, 5), {101});
  EXPECT_EQ(m.x, -2.0);
}

TEST(BruteForce, EndpointInsetAvoidsSingularity) {
  auto f = [](double x) { return -(1 / x - std::exp(-x)); };
  EXPECT_THROW(oracle::brute_force_minimum(f, Interval(0, 0.5), {1001, false}), NonFiniteValue);
  const auto m = oracle::brute_force_minimum(f, Interval(0, 0.5), {1001, true});
  EXPECT_NEAR(m.x, 0.5e-9, 1e-15);
}

TEST(BruteForce, DoublingGridMovesAtMostOneStep) {
  auto f = [](double x) { return std::exp(x) + 1 / x; };
  const Interval iv(0.5, 1);
  for (std::size_t points : {101u, 1001u, 10001u}) {
    const oracle::GridSpec coarse{points};
    const oracle::GridSpec fine{2 * points - 1};
    const double step = oracle::grid_resolution(iv, coarse);
    EXPECT_LE(std::abs(oracle::brute_force_minimum(f, iv, coarse).x -
                       oracle::brute_force_minimum(f, iv, fine).x),
              step);
  }
}

TEST(BruteForce, Resolution) {
  EXPECT_DOUBLE_EQ(oracle::grid_resolution(Interval(0, 1), {101}), 0.01);
  EXPECT_THROW(oracle::grid_resolution(Interval(0, 1), {2}), std::invalid_argument);
}

TEST(Unimodality, Examples) {
  EXPECT_TRUE(oracle::is_unimodal([](double x) { return x * x; }, Interval(-1, 1), {101}));
  EXPECT_FALSE(
      oracle::is_unimodal([](double x) { return std::sin(10 * x); }, Interval(0, 3), {1001}));
}

// -(0.2x + sin 2x) has a local maximum near 2.31 on [0, 3] and decreases
// again towards 3, so it is not unimodal on the whole interval, although it
// is on the part the solvers end up searching.
TEST(Unimodality, SecondLocalMinimumIsDetected) {
  auto f = [](double x) { return -(0.2 * x + std::sin(2 * x)); };
  const auto report = oracle::check_unimodality(f, Interval(0, 3), {10001});
  EXPECT_FALSE(report.unimodal);
  EXPECT_GT(report.violations, 0u);
  EXPECT_TRUE(oracle::is_unimodal(f, Interval(0, 2.3), {10001}));
}

TEST(Unimodality, PlateausAreTolerated) {
  auto f = [](double x) { return std::floor(std::abs(x) * 4); };
  const auto report = oracle::check_unimodality(f, Interval(-1, 1), {101});
  EXPECT_TRUE(report.unimodal);
  EXPECT_GT(report.plateaus, 0u);
}
