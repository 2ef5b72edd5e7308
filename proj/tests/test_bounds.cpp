#include <gtest/gtest.h>

#include "unisearch/unisearch.hpp"

using namespace unisearch;

TEST(IterationBound, Examples) {
  const auto h = iteration_bound(MethodKind::interval_halving, 1, 0.1);
  EXPECT_EQ(h.k_paper, 3);
  EXPECT_EQ(h.k_exact, 3);
  const auto t = iteration_bound(MethodKind::trichotomy, 1, 0.1);
  EXPECT_EQ(t.k_paper, 2);
  EXPECT_EQ(t.k_exact, 2);
}

TEST(IterationBound, IntegerLogarithmOverCounts) {
  const auto b = iteration_bound(MethodKind::interval_halving, 1, 0.25);
  EXPECT_EQ(b.k_paper, 2);
  EXPECT_EQ(b.k_exact, 1);
  Objective obj([](double x) { return x * x; });
  const auto r = minimize_interval_halving(obj, Interval(-0.3, 0.7), StopRule::half_width(0.25));
  EXPECT_EQ(r.n_iters, 1u);
}

TEST(IterationBound, Errors) {
  EXPECT_THROW(iteration_bound(MethodKind::interval_halving, 1, 0.5), DomainError);
  EXPECT_THROW(iteration_bound(MethodKind::trichotomy, 1, 2), DomainError);
  EXPECT_THROW(iteration_bound(MethodKind::golden_section, 1, 0.1), std::invalid_argument);
}

TEST(AccuracyBound, Examples) {
  EXPECT_DOUBLE_EQ(accuracy_bound(MethodKind::interval_halving, 2, 1).epsilon_bound, 1.0);
  EXPECT_DOUBLE_EQ(accuracy_bound(MethodKind::trichotomy, 2, 1).epsilon_bound, 1.0);
  EXPECT_NEAR(accuracy_bound(MethodKind::interval_halving, 2, 10).epsilon_bound, 4.42e-2, 5e-5);
  EXPECT_NEAR(accuracy_bound(MethodKind::trichotomy, 2, 10).epsilon_bound, 8.45e-2, 1e-4);
  EXPECT_THROW(accuracy_bound(MethodKind::fibonacci, 2, 10), std::invalid_argument);
}

TEST(AccuracyBound, PositiveAndAtMostHalfLength) {
  for (std::size_t n = 1; n <= 200; ++n)
    for (MethodKind m : {MethodKind::interval_halving, MethodKind::trichotomy}) {
      const double e = accuracy_bound(m, 3, n).epsilon_bound;
      EXPECT_GT(e, 0);
      EXPECT_LE(e, 1.5);
    }
}

TEST(IterationBound, ExactWithinOneOfPublishedForm) {
  for (double eps : {0.3, 0.1, 1e-3, 1e-6, 0.0625, 1.0 / 18})
    for (MethodKind m : {MethodKind::interval_halving, MethodKind::trichotomy}) {
      const auto b = iteration_bound(m, 1, eps);
      EXPECT_LE(b.k_exact, b.k_paper);
      EXPECT_LE(b.k_paper, b.k_exact + 1);
    }
}
