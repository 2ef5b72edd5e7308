#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "unisearch/unisearch.hpp"

namespace testing_support {

/// Random strictly unimodal quadratic c (x - m)^2 + d on a random interval
/// that contains m in its interior.
struct QuadraticCase {
  double c, m, d;
  unisearch::Interval interval;

  double operator()(double x) const { return c * (x - m) * (x - m) + d; }
};

inline QuadraticCase random_quadratic(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> centre(-100, 100);
  std::uniform_real_distribution<double> log_len(-3, 2);
  std::uniform_real_distribution<double> unit(0.02, 0.98);
  std::uniform_real_distribution<double> curvature(0.1, 10);
  const double lo = centre(rng);
  const double len = std::pow(10.0, log_len(rng));
  const unisearch::Interval iv(lo, lo + len);
  return {curvature(rng), lo + unit(rng) * len, centre(rng), iv};
}

/// Wraps a function and records every abscissa it was called with.
class InvocationLog {
 public:
  explicit InvocationLog(std::function<double(double)> f) : f_(std::move(f)) {}

  std::function<double(double)> wrapped() {
    return [this](double x) {
      calls_.push_back(x);
      return f_(x);
    };
  }

  const std::vector<double>& calls() const { return calls_; }

 private:
  std::function<double(double)> f_;
  std::vector<double> calls_;
};

/// Spacing between x and the next double away from zero.
inline double ulp(double x) {
  const double a = std::abs(x);
  return std::nextafter(a, std::numeric_limits<double>::infinity()) - a;
}

inline const std::vector<unisearch::MethodKind>& half_width_methods() {
  static const std::vector<unisearch::MethodKind> methods = {
      unisearch::MethodKind::interval_halving, unisearch::MethodKind::trichotomy,
      unisearch::MethodKind::golden_section, unisearch::MethodKind::dichotomous};
  return methods;
}

}  // namespace testing_support
