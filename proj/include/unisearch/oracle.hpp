#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "unisearch/core.hpp"

namespace unisearch::oracle {

/// Equally spaced sample grid. With `exclude_endpoints` the grid spans
/// [lo + inset, hi - inset], inset = length * 1e-9, for objectives that are
/// singular at a boundary.
struct GridSpec {
  std::size_t points = 1'000'001;
  bool exclude_endpoints = false;

  static constexpr double endpoint_inset = 1e-9;
};

struct GridMinimum {
  double x;
  double f_x;
};

namespace detail {

struct Span {
  double lo;
  double hi;
};

inline Span sample_span(const Interval& iv, const GridSpec& grid) {
  if (grid.points < 3) throw std::invalid_argument("grid needs at least 3 points");
  if (!grid.exclude_endpoints) return {iv.lo(), iv.hi()};
  const double inset = iv.length() * GridSpec::endpoint_inset;
  return {iv.lo() + inset, iv.hi() - inset};
}

inline double sample_point(const Span& span, std::size_t i, std::size_t points) {
  if (i + 1 == points) return span.hi;
  return span.lo + (span.hi - span.lo) * (static_cast<double>(i) / static_cast<double>(points - 1));
}

inline double sample(const std::function<double(double)>& f, double x) {
  const double value = f(x);
  if (!std::isfinite(value)) throw NonFiniteValue(x, value);
  return value;
}

}  // namespace detail

/// Grid point with the least objective value; ties go to the lowest abscissa.
inline GridMinimum brute_force_minimum(const std::function<double(double)>& f, const Interval& iv,
                                       const GridSpec& grid = {}) {
  const auto span = detail::sample_span(iv, grid);
  GridMinimum best{span.lo, detail::sample(f, span.lo)};
  for (std::size_t i = 1; i < grid.points; ++i) {
    const double x = detail::sample_point(span, i, grid.points);
    const double fx = detail::sample(f, x);
    if (fx < best.f_x) best = {x, fx};
  }
  return best;
}

/// Grid spacing of a GridSpec over an interval.
inline double grid_resolution(const Interval& iv, const GridSpec& grid) {
  const auto span = detail::sample_span(iv, grid);
  return (span.hi - span.lo) / static_cast<double>(grid.points - 1);
}

struct UnimodalityReport {
  bool unimodal = false;
  std::size_t argmin_index = 0;
  std::size_t plateaus = 0;   // neighbouring samples with exactly equal values
  std::size_t violations = 0; // samples breaking the decrease/increase pattern
};

/// Sampled unimodality certificate: values must strictly decrease up to the
/// grid minimizer and strictly increase after it. Exact FP ties between
/// neighbours are tolerated and counted. This is a grid-resolution check,
/// not a proof.
inline UnimodalityReport check_unimodality(const std::function<double(double)>& f,
                                           const Interval& iv, const GridSpec& grid = {}) {
  const auto span = detail::sample_span(iv, grid);
  std::vector<double> values(grid.points);
  for (std::size_t i = 0; i < grid.points; ++i)
    values[i] = detail::sample(f, detail::sample_point(span, i, grid.points));

  UnimodalityReport report;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] < values[report.argmin_index]) report.argmin_index = i;

  for (std::size_t i = 1; i < values.size(); ++i) {
    const double prev = values[i - 1];
    const double cur = values[i];
    if (cur == prev) {
      ++report.plateaus;
    } else if (i <= report.argmin_index ? cur > prev : cur < prev) {
      ++report.violations;
    }
  }
  report.unimodal = report.violations == 0;
  return report;
}

inline bool is_unimodal(const std::function<double(double)>& f, const Interval& iv,
                        const GridSpec& grid = {}) {
  return check_unimodality(f, iv, grid).unimodal;
}

}  // namespace unisearch::oracle
