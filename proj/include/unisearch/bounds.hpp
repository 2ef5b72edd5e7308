#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "unisearch/core.hpp"
#include "unisearch/solvers.hpp"

namespace unisearch {

/// Iterations needed to reach half-width epsilon.
///
/// `k_paper` is the published form floor(log_b(L/(2 eps))) + 1, which counts
/// one iteration too many when the logarithm is an exact integer.
/// `k_exact` is ceil(log_b(L/(2 eps))), the count a run actually performs.
struct IterationBound {
  MethodKind method;
  long k_paper;
  long k_exact;
};

/// Worst-case half-width after N evaluations.
struct AccuracyBound {
  MethodKind method;
  double epsilon_bound;
};

namespace detail {

inline double shrink_base(MethodKind method) {
  switch (method) {
    case MethodKind::interval_halving: return 2;
    case MethodKind::trichotomy: return 3;
    default: break;
  }
  throw std::invalid_argument(std::string("no closed-form bound for ") +
                              std::string(method_name(method)));
}

// Worst-case evaluations per iteration used by the accuracy estimate
// (2 for halving, 4 for trichotomy).
inline double evals_per_iteration_cap(MethodKind method) {
  return method == MethodKind::trichotomy ? 4 : 2;
}

}  // namespace detail

inline IterationBound iteration_bound(MethodKind method, double length, double epsilon) {
  const double beta = detail::shrink_base(method);
  if (!(length > 0) || !(epsilon > 0))
    throw DomainError("length and tolerance must be positive");
  const double ratio = length / (2 * epsilon);
  if (!(ratio > 1)) throw DomainError("length/(2 eps) must exceed 1; no iteration is needed");
  const double log_ratio = std::log(ratio) / std::log(beta);
  return {method, static_cast<long>(std::floor(log_ratio)) + 1,
          static_cast<long>(std::ceil(log_ratio))};
}

inline AccuracyBound accuracy_bound(MethodKind method, double length, std::size_t evaluations) {
  const double beta = detail::shrink_base(method);
  if (!(length > 0)) throw DomainError("length must be positive");
  if (evaluations < 1) throw DomainError("at least one evaluation is required");
  const double exponent =
      (static_cast<double>(evaluations) - 1) / detail::evals_per_iteration_cap(method);
  return {method, length / (2 * std::pow(beta, exponent))};
}

}  // namespace unisearch
