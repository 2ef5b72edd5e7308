#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "unisearch/core.hpp"

namespace unisearch {

enum class MethodKind {
  interval_halving,
  trichotomy,
  golden_section,
  fibonacci,
  dichotomous,
};

inline constexpr std::array<MethodKind, 5> all_methods = {
    MethodKind::interval_halving, MethodKind::trichotomy, MethodKind::golden_section,
    MethodKind::fibonacci, MethodKind::dichotomous};

inline std::string_view method_name(MethodKind kind) noexcept {
  switch (kind) {
    case MethodKind::interval_halving: return "halving";
    case MethodKind::trichotomy: return "trichotomy";
    case MethodKind::golden_section: return "golden";
    case MethodKind::fibonacci: return "fibonacci";
    case MethodKind::dichotomous: return "dichotomous";
  }
  return "unknown";
}

inline std::optional<MethodKind> parse_method(std::string_view name) noexcept {
  for (MethodKind kind : all_methods)
    if (method_name(kind) == name) return kind;
  if (name == "interval-halving" || name == "interval_halving") return MethodKind::interval_halving;
  if (name == "golden-section" || name == "golden_section") return MethodKind::golden_section;
  return std::nullopt;
}

/// A bracketing method plus its parameters. Only dichotomous search takes
/// one: the probe offset. When unset, default_dichotomous_offset() is used.
struct Method {
  MethodKind kind = MethodKind::trichotomy;
  std::optional<double> dichotomous_offset;

  static Method interval_halving() { return {MethodKind::interval_halving, {}}; }
  static Method trichotomy() { return {MethodKind::trichotomy, {}}; }
  static Method golden_section() { return {MethodKind::golden_section, {}}; }
  static Method fibonacci() { return {MethodKind::fibonacci, {}}; }
  static Method dichotomous(std::optional<double> offset = std::nullopt) {
    return {MethodKind::dichotomous, offset};
  }

  std::string_view name() const noexcept { return method_name(kind); }
};

/// Relative offset of the last Fibonacci probe from its coincident partner.
inline constexpr double fibonacci_final_offset = 1e-3;

/// Largest budget accepted by minimize_fibonacci; Fibonacci numbers stay
/// exact in double precision well past this point.
inline constexpr std::size_t fibonacci_max_budget = 1000;

namespace detail {

/// True while [lo, hi] is wide enough that every probe formula yields
/// abscissae strictly inside it.
inline bool resolvable(double lo, double hi) noexcept {
  const double scale = std::max({std::abs(lo), std::abs(hi), std::numeric_limits<double>::min()});
  const double ulp = std::nextafter(scale, std::numeric_limits<double>::infinity()) - scale;
  return hi - lo > 64 * ulp;
}

/// Bookkeeping shared by every solver: counted probes, the per-iteration
/// trace, and stop-rule accounting relative to the start of this run.
class Run {
 public:
  Run(Objective& objective, const StopRule& stop, const Interval& start, bool allow_overshoot)
      : objective_(objective), stop_(stop), current_(start), allow_overshoot_(allow_overshoot) {}

  /// Evaluates f(x) if the run can afford it; nullopt means stop now.
  std::optional<double> probe(double x) {
    if (stop_.is_budget() && !overshoot_allowed() && used_ >= stop_.evaluations())
      return std::nullopt;
    try {
      const double fx = objective_.evaluate(x);
      ++used_;
      pending_.push_back({x, fx});
      return fx;
    } catch (const BudgetExhausted&) {
      return std::nullopt;
    } catch (const NonFiniteValue& e) {
      ++used_;
      pending_.push_back({x, e.value()});
      throw RunFailure(e.what(), partial());
    }
  }

  /// Evaluates the returned estimate after the search proper; the probe is
  /// booked against the last completed iteration.
  std::optional<double> probe_estimate(double x) {
    const auto fx = probe(x);
    if (fx && pending_.size() == 1 && !trace_.empty()) {
      trace_.back().probes.push_back(pending_.back());
      ++trace_.back().evals_this_iter;
      pending_.clear();
    }
    return fx;
  }

  void close_iteration(double lo, double hi) {
    current_ = Interval(lo, hi);
    trace_.push_back({trace_.size() + 1, current_, pending_.size(), std::move(pending_)});
    pending_.clear();
  }

  bool converged() const {
    return stop_.is_half_width() && current_.half_width() <= stop_.epsilon();
  }

  bool may_start_iteration() const {
    return !stop_.is_budget() || used_ < stop_.evaluations();
  }

  /// Evaluations still available under a budget rule; nullopt when unbounded.
  std::optional<std::size_t> remaining() const {
    if (!stop_.is_budget()) return std::nullopt;
    const std::size_t n = stop_.evaluations();
    return used_ >= n ? 0 : n - used_;
  }

  const Interval& current() const noexcept { return current_; }
  std::size_t used() const noexcept { return used_; }

  RunResult finish(double x, double fx) {
    flush();
    RunResult result;
    result.x_min = x;
    result.f_min = fx;
    result.n_evals = used_;
    result.n_iters = trace_.size();
    result.final_interval = current_;
    result.trace = std::move(trace_);
    return result;
  }

  [[noreturn]] void fail(const std::string& why) { throw RunFailure(why, partial()); }

 private:
  bool overshoot_allowed() const {
    return allow_overshoot_ && stop_.policy() == BudgetPolicy::complete_iteration;
  }

  void flush() {
    if (pending_.empty()) return;
    trace_.push_back({trace_.size() + 1, current_, pending_.size(), std::move(pending_)});
    pending_.clear();
  }

  RunResult partial() {
    RunResult result;
    result.x_min = current_.midpoint();
    result.f_min = std::numeric_limits<double>::quiet_NaN();
    result.n_evals = used_;
    result.final_interval = current_;
    result.trace = trace_;
    if (!pending_.empty())
      result.trace.push_back({trace_.size() + 1, current_, pending_.size(), pending_});
    result.n_iters = result.trace.size();
    return result;
  }

  Objective& objective_;
  StopRule stop_;
  Interval current_;
  bool allow_overshoot_;
  std::size_t used_ = 0;
  std::vector<Probe> pending_;
  std::vector<TraceEvent> trace_;
};

}  // namespace detail

/// Interval halving: three probes split [a, b] into four equal parts and
/// half of the interval is discarded per iteration. The midpoint probe x2
/// is carried between iterations and is the returned estimate.
inline RunResult minimize_interval_halving(Objective& objective, const Interval& iv,
                                           const StopRule& stop) {
  detail::Run run(objective, stop, iv, true);
  double a = iv.lo();
  double b = iv.hi();
  double x2 = iv.midpoint();
  auto f2 = run.probe(x2);
  if (!f2) run.fail("no evaluation available for the initial midpoint");

  while (run.may_start_iteration() && detail::resolvable(a, b)) {
    const double x1 = (a + x2) / 2;
    const auto f1 = run.probe(x1);
    if (!f1) break;
    if (*f1 <= *f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
    } else {
      const double x3 = (x2 + b) / 2;
      const auto f3 = run.probe(x3);
      if (!f3) break;
      if (*f2 <= *f3) {
        a = x1;
        b = x3;
      } else {
        a = x2;
        x2 = x3;
        f2 = f3;
      }
    }
    run.close_iteration(a, b);
    if (run.converged()) break;
  }
  return run.finish(x2, *f2);
}

/// Trichotomy: five probes split [a, b] into six equal parts and the
/// interval shrinks to exactly one third per iteration. The midpoint probe
/// x3 is carried between iterations; at most three new evaluations are
/// needed per iteration (four in the first).
inline RunResult minimize_trichotomy(Objective& objective, const Interval& iv,
                                     const StopRule& stop) {
  detail::Run run(objective, stop, iv, true);
  double a = iv.lo();
  double b = iv.hi();
  double x3 = iv.midpoint();
  auto f3 = run.probe(x3);
  if (!f3) run.fail("no evaluation available for the initial midpoint");

  while (run.may_start_iteration() && detail::resolvable(a, b)) {
    const double x2 = (a + 2 * x3) / 3;
    const auto f2 = run.probe(x2);
    if (!f2) break;
    if (*f2 <= *f3) {
      const double x1 = (a + x2) / 2;
      const auto f1 = run.probe(x1);
      if (!f1) break;
      if (*f1 <= *f2) {
        b = x2;
        x3 = x1;
        f3 = f1;
      } else {
        a = x1;
        b = x3;
        x3 = x2;
        f3 = f2;
      }
    } else {
      const double x4 = (b + 2 * x3) / 3;
      const auto f4 = run.probe(x4);
      if (!f4) break;
      if (*f4 <= *f3) {
        const double x5 = (2 * b + x3) / 3;
        const auto f5 = run.probe(x5);
        if (!f5) break;
        if (*f5 <= *f4) {
          a = x4;
          x3 = x5;
          f3 = f5;
        } else {
          a = x3;
          b = x5;
          x3 = x4;
          f3 = f4;
        }
      } else {
        a = x2;
        b = x4;
      }
    }
    run.close_iteration(a, b);
    if (run.converged()) break;
  }
  return run.finish(x3, *f3);
}

inline double default_dichotomous_offset(const Interval& iv, const StopRule& stop) {
  const double scaled = iv.length() * 1e-6;
  return stop.is_half_width() ? std::min(stop.epsilon() / 2, scaled) : scaled;
}

/// Dichotomous search: two probes straddle the midpoint at +-offset/2.
/// The estimate is the final midpoint, evaluated once more at the end.
inline RunResult minimize_dichotomous(Objective& objective, const Interval& iv,
                                      const StopRule& stop, double offset) {
  if (!(offset > 0) || !(offset < iv.length() / 4))
    throw std::invalid_argument("dichotomous offset must lie in (0, length/4)");
  if (stop.is_half_width() && !(offset < 2 * stop.epsilon()))
    throw std::invalid_argument("dichotomous offset must be below twice the tolerance");

  detail::Run run(objective, stop, iv, false);
  double a = iv.lo();
  double b = iv.hi();
  std::optional<Probe> last_better;

  // Two probes per iteration plus one reserved for the estimate.
  auto affordable = [&run] {
    const auto left = run.remaining();
    return !left || *left >= 3;
  };

  while (affordable() && detail::resolvable(a, b)) {
    const double m = a + (b - a) / 2;
    const double lower = m - offset / 2;
    const double upper = m + offset / 2;
    const auto f_lower = run.probe(lower);
    if (!f_lower) break;
    const auto f_upper = run.probe(upper);
    if (!f_upper) break;
    if (*f_lower <= *f_upper) {
      b = upper;
      last_better = Probe{lower, *f_lower};
    } else {
      a = lower;
      last_better = Probe{upper, *f_upper};
    }
    run.close_iteration(a, b);
    if (run.converged()) break;
  }

  const double estimate = run.current().midpoint();
  if (const auto f_estimate = run.probe_estimate(estimate)) return run.finish(estimate, *f_estimate);
  if (!last_better) run.fail("no evaluation available for dichotomous search");
  return run.finish(last_better->x, last_better->f);
}

inline RunResult minimize_dichotomous(Objective& objective, const Interval& iv,
                                      const StopRule& stop) {
  return minimize_dichotomous(objective, iv, stop, default_dichotomous_offset(iv, stop));
}

/// inverse golden ratio, (sqrt(5) - 1) / 2
inline double golden_ratio_inverse() { return (std::sqrt(5.0) - 1) / 2; }

/// Golden section search with two interior points at a + (1 - r)L and
/// a + rL. The first iteration evaluates both points and the replacement
/// after the first cut; every later iteration evaluates one point.
inline RunResult minimize_golden_section(Objective& objective, const Interval& iv,
                                         const StopRule& stop) {
  const double r = golden_ratio_inverse();
  detail::Run run(objective, stop, iv, false);
  double a = iv.lo();
  double b = iv.hi();
  double c = a + (1 - r) * (b - a);
  double d = a + r * (b - a);
  const auto fc0 = run.probe(c);
  if (!fc0) run.fail("no evaluation available for golden section search");
  double fc = *fc0;
  const auto fd0 = run.probe(d);
  if (!fd0) return run.finish(c, fc);
  double fd = *fd0;

  while (detail::resolvable(a, b)) {
    if (fc <= fd) {
      const double next = a + (1 - r) * (d - a);
      const auto f_next = run.probe(next);
      if (!f_next) break;
      b = d;
      d = c;
      fd = fc;
      c = next;
      fc = *f_next;
    } else {
      const double next = c + r * (b - c);
      const auto f_next = run.probe(next);
      if (!f_next) break;
      a = c;
      c = d;
      fc = fd;
      d = next;
      fd = *f_next;
    }
    run.close_iteration(a, b);
    if (run.converged()) break;
  }
  return fc <= fd ? run.finish(c, fc) : run.finish(d, fd);
}

/// Fibonacci search with exactly `budget` evaluations. Interior points sit
/// at F(k-2)/F(k) and F(k-1)/F(k) of the current length (F(0) = F(1) = 1);
/// at the last stage the new probe would coincide with the retained one and
/// is shifted right by fibonacci_final_offset times the current length.
/// Returns the better point of the last comparison.
inline RunResult minimize_fibonacci(Objective& objective, const Interval& iv,
                                    std::size_t budget) {
  if (budget < 2) throw std::invalid_argument("Fibonacci search needs a budget of at least 2");
  if (budget > fibonacci_max_budget)
    throw std::invalid_argument("Fibonacci budget above " + std::to_string(fibonacci_max_budget));

  std::vector<double> fib(budget + 1);
  fib[0] = fib[1] = 1;
  for (std::size_t i = 2; i <= budget; ++i) fib[i] = fib[i - 1] + fib[i - 2];

  detail::Run run(objective, StopRule::budget(budget), iv, false);
  double a = iv.lo();
  double b = iv.hi();
  std::size_t k = budget;
  double length = b - a;
  double x1 = a + fib[k - 2] / fib[k] * length;
  double x2 = a + fib[k - 1] / fib[k] * length;
  if (k == 2) x2 = x1 + fibonacci_final_offset * length;

  const auto f1_0 = run.probe(x1);
  if (!f1_0) run.fail("no evaluation available for Fibonacci search");
  double f1 = *f1_0;
  const auto f2_0 = run.probe(x2);
  if (!f2_0) return run.finish(x1, f1);
  double f2 = *f2_0;

  for (;;) {
    const bool keep_left = f1 <= f2;
    if (keep_left)
      b = x2;
    else
      a = x1;
    run.close_iteration(a, b);
    if (k == 2 || !detail::resolvable(a, b)) break;

    --k;
    length = b - a;
    const double retained = keep_left ? x1 : x2;
    const double f_retained = keep_left ? f1 : f2;
    double next = keep_left ? a + fib[k - 2] / fib[k] * length : a + fib[k - 1] / fib[k] * length;
    if (k == 2) next = retained + fibonacci_final_offset * length;

    const auto f_next = run.probe(next);
    if (!f_next) return run.finish(retained, f_retained);
    if (next < retained) {
      x1 = next;
      f1 = *f_next;
      x2 = retained;
      f2 = f_retained;
    } else {
      x1 = retained;
      f1 = f_retained;
      x2 = next;
      f2 = *f_next;
    }
  }
  // The interval was cut towards the better point of the last pair.
  return f1 <= f2 ? run.finish(x1, f1) : run.finish(x2, f2);
}

/// Uniform entry point. Fibonacci search needs its budget up front and
/// rejects a half-width rule.
inline RunResult minimize(const Method& method, Objective& objective, const Interval& iv,
                          const StopRule& stop) {
  switch (method.kind) {
    case MethodKind::interval_halving: return minimize_interval_halving(objective, iv, stop);
    case MethodKind::trichotomy: return minimize_trichotomy(objective, iv, stop);
    case MethodKind::golden_section: return minimize_golden_section(objective, iv, stop);
    case MethodKind::dichotomous:
      return method.dichotomous_offset
                 ? minimize_dichotomous(objective, iv, stop, *method.dichotomous_offset)
                 : minimize_dichotomous(objective, iv, stop);
    case MethodKind::fibonacci:
      if (!stop.is_budget())
        throw IncompatibleStopRule("Fibonacci search requires an evaluation budget");
      return minimize_fibonacci(objective, iv, stop.evaluations());
  }
  throw std::invalid_argument("unknown method");
}

/// Smallest Fibonacci budget whose final interval has half-width <= epsilon.
inline std::size_t fibonacci_budget_for(double length, double epsilon) {
  double prev = 1, cur = 1;
  for (std::size_t n = 2; n <= fibonacci_max_budget; ++n) {
    const double next = prev + cur;
    prev = cur;
    cur = next;
    if (length / cur * (1 + 2 * fibonacci_final_offset) / 2 <= epsilon) return n;
  }
  throw std::invalid_argument("tolerance needs a Fibonacci budget above the maximum");
}

}  // namespace unisearch
