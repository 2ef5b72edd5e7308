#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace unisearch {

/// Closed interval of uncertainty [lo, hi].
///
/// A valid interval has finite endpoints, lo < hi, and at least one
/// representable double strictly between them, so midpoint() is always
/// strictly interior.
class Interval {
 public:
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi) ||
        !(std::nextafter(lo, hi) < hi)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "invalid interval [" << lo << ", " << hi << "]";
      throw std::invalid_argument(msg.str());
    }
  }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double length() const noexcept { return hi_ - lo_; }
  double half_width() const noexcept { return length() / 2; }

  double midpoint() const noexcept {
    const double width = hi_ - lo_;
    double m = std::isfinite(width) ? lo_ + width / 2 : lo_ / 2 + hi_ / 2;
    if (!(lo_ < m && m < hi_)) m = std::nextafter(lo_, hi_);
    return m;
  }

  bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& other) const noexcept {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_;
  double hi_;
};

/// Interval midpoint, lo + (hi - lo) / 2.
inline double interval_midpoint(const Interval& iv) noexcept { return iv.midpoint(); }

class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(std::size_t budget)
      : std::runtime_error("evaluation budget of " + std::to_string(budget) + " exhausted"),
        budget_(budget) {}
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t budget_;
};

class NonFiniteValue : public std::runtime_error {
 public:
  NonFiniteValue(double x, double value)
      : std::runtime_error(describe(x, value)), x_(x), value_(value) {}
  double x() const noexcept { return x_; }
  double value() const noexcept { return value_; }

 private:
  static std::string describe(double x, double value) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "objective returned " << value << " at x = " << x;
    return msg.str();
  }
  double x_;
  double value_;
};

/// Counted scalar objective. Every call to evaluate() that reaches the
/// wrapped function increments count() by one; a call that would exceed
/// the budget is refused before the function is invoked.
class Objective {
 public:
  using Function = std::function<double(double)>;

  explicit Objective(Function f, std::optional<std::size_t> budget = std::nullopt)
      : f_(std::move(f)), budget_(budget) {
    if (!f_) throw std::invalid_argument("objective function is empty");
  }

  double evaluate(double x) {
    if (budget_ && count_ >= *budget_) throw BudgetExhausted(*budget_);
    ++count_;
    const double value = f_(x);
    if (!std::isfinite(value)) throw NonFiniteValue(x, value);
    return value;
  }

  double operator()(double x) { return evaluate(x); }

  std::size_t count() const noexcept { return count_; }
  std::optional<std::size_t> budget() const noexcept { return budget_; }
  bool exhausted() const noexcept { return budget_ && count_ >= *budget_; }

 private:
  Function f_;
  std::size_t count_ = 0;
  std::optional<std::size_t> budget_;
};

/// How a fixed evaluation budget is enforced by the iterative solvers.
enum class BudgetPolicy {
  /// Never evaluate past N; a run may end part way through an iteration.
  strict,
  /// Start a new iteration only while fewer than N evaluations were spent,
  /// then finish it. May overshoot N by the per-iteration maximum minus one.
  complete_iteration,
};

struct HalfWidth {
  double epsilon;
};

struct Budget {
  std::size_t evaluations;
  BudgetPolicy policy = BudgetPolicy::strict;
};

class StopRule {
 public:
  static StopRule half_width(double epsilon) {
    if (!(epsilon > 0) || !std::isfinite(epsilon))
      throw std::invalid_argument("tolerance must be positive and finite");
    return StopRule(HalfWidth{epsilon});
  }

  static StopRule budget(std::size_t evaluations, BudgetPolicy policy = BudgetPolicy::strict) {
    if (evaluations < 2) throw std::invalid_argument("evaluation budget must be at least 2");
    return StopRule(Budget{evaluations, policy});
  }

  bool is_half_width() const noexcept { return std::holds_alternative<HalfWidth>(rule_); }
  bool is_budget() const noexcept { return std::holds_alternative<Budget>(rule_); }

  double epsilon() const { return std::get<HalfWidth>(rule_).epsilon; }
  std::size_t evaluations() const { return std::get<Budget>(rule_).evaluations; }
  BudgetPolicy policy() const { return std::get<Budget>(rule_).policy; }

  const std::variant<HalfWidth, Budget>& rule() const noexcept { return rule_; }

 private:
  explicit StopRule(std::variant<HalfWidth, Budget> rule) : rule_(rule) {}
  std::variant<HalfWidth, Budget> rule_;
};

struct Probe {
  double x;
  double f;
};

struct TraceEvent {
  std::size_t iter;  // 1-based
  Interval interval_after;
  std::size_t evals_this_iter;
  std::vector<Probe> probes;
};

struct RunResult {
  double x_min = 0;
  double f_min = 0;
  std::size_t n_evals = 0;
  std::size_t n_iters = 0;
  Interval final_interval{0, 1};
  std::vector<TraceEvent> trace;
};

/// Thrown when the objective produced a non-finite value mid-run. Carries
/// the trace up to and including the failing evaluation.
class RunFailure : public std::runtime_error {
 public:
  RunFailure(const std::string& what, RunResult partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const RunResult& partial() const noexcept { return partial_; }

 private:
  RunResult partial_;
};

class IncompatibleStopRule : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace unisearch
