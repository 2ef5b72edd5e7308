#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "unisearch/bounds.hpp"
#include "unisearch/core.hpp"
#include "unisearch/oracle.hpp"
#include "unisearch/registry.hpp"
#include "unisearch/solvers.hpp"

namespace unisearch::bench {

/// Allowed difference between measured and published evaluation counts in Table 1.
inline constexpr int table1_tolerance = 2;
/// Table 2 passes when the measured error is at most this multiple of the
/// published one.
inline constexpr double table2_error_factor = 2.0;

enum class Verdict { pass, fail, excluded, error };

inline std::string_view verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::excluded: return "excluded";
    case Verdict::error: return "error";
  }
  return "unknown";
}

struct BenchRow {
  std::string case_id;
  MethodKind method;
  std::optional<std::size_t> n;       // budget, Table 2 only
  std::optional<double> measured;     // evaluation count or |x - x*|
  std::optional<double> paper;
  Verdict verdict = Verdict::excluded;
  std::optional<double> deviation;    // measured - paper (counts) or measured / paper (errors)
  std::optional<double> bound;        // accuracy bound, where one exists
  std::string message;
};

struct CaseSummary {
  std::string expr_label;
  Interval interval{0, 1};
  std::optional<double> tolerance;
  std::string x_star_printed;
};

struct BenchReport {
  int table = 0;  // 1, 2 or 0 for ad-hoc reports
  std::vector<BenchRow> rows;
  std::map<std::string, CaseSummary> cases;

  /// True when no comparable row failed or errored.
  bool all_pass() const {
    return std::none_of(rows.begin(), rows.end(), [](const BenchRow& r) {
      return r.verdict == Verdict::fail || r.verdict == Verdict::error;
    });
  }

  std::size_t count(Verdict v) const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [v](const BenchRow& r) { return r.verdict == v; }));
  }
};

/// Default worker count: UNISEARCH_THREADS if set and positive, otherwise
/// the hardware concurrency.
inline unsigned default_threads() {
  if (const char* env = std::getenv("UNISEARCH_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && value > 0) return static_cast<unsigned>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Results must be
/// written to per-index slots so the outcome does not depend on scheduling.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = default_threads();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  for (auto& th : pool) th.join();
}

inline void sort_rows(std::vector<BenchRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const BenchRow& l, const BenchRow& r) {
    return std::tie(l.case_id, l.method, l.n) < std::tie(r.case_id, r.method, r.n);
  });
}

inline CaseSummary summarize(const BenchmarkCase& c) {
  return {c.expr_label, c.interval, c.tolerance, c.x_star_printed};
}

inline std::vector<MethodKind> normalized(std::vector<MethodKind> methods) {
  std::sort(methods.begin(), methods.end());
  methods.erase(std::unique(methods.begin(), methods.end()), methods.end());
  return methods;
}

}  // namespace detail

/// Estimate scored in the fixed-budget benchmark: the midpoint of the final
/// interval of uncertainty. For halving and trichotomy that is the carried
/// midpoint probe itself.
inline double table2_estimate(MethodKind method, const RunResult& result) {
  switch (method) {
    case MethodKind::interval_halving:
    case MethodKind::trichotomy: return result.x_min;
    case MethodKind::fibonacci: return result.final_interval.midpoint();
    default: return result.x_min;
  }
}

inline std::vector<MethodKind> table1_methods() {
  return {MethodKind::interval_halving, MethodKind::trichotomy, MethodKind::golden_section};
}

inline std::vector<MethodKind> table2_methods() {
  return {MethodKind::interval_halving, MethodKind::trichotomy, MethodKind::fibonacci};
}

/// Evaluation counts at each case's tolerance. `case_ids`, when given,
/// restricts the run to those ids.
inline BenchReport run_table1(std::vector<MethodKind> methods = table1_methods(),
                              const std::optional<std::vector<std::string>>& case_ids = std::nullopt,
                              unsigned threads = 0) {
  methods = detail::normalized(std::move(methods));
  std::vector<BenchmarkCase> cases;
  for (auto& c : registry_table1())
    if (!case_ids || std::find(case_ids->begin(), case_ids->end(), c.id) != case_ids->end())
      cases.push_back(std::move(c));

  BenchReport report;
  report.table = 1;
  for (const auto& c : cases) report.cases.emplace(c.id, detail::summarize(c));

  std::vector<BenchRow> rows(cases.size() * methods.size());
  detail::parallel_for(rows.size(), threads, [&](std::size_t i) {
    const auto& c = cases[i / methods.size()];
    const MethodKind method = methods[i % methods.size()];
    BenchRow row{c.id, method, std::nullopt, std::nullopt, std::nullopt, Verdict::excluded,
                 std::nullopt, std::nullopt, {}};
    if (auto it = c.paper_counts.find(method); it != c.paper_counts.end()) row.paper = it->second;
    try {
      Objective objective(c.f);
      const auto result = minimize(Method{method, {}}, objective, c.interval,
                                   StopRule::half_width(*c.tolerance));
      row.measured = static_cast<double>(result.n_evals);
      if (row.paper) {
        row.deviation = *row.measured - *row.paper;
        if (c.comparable())
          row.verdict = std::abs(*row.deviation) <= table1_tolerance ? Verdict::pass : Verdict::fail;
      }
    } catch (const std::exception& e) {
      row.message = e.what();
      row.verdict = c.comparable() && row.paper ? Verdict::error : Verdict::excluded;
    }
    rows[i] = std::move(row);
  });
  detail::sort_rows(rows);
  report.rows = std::move(rows);
  return report;
}

/// Error |estimate - x*| after N in {10, 20, 30} evaluations.
///
/// Halving and trichotomy run under `policy`; the default finishes the
/// iteration in progress once the budget is reached.
inline BenchReport run_table2(std::vector<MethodKind> methods = table2_methods(),
                              unsigned threads = 0,
                              BudgetPolicy policy = BudgetPolicy::complete_iteration) {
  methods = detail::normalized(std::move(methods));
  const auto cases = registry_table2();

  struct Job {
    const BenchmarkCase* c;
    MethodKind method;
    std::size_t n;
  };
  std::vector<Job> jobs;
  BenchReport report;
  report.table = 2;
  for (const auto& c : cases) {
    report.cases.emplace(c.id, detail::summarize(c));
    for (MethodKind m : methods)
      for (std::size_t n : c.budgets) jobs.push_back({&c, m, n});
  }

  std::vector<BenchRow> rows(jobs.size());
  detail::parallel_for(jobs.size(), threads, [&](std::size_t i) {
    const auto& [c, method, n] = jobs[i];
    BenchRow row{c->id, method, n, std::nullopt, std::nullopt, Verdict::excluded,
                 std::nullopt, std::nullopt, {}};
    if (auto it = c->paper_errors.find({method, n}); it != c->paper_errors.end())
      row.paper = it->second;
    const bool has_bound =
        method == MethodKind::interval_halving || method == MethodKind::trichotomy;
    if (has_bound) row.bound = accuracy_bound(method, c->interval.length(), n).epsilon_bound;
    try {
      Objective objective(c->f);
      const auto result =
          minimize(Method{method, {}}, objective, c->interval, StopRule::budget(n, policy));
      row.measured = std::abs(table2_estimate(method, result) - *c->x_star);
      if (row.paper) {
        row.deviation = *row.measured / *row.paper;
        const bool within_paper = *row.measured <= table2_error_factor * *row.paper;
        const bool within_bound = !row.bound || *row.measured <= *row.bound;
        row.verdict = within_paper && within_bound ? Verdict::pass : Verdict::fail;
        if (!within_bound) row.message = "exceeds accuracy bound";
      }
    } catch (const std::exception& e) {
      row.message = e.what();
      row.verdict = row.paper ? Verdict::error : Verdict::excluded;
    }
    rows[i] = std::move(row);
  });
  detail::sort_rows(rows);
  report.rows = std::move(rows);
  return report;
}

/// Solver versus grid oracle on one registry case.
struct OracleRow {
  std::string case_id;
  MethodKind method;
  double solver_x = 0;
  double oracle_x = 0;
  double difference = 0;
  bool pass = false;
  std::string message;
};

struct OracleReport {
  std::vector<OracleRow> rows;
  double threshold = 0;
  std::size_t grid_points = 0;
  double worst_resolution = 0;

  bool all_pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const OracleRow& r) { return r.pass; });
  }
};

/// Runs every method on every non-garbled registry case at half-width
/// `epsilon` (Fibonacci gets the smallest budget reaching it) and compares
/// against the brute-force grid minimum.
inline OracleReport run_oracle_check(std::size_t grid_points = 1'000'001, double epsilon = 1e-6,
                                     double threshold = 1e-4, unsigned threads = 0) {
  std::vector<BenchmarkCase> cases;
  for (auto& c : registry_all())
    if (c.comparable()) cases.push_back(std::move(c));

  OracleReport report;
  report.threshold = threshold;
  report.grid_points = grid_points;

  std::vector<std::optional<oracle::GridMinimum>> grid(cases.size());
  std::vector<std::string> grid_error(cases.size());
  detail::parallel_for(cases.size(), threads, [&](std::size_t i) {
    const auto& c = cases[i];
    const oracle::GridSpec spec{grid_points, c.has(CaseFlag::endpoint_min) ||
                                                 c.has(CaseFlag::endpoint_singular)};
    try {
      grid[i] = oracle::brute_force_minimum(c.f, c.interval, spec);
    } catch (const std::exception& e) {
      grid_error[i] = e.what();
    }
  });
  for (const auto& c : cases)
    report.worst_resolution = std::max(
        report.worst_resolution,
        oracle::grid_resolution(c.interval, oracle::GridSpec{grid_points, false}));

  const std::size_t per_case = all_methods.size();
  std::vector<OracleRow> rows(cases.size() * per_case);
  detail::parallel_for(rows.size(), threads, [&](std::size_t i) {
    const std::size_t ci = i / per_case;
    const auto& c = cases[ci];
    const MethodKind method = all_methods[i % per_case];
    OracleRow row;
    row.case_id = c.id;
    row.method = method;
    try {
      if (!grid[ci]) throw std::runtime_error("oracle failed: " + grid_error[ci]);
      Objective objective(c.f);
      const auto stop = method == MethodKind::fibonacci
                            ? StopRule::budget(fibonacci_budget_for(c.interval.length(), epsilon))
                            : StopRule::half_width(epsilon);
      const auto result = minimize(Method{method, {}}, objective, c.interval, stop);
      row.solver_x = result.x_min;
      row.oracle_x = grid[ci]->x;
      row.difference = std::abs(row.solver_x - row.oracle_x);
      row.pass = row.difference <= threshold;
    } catch (const std::exception& e) {
      row.message = e.what();
    }
    rows[i] = std::move(row);
  });
  report.rows = std::move(rows);
  return report;
}

}  // namespace unisearch::bench
