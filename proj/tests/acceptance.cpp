// Acceptance checks. Prints one PASS/FAIL line per criterion; the exit code
// is non-zero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "support.hpp"
#include "unisearch/cli.hpp"
#include "unisearch/unisearch.hpp"

using namespace unisearch;
using testing_support::random_quadratic;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, value);
  return buf;
}

Verdict table1_counts() {
  const auto start = Clock::now();
  const auto report = bench::run_table1();
  const double elapsed = seconds_since(start);

  std::size_t compared = 0, within = 0, exact = 0;
  std::ostringstream misses;
  for (const auto& row : report.rows) {
    const auto c = bench::find_case(row.case_id);
    if (!c->comparable()) continue;
    ++compared;
    if (row.verdict == bench::Verdict::pass) ++within;
    else
      misses << " " << row.case_id << "/" << method_name(row.method);
    if (row.deviation && *row.deviation == 0) ++exact;
  }
  Verdict v;
  v.pass = compared == 57 && within == compared && elapsed < 1.0;
  v.detail = std::to_string(within) + "/" + std::to_string(compared) +
             " counts within +-2 (" + std::to_string(exact) + " exact), " +
             fmt("%.3f s", elapsed) + misses.str();
  return v;
}

Verdict table2_errors() {
  const auto start = Clock::now();
  const auto report = bench::run_table2();
  const double elapsed = seconds_since(start);

  std::size_t ok = 0;
  std::ostringstream misses;
  for (const auto& row : report.rows) {
    if (row.verdict == bench::Verdict::pass) {
      ++ok;
      continue;
    }
    misses << " " << row.case_id << "/" << method_name(row.method) << "/N=" << *row.n;
    if (row.measured && row.paper)
      misses << " (" << report::sci3(*row.measured) << " vs " << report::sci3(*row.paper) << ", "
             << fmt("%.2fx", *row.measured / *row.paper);
    if (!row.message.empty()) misses << ", " << row.message;
    if (row.measured && row.paper) misses << ")";
  }
  Verdict v;
  v.pass = report.rows.size() == 27 && ok == 27 && elapsed < 1.0;
  v.detail = std::to_string(ok) + "/" + std::to_string(report.rows.size()) +
             " errors within 2x published and the accuracy bound, " + fmt("%.3f s", elapsed) +
             misses.str();
  return v;
}

struct RandomRun {
  MethodKind method;
  Interval start;
  RunResult result;
};

// 1000 halving and 1000 trichotomy runs on random quadratics.
const std::vector<RandomRun>& random_runs() {
  static const std::vector<RandomRun> runs = [] {
    std::vector<RandomRun> out;
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> exponent(1, 9);
    for (int i = 0; i < 1000; ++i) {
      const auto q = random_quadratic(rng);
      const double eps = q.interval.length() * std::pow(10.0, -exponent(rng));
      for (MethodKind m : {MethodKind::interval_halving, MethodKind::trichotomy}) {
        Objective obj(q);
        out.push_back({m, q.interval, minimize(Method{m, {}}, obj, q.interval,
                                               StopRule::half_width(eps))});
      }
    }
    return out;
  }();
  return runs;
}

Verdict shrink_ratio() {
  std::size_t iterations = 0, bad = 0;
  double worst = 0;
  for (const auto& run : random_runs()) {
    const double beta = run.method == MethodKind::interval_halving ? 2 : 3;
    Interval before = run.start;
    for (const auto& e : run.result.trace) {
      const auto& after = e.interval_after;
      const double scale = std::max({std::abs(before.lo()), std::abs(before.hi())});
      const double deviation =
          std::abs(after.length() - before.length() / beta) / testing_support::ulp(scale);
      worst = std::max(worst, deviation);
      if (deviation > 2) ++bad;
      ++iterations;
      before = after;
    }
  }
  Verdict v;
  v.pass = bad == 0 && random_runs().size() >= 1000;
  v.detail = std::to_string(random_runs().size()) + " runs, " + std::to_string(iterations) +
             " iterations, worst deviation " + fmt("%.2f", worst) + " ulp, " +
             std::to_string(bad) + " above 2 ulp";
  return v;
}

Verdict evaluation_caps() {
  std::size_t max_first[2] = {0, 0}, max_later[2] = {0, 0};
  for (const auto& run : random_runs()) {
    const int k = run.method == MethodKind::interval_halving ? 0 : 1;
    for (const auto& e : run.result.trace) {
      auto& slot = e.iter == 1 ? max_first[k] : max_later[k];
      slot = std::max(slot, e.evals_this_iter);
    }
  }
  Verdict v;
  v.pass = max_first[0] <= 3 && max_later[0] <= 2 && max_first[1] <= 4 && max_later[1] <= 3 &&
           max_first[1] <= 5 && max_later[1] <= 4;
  v.detail = "halving max " + std::to_string(max_first[0]) + " then " +
             std::to_string(max_later[0]) + ", trichotomy max " + std::to_string(max_first[1]) +
             " then " + std::to_string(max_later[1]);
  return v;
}

Verdict iteration_counts() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lo(-1, 1), log_len(-1, 1), log_ratio(0.05, 20);
  std::size_t tested = 0, agree = 0;
  std::ostringstream misses;
  while (tested < 100) {
    const double len = std::pow(10.0, log_len(rng));
    const double a = lo(rng);
    const Interval iv(a, a + len);
    for (MethodKind m : {MethodKind::interval_halving, MethodKind::trichotomy}) {
      const double beta = m == MethodKind::interval_halving ? 2 : 3;
      const double target = log_ratio(rng);
      const double eps = len / (2 * std::pow(beta, target));
      const double exact = std::log(len / (2 * eps)) / std::log(beta);
      if (std::abs(exact - std::round(exact)) < 1e-6) continue;
      Objective obj([a, len](double x) { return std::abs(x - (a + 0.3 * len)); });
      const auto r = minimize(Method{m, {}}, obj, iv, StopRule::half_width(eps));
      const auto bound = iteration_bound(m, len, eps);
      const auto expected = static_cast<std::size_t>(std::ceil(exact));
      ++tested;
      if (r.n_iters == expected && bound.k_exact == static_cast<long>(expected))
        ++agree;
      else
        misses << " " << method_name(m) << "(L=" << len << ", eps=" << eps << ": " << r.n_iters
               << " vs " << expected << ")";
    }
  }
  Verdict v;
  v.pass = agree == tested;
  v.detail = std::to_string(agree) + "/" + std::to_string(tested) +
             " runs performed ceil(log_beta(L/(2 eps))) iterations" + misses.str();
  return v;
}

Verdict accuracy_bound_order() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> log_len(-3, 3);
  std::size_t checks = 0, bad = 0;
  for (int i = 0; i < 20; ++i) {
    const double len = std::pow(10.0, log_len(rng));
    for (std::size_t n = 1; n <= 100; ++n) {
      const double d = accuracy_bound(MethodKind::interval_halving, len, n).epsilon_bound;
      const double t = accuracy_bound(MethodKind::trichotomy, len, n).epsilon_bound;
      ++checks;
      const bool ok = n == 1 ? d == t : d < t;
      if (!ok) ++bad;
    }
  }
  Verdict v;
  v.pass = bad == 0;
  v.detail = std::to_string(checks) + " (L, N) pairs, N in 1..100, " + std::to_string(bad) +
             " violations";
  return v;
}

Verdict oracle_agreement() {
  const auto start = Clock::now();
  const auto report = bench::run_oracle_check(1'000'001, 1e-6, 1e-4);
  const double elapsed = seconds_since(start);
  std::size_t ok = 0;
  double worst = 0;
  std::ostringstream misses;
  for (const auto& row : report.rows) {
    if (row.pass)
      ++ok;
    else
      misses << " " << row.case_id << "/" << method_name(row.method)
             << (row.message.empty() ? "" : " (" + row.message + ")");
    worst = std::max(worst, row.difference);
  }
  Verdict v;
  v.pass = report.all_pass() && !report.rows.empty() && elapsed < 30;
  v.detail = std::to_string(ok) + "/" + std::to_string(report.rows.size()) +
             " solver runs agree with the grid oracle, worst " + report::sci3(worst) + ", " +
             fmt("%.2f s", elapsed) + misses.str();
  return v;
}

Verdict accuracy_guarantee() {
  std::size_t runs = 0, bad = 0;
  double worst_ratio = 0;
  std::ostringstream misses;
  for (const auto& c : bench::registry_all()) {
    if (!c.has_interior_minimizer()) continue;
    for (double eps : {1e-3, 1e-6}) {
      for (MethodKind m : testing_support::half_width_methods()) {
        Objective obj(c.f);
        const auto r = minimize(Method{m, {}}, obj, c.interval, StopRule::half_width(eps));
        const double err = std::abs(r.x_min - *c.x_star);
        worst_ratio = std::max(worst_ratio, err / eps);
        ++runs;
        if (err > eps) {
          ++bad;
          misses << " " << c.id << "/" << method_name(m) << "/eps=" << eps;
        }
      }
    }
  }
  Verdict v;
  v.pass = bad == 0;
  v.detail = std::to_string(runs - bad) + "/" + std::to_string(runs) +
             " runs with |x - x*| <= eps, worst " + fmt("%.3f", worst_ratio) + " eps" +
             misses.str();
  return v;
}

std::string cli_output(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"unisearch"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return out.str();
}

Verdict determinism() {
  const std::vector<std::string> args{"-q", "table", "1", "--format", "csv"};
  const std::string first = cli_output(args);
  bool same = !first.empty();
  for (int i = 0; i < 4; ++i) same = same && cli_output(args) == first;
  for (const char* threads : {"1", "3", "16"}) {
    setenv("UNISEARCH_THREADS", threads, 1);
    same = same && cli_output(args) == first;
  }
  unsetenv("UNISEARCH_THREADS");
  Verdict v;
  v.pass = same;
  v.detail = "8 invocations at 1 to 16 threads, " +
             std::string(same ? "byte-identical" : "outputs differ");
  return v;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Verdict()> check;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::vector<int> selected;
  app.add_option("-c,--criterion", selected, "Criteria to run (default: all)")
      ->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "table 1 evaluation counts", table1_counts},
      {2, "table 2 accuracy at fixed budgets", table2_errors},
      {3, "shrink ratio 1/2 and 1/3 within 2 ulp", shrink_ratio},
      {4, "per-iteration evaluation caps", evaluation_caps},
      {5, "iteration count matches the closed form", iteration_counts},
      {6, "halving accuracy bound below trichotomy's", accuracy_bound_order},
      {7, "grid oracle agreement", oracle_agreement},
      {8, "accuracy guarantee in half-width mode", accuracy_guarantee},
      {9, "table 1 csv determinism", determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end())
      continue;
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "AC" << c.id << " " << (v.pass ? "PASS" : "FAIL") << "  " << c.title << ": "
              << v.detail << "\n";
    if (!v.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
