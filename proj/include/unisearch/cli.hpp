#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "unisearch/bench.hpp"
#include "unisearch/bounds.hpp"
#include "unisearch/registry.hpp"
#include "unisearch/report.hpp"
#include "unisearch/solvers.hpp"

namespace unisearch::cli {

enum ExitCode : int { success = 0, usage_error = 2, run_failure = 3 };

/// Parsed command line.
struct CliConfig {
  std::string subcommand;
  report::Format format = report::Format::markdown;
  std::optional<std::string> output_path;
  bool quiet = false;

  // list
  std::optional<int> list_table;
  std::optional<std::string> list_flag;

  // run
  std::string method;
  std::string case_id;
  std::optional<double> tolerance;
  std::optional<std::size_t> budget;
  bool trace = false;
  std::string budget_policy = "strict";
  std::optional<double> offset;

  // table
  int table = 0;

  // bounds
  double length = 0;

  // verify
  std::size_t grid_points = 1'000'001;
};

/// Text produced by one command and the exit code it maps to.
struct Outcome {
  std::string text;
  int code = success;
};

namespace detail {

using nlohmann::ordered_json;
using report::Format;
using report::round_trip;
using report::sci3;

inline std::string number(double v, Format format) {
  return format == Format::markdown ? sci3(v) : round_trip(v);
}

inline std::string stop_text(const bench::BenchmarkCase& c) {
  if (c.tolerance) return "eps=" + round_trip(*c.tolerance);
  std::string s = "N=";
  for (std::size_t i = 0; i < c.budgets.size(); ++i)
    s += (i ? "," : "") + std::to_string(c.budgets[i]);
  return s;
}

inline std::string flags_text(const bench::BenchmarkCase& c) {
  std::string s;
  for (auto flag : c.flags) s += (s.empty() ? "" : " ") + std::string(bench::flag_name(flag));
  return s;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

}  // namespace detail

inline Outcome cmd_list(const CliConfig& cfg) {
  using namespace detail;
  std::vector<bench::BenchmarkCase> cases;
  std::optional<bench::CaseFlag> wanted;
  if (cfg.list_flag) {
    wanted = bench::parse_flag(*cfg.list_flag);
    if (!wanted) return {"unknown flag '" + *cfg.list_flag + "'\n", usage_error};
  }
  for (auto& c : bench::registry_all()) {
    if (cfg.list_table && c.table() != *cfg.list_table) continue;
    if (wanted && !c.has(*wanted)) continue;
    cases.push_back(std::move(c));
  }

  std::ostringstream out;
  switch (cfg.format) {
    case Format::markdown:
      out << "| id | f(x) | [a, b] | stop | x* | flags |\n|---|---|---|---|---|---|\n";
      for (const auto& c : cases)
        out << "| " << c.id << " | " << c.expr_label << " | " << report::interval_text(c.interval)
            << " | " << stop_text(c) << " | " << c.x_star_printed << " | " << flags_text(c)
            << " |\n";
      break;
    case Format::csv:
      out << "id,f,lo,hi,stop,x_star,flags\n";
      for (const auto& c : cases)
        out << c.id << ',' << csv_field(c.expr_label) << ',' << round_trip(c.interval.lo()) << ','
            << round_trip(c.interval.hi()) << ',' << csv_field(stop_text(c)) << ','
            << c.x_star_printed << ',' << flags_text(c) << '\n';
      break;
    case Format::json: {
      ordered_json doc = ordered_json::array();
      for (const auto& c : cases) {
        ordered_json j;
        j["id"] = c.id;
        j["f"] = c.expr_label;
        j["interval"] = {c.interval.lo(), c.interval.hi()};
        if (c.tolerance) j["tolerance"] = *c.tolerance;
        if (!c.budgets.empty()) j["budgets"] = c.budgets;
        j["x_star"] = c.x_star_printed;
        ordered_json flags = ordered_json::array();
        for (auto f : c.flags) flags.push_back(std::string(bench::flag_name(f)));
        j["flags"] = flags;
        if (!c.note.empty()) j["note"] = c.note;
        doc.push_back(std::move(j));
      }
      out << doc.dump(2) << '\n';
      break;
    }
  }
  return {out.str(), success};
}

inline std::string render_run(const CliConfig& cfg, const Interval& start, const RunResult& r) {
  using namespace detail;
  const Format fmt = cfg.format;
  std::ostringstream out;
  if (fmt == Format::json) {
    ordered_json j;
    j["method"] = cfg.method;
    j["case"] = cfg.case_id;
    j["x_min"] = r.x_min;
    j["f_min"] = r.f_min;
    j["n_evals"] = r.n_evals;
    j["n_iters"] = r.n_iters;
    j["final_interval"] = {r.final_interval.lo(), r.final_interval.hi()};
    if (cfg.trace) {
      ordered_json trace = ordered_json::array();
      for (const auto& ev : r.trace) {
        ordered_json probes = ordered_json::array();
        for (const auto& p : ev.probes) probes.push_back({p.x, p.f});
        trace.push_back({{"iter", ev.iter},
                         {"interval", {ev.interval_after.lo(), ev.interval_after.hi()}},
                         {"evals", ev.evals_this_iter},
                         {"probes", probes}});
      }
      j["trace"] = std::move(trace);
    }
    out << j.dump(2) << '\n';
    return out.str();
  }

  if (fmt == Format::csv) {
    out << "method,case,x_min,f_min,n_evals,n_iters,lo,hi\n"
        << cfg.method << ',' << cfg.case_id << ',' << round_trip(r.x_min) << ','
        << round_trip(r.f_min) << ',' << r.n_evals << ',' << r.n_iters << ','
        << round_trip(r.final_interval.lo()) << ',' << round_trip(r.final_interval.hi()) << '\n';
  } else {
    out << "| field | value |\n|---|---|\n"
        << "| method | " << cfg.method << " |\n"
        << "| case | " << cfg.case_id << " |\n"
        << "| x_min | " << sci3(r.x_min) << " |\n"
        << "| f_min | " << sci3(r.f_min) << " |\n"
        << "| n_evals | " << r.n_evals << " |\n"
        << "| n_iters | " << r.n_iters << " |\n"
        << "| final_interval | [" << sci3(r.final_interval.lo()) << ", "
        << sci3(r.final_interval.hi()) << "] |\n";
  }
  if (!cfg.trace) return out.str();

  out << '\n';
  if (fmt == Format::csv)
    out << "iter,lo,hi,length,evals,probes\n";
  else
    out << "| iter | lo | hi | length | evals | probes |\n|---|---|---|---|---|---|\n";
  // Row 0 is the starting interval.
  if (fmt == Format::csv)
    out << "0," << round_trip(start.lo()) << ',' << round_trip(start.hi()) << ','
        << round_trip(start.length()) << ",0,\n";
  else
    out << "| 0 | " << sci3(start.lo()) << " | " << sci3(start.hi()) << " | "
        << sci3(start.length()) << " | 0 |  |\n";
  for (const auto& ev : r.trace) {
    std::string probes;
    for (const auto& p : ev.probes)
      probes += (probes.empty() ? "" : " ") + number(p.x, fmt) + ":" + number(p.f, fmt);
    const auto& iv = ev.interval_after;
    if (fmt == Format::csv)
      out << ev.iter << ',' << round_trip(iv.lo()) << ',' << round_trip(iv.hi()) << ','
          << round_trip(iv.length()) << ',' << ev.evals_this_iter << ',' << probes << '\n';
    else
      out << "| " << ev.iter << " | " << sci3(iv.lo()) << " | " << sci3(iv.hi()) << " | "
          << sci3(iv.length()) << " | " << ev.evals_this_iter << " | " << probes << " |\n";
  }
  return out.str();
}

inline Outcome cmd_run(const CliConfig& cfg) {
  const auto kind = parse_method(cfg.method);
  if (!kind) return {"unknown method '" + cfg.method + "'\n", usage_error};
  const auto c = bench::find_case(cfg.case_id);
  if (!c) return {"unknown function id '" + cfg.case_id + "'\n", usage_error};
  if (!cfg.tolerance && !cfg.budget) return {"one of --tol or --budget is required\n", usage_error};
  if (*kind == MethodKind::fibonacci && !cfg.budget)
    return {"Fibonacci requires --budget\n", usage_error};

  BudgetPolicy policy = BudgetPolicy::strict;
  if (cfg.budget_policy == "complete-iteration")
    policy = BudgetPolicy::complete_iteration;
  else if (cfg.budget_policy != "strict")
    return {"unknown budget policy '" + cfg.budget_policy + "'\n", usage_error};

  std::optional<StopRule> stop;
  Method method{*kind, cfg.offset};
  try {
    stop = cfg.tolerance ? StopRule::half_width(*cfg.tolerance)
                         : StopRule::budget(*cfg.budget, policy);
  } catch (const std::invalid_argument& e) {
    return {std::string(e.what()) + "\n", usage_error};
  }

  Objective objective(c->f);
  try {
    return {render_run(cfg, c->interval, minimize(method, objective, c->interval, *stop)), success};
  } catch (const RunFailure& e) {
    return {std::string("run failed: ") + e.what() + "\n", run_failure};
  } catch (const std::invalid_argument& e) {
    return {std::string(e.what()) + "\n", usage_error};
  } catch (const std::exception& e) {
    return {std::string("run failed: ") + e.what() + "\n", run_failure};
  }
}

inline Outcome cmd_table(const CliConfig& cfg) {
  if (cfg.table != 1 && cfg.table != 2) return {"table must be 1 or 2\n", usage_error};
  const unsigned threads = bench::default_threads();
  const auto result = cfg.table == 1 ? bench::run_table1(bench::table1_methods(), std::nullopt, threads)
                                     : bench::run_table2(bench::table2_methods(), threads);
  return {report::emit_report(result, cfg.format), result.all_pass() ? success : run_failure};
}

inline Outcome cmd_bounds(const CliConfig& cfg) {
  using namespace detail;
  if (!cfg.tolerance && !cfg.budget) return {"one of --tol or --budget is required\n", usage_error};
  const MethodKind methods[] = {MethodKind::interval_halving, MethodKind::trichotomy};
  std::ostringstream out;
  try {
    if (cfg.tolerance) {
      if (cfg.format == Format::csv) out << "method,k_paper,k_exact\n";
      if (cfg.format == Format::markdown) out << "| method | k_paper | k_exact |\n|---|---|---|\n";
      ordered_json doc = ordered_json::array();
      for (MethodKind m : methods) {
        const auto b = iteration_bound(m, cfg.length, *cfg.tolerance);
        if (cfg.format == Format::csv)
          out << method_name(m) << ',' << b.k_paper << ',' << b.k_exact << '\n';
        else if (cfg.format == Format::markdown)
          out << "| " << method_name(m) << " | " << b.k_paper << " | " << b.k_exact << " |\n";
        doc.push_back({{"method", method_name(m)}, {"k_paper", b.k_paper}, {"k_exact", b.k_exact}});
      }
      if (cfg.format == Format::json) out << doc.dump(2) << '\n';
    } else {
      if (cfg.format == Format::csv) out << "method,epsilon_bound\n";
      if (cfg.format == Format::markdown) out << "| method | epsilon_bound |\n|---|---|\n";
      ordered_json doc = ordered_json::array();
      for (MethodKind m : methods) {
        const auto b = accuracy_bound(m, cfg.length, *cfg.budget);
        if (cfg.format == Format::csv)
          out << method_name(m) << ',' << round_trip(b.epsilon_bound) << '\n';
        else if (cfg.format == Format::markdown)
          out << "| " << method_name(m) << " | " << sci3(b.epsilon_bound) << " |\n";
        doc.push_back({{"method", method_name(m)}, {"epsilon_bound", b.epsilon_bound}});
      }
      if (cfg.format == Format::json) out << doc.dump(2) << '\n';
    }
  } catch (const std::exception& e) {
    return {std::string(e.what()) + "\n", usage_error};
  }
  return {out.str(), success};
}

inline Outcome cmd_verify(const CliConfig& cfg, std::ostream& err) {
  using namespace detail;
  if (cfg.grid_points < 3) return {"--grid must be at least 3\n", usage_error};
  const auto result = bench::run_oracle_check(cfg.grid_points, 1e-6, 1e-4, bench::default_threads());
  if (result.worst_resolution > result.threshold)
    err << "warning: grid resolution " << sci3(result.worst_resolution)
        << " exceeds the agreement threshold " << sci3(result.threshold) << '\n';

  std::ostringstream out;
  const Format fmt = cfg.format;
  if (fmt == Format::json) {
    ordered_json doc = ordered_json::array();
    for (const auto& r : result.rows) {
      ordered_json j{{"case", r.case_id},      {"method", method_name(r.method)},
                     {"solver_x", r.solver_x}, {"oracle_x", r.oracle_x},
                     {"difference", r.difference}, {"pass", r.pass}};
      if (!r.message.empty()) j["message"] = r.message;
      doc.push_back(std::move(j));
    }
    out << doc.dump(2) << '\n';
  } else {
    if (fmt == Format::csv)
      out << "case,method,solver_x,oracle_x,difference,pass\n";
    else
      out << "| case | method | solver x | oracle x | difference | pass |\n"
             "|---|---|---|---|---|---|\n";
    for (const auto& r : result.rows) {
      const char* verdict = r.pass ? "pass" : "fail";
      if (fmt == Format::csv)
        out << r.case_id << ',' << method_name(r.method) << ',' << round_trip(r.solver_x) << ','
            << round_trip(r.oracle_x) << ',' << round_trip(r.difference) << ',' << verdict << '\n';
      else
        out << "| " << r.case_id << " | " << method_name(r.method) << " | " << sci3(r.solver_x)
            << " | " << sci3(r.oracle_x) << " | " << sci3(r.difference) << " | " << verdict
            << (r.message.empty() ? "" : " (" + r.message + ")") << " |\n";
    }
  }
  return {out.str(), result.all_pass() ? success : run_failure};
}

/// Parses argv and runs one subcommand. Returns 0 on success, 2 on a usage
/// error and 3 when a run or a reproduction check fails.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Derivative-free bracketing minimizers and benchmark tables", "unisearch"};
  app.require_subcommand(1);
  CliConfig cfg;
  std::string format = "markdown";
  std::string out_path;
  app.add_flag("-q,--quiet", cfg.quiet, "Suppress the banner");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "markdown", "md", "json"}));
  };

  auto* list = app.add_subcommand("list", "List registry cases");
  add_common(list);
  list->add_option("--table", cfg.list_table, "Only cases of table 1 or 2")->check(CLI::Range(1, 2));
  list->add_option("--flag", cfg.list_flag, "Only cases carrying this flag");

  auto* run_cmd = app.add_subcommand("run", "Minimize one registry function");
  add_common(run_cmd);
  run_cmd->add_option("method", cfg.method, "halving|trichotomy|dichotomous|golden|fibonacci")
      ->required();
  run_cmd->add_option("id", cfg.case_id, "Registry id, e.g. t1_02")->required();
  auto* tol = run_cmd->add_option("--tol", cfg.tolerance, "Half-width tolerance")
                  ->check(CLI::PositiveNumber);
  auto* bud = run_cmd->add_option("--budget", cfg.budget, "Evaluation budget");
  tol->excludes(bud);
  bud->excludes(tol);
  run_cmd->add_flag("--trace", cfg.trace, "Print one line per iteration");
  run_cmd->add_option("--budget-policy", cfg.budget_policy, "strict|complete-iteration");
  run_cmd->add_option("--offset", cfg.offset, "Dichotomous probe offset")->check(CLI::PositiveNumber);

  auto* table = app.add_subcommand("table", "Reproduce benchmark table 1 or 2");
  add_common(table);
  table->add_option("number", cfg.table, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  table->add_option("--out", out_path, "Write the report to a file");

  auto* bounds = app.add_subcommand("bounds", "Theoretical iteration and accuracy bounds");
  add_common(bounds);
  bounds->add_option("--length", cfg.length, "Initial interval length")
      ->required()
      ->check(CLI::PositiveNumber);
  auto* btol = bounds->add_option("--tol", cfg.tolerance, "Tolerance")->check(CLI::PositiveNumber);
  auto* bbud = bounds->add_option("--budget", cfg.budget, "Evaluations")->check(CLI::PositiveNumber);
  btol->excludes(bbud);
  bbud->excludes(btol);

  auto* verify = app.add_subcommand("verify", "Cross-check every solver against the grid oracle");
  add_common(verify);
  verify->add_option("--grid", cfg.grid_points, "Grid points")->check(CLI::Range(3, 100'000'000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return usage_error;
  }
  cfg.format = *report::parse_format(format);
  if (!out_path.empty()) cfg.output_path = out_path;

  Outcome outcome;
  if (*list) {
    cfg.subcommand = "list";
    outcome = cmd_list(cfg);
  } else if (*run_cmd) {
    cfg.subcommand = "run";
    outcome = cmd_run(cfg);
  } else if (*table) {
    cfg.subcommand = "table";
    if (!cfg.quiet) err << "unisearch: reproducing table " << cfg.table << '\n';
    outcome = cmd_table(cfg);
  } else if (*bounds) {
    cfg.subcommand = "bounds";
    outcome = cmd_bounds(cfg);
  } else {
    cfg.subcommand = "verify";
    if (!cfg.quiet) err << "unisearch: verifying solvers against the grid oracle\n";
    outcome = cmd_verify(cfg, err);
  }

  if (outcome.code == usage_error) {
    err << outcome.text;
    return outcome.code;
  }
  if (cfg.output_path) {
    std::ofstream file(*cfg.output_path, std::ios::binary);
    if (!(file << outcome.text)) {
      err << "cannot write " << *cfg.output_path << '\n';
      return run_failure;
    }
  } else {
    (outcome.code == success || cfg.subcommand != "run" ? out : err) << outcome.text;
  }
  return outcome.code;
}

}  // namespace unisearch::cli
