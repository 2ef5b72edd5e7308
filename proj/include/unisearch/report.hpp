#pragma once

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "unisearch/bench.hpp"

namespace unisearch::report {

enum class Format { csv, markdown, json };

inline std::optional<Format> parse_format(std::string_view name) noexcept {
  if (name == "csv") return Format::csv;
  if (name == "markdown" || name == "md") return Format::markdown;
  if (name == "json") return Format::json;
  return std::nullopt;
}

/// Shortest decimal that reads back to the same double (at most 17 digits).
inline std::string round_trip(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

/// Three significant digits in scientific notation, e.g. 1.23e-03.
inline std::string sci3(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", value);
  return buf;
}

inline std::string interval_text(const Interval& iv) {
  return "[" + round_trip(iv.lo()) + ", " + round_trip(iv.hi()) + "]";
}

inline std::string_view method_symbol(MethodKind method) noexcept {
  switch (method) {
    case MethodKind::interval_halving: return "D";
    case MethodKind::trichotomy: return "T";
    case MethodKind::golden_section: return "Z";
    case MethodKind::fibonacci: return "F";
    case MethodKind::dichotomous: return "S";
  }
  return "?";
}

namespace detail {

using bench::BenchReport;
using bench::BenchRow;
using bench::Verdict;

inline std::string opt(const std::optional<double>& v) { return v ? round_trip(*v) : std::string(); }

inline std::string csv(const BenchReport& report) {
  std::string out = "case,method,n,measured,paper,pass,deviation\n";
  for (const auto& row : report.rows) {
    out += row.case_id;
    out += ',';
    out += method_name(row.method);
    out += ',';
    if (row.n) out += std::to_string(*row.n);
    out += ',' + opt(row.measured) + ',' + opt(row.paper) + ',';
    out += bench::verdict_name(row.verdict);
    out += ',' + opt(row.deviation) + '\n';
  }
  return out;
}

inline std::string json(const BenchReport& report) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json r;
    r["case"] = row.case_id;
    r["method"] = std::string(method_name(row.method));
    r["n"] = row.n ? nlohmann::ordered_json(*row.n) : nlohmann::ordered_json(nullptr);
    r["measured"] = row.measured ? nlohmann::ordered_json(*row.measured) : nullptr;
    r["paper"] = row.paper ? nlohmann::ordered_json(*row.paper) : nullptr;
    r["pass"] = std::string(bench::verdict_name(row.verdict));
    r["deviation"] = row.deviation ? nlohmann::ordered_json(*row.deviation) : nullptr;
    if (row.bound) r["bound"] = *row.bound;
    if (!row.message.empty()) r["message"] = row.message;
    rows.push_back(std::move(r));
  }
  nlohmann::ordered_json doc;
  doc["table"] = report.table;
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

inline std::string cell(const BenchRow& row, bool counts) {
  if (row.verdict == Verdict::error) return "error";
  if (!row.measured) return "-";
  auto number = [counts](double v) {
    return counts ? std::to_string(static_cast<long long>(v)) : sci3(v);
  };
  std::string text = number(*row.measured);
  if (row.paper) text += " / " + number(*row.paper);
  if (row.verdict == Verdict::fail) text += " FAIL";
  return text;
}

// One line per (case, budget) with a column per method, laid out like the
// published tables: measured / published.
inline std::string markdown(const BenchReport& report) {
  std::vector<MethodKind> methods;
  for (const auto& row : report.rows)
    if (std::find(methods.begin(), methods.end(), row.method) == methods.end())
      methods.push_back(row.method);
  std::sort(methods.begin(), methods.end());

  const bool budgets = std::any_of(report.rows.begin(), report.rows.end(),
                                   [](const BenchRow& r) { return r.n.has_value(); });
  std::ostringstream out;
  out << "| case | f(x) | [a, b] | " << (budgets ? "x* | N" : "eps | x*");
  for (MethodKind m : methods) out << " | " << (budgets ? "eps_" : "N_") << method_symbol(m);
  out << " |\n|---|---|---|---|---";
  for (std::size_t i = 0; i < methods.size(); ++i) out << "|---";
  out << "|\n";

  std::vector<std::pair<std::string, std::optional<std::size_t>>> keys;
  for (const auto& row : report.rows) keys.emplace_back(row.case_id, budgets ? row.n : std::nullopt);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  for (const auto& [case_id, n] : keys) {
    const auto info = report.cases.find(case_id);
    out << "| " << case_id << " | ";
    if (info != report.cases.end()) {
      out << info->second.expr_label << " | " << interval_text(info->second.interval) << " | ";
      if (budgets)
        out << info->second.x_star_printed << " | " << (n ? std::to_string(*n) : "");
      else
        out << (info->second.tolerance ? sci3(*info->second.tolerance) : "") << " | "
            << info->second.x_star_printed;
    } else {
      out << " |  |  | " << (n ? std::to_string(*n) : "");
    }
    for (MethodKind m : methods) {
      out << " | ";
      for (const auto& row : report.rows)
        if (row.case_id == case_id && row.method == m && (!budgets || row.n == n))
          out << cell(row, !budgets);
    }
    out << " |\n";
  }
  out << "\npass " << report.count(Verdict::pass) << ", fail " << report.count(Verdict::fail)
      << ", excluded " << report.count(Verdict::excluded) << ", error "
      << report.count(Verdict::error) << "\n";
  return out.str();
}

}  // namespace detail

/// Deterministic serialization. CSV and JSON print round-trippable numbers;
/// markdown mirrors the published table layout with 3 significant digits.
inline std::string emit_report(const bench::BenchReport& report, Format format) {
  switch (format) {
    case Format::csv: return detail::csv(report);
    case Format::json: return detail::json(report);
    case Format::markdown: return detail::markdown(report);
  }
  return {};
}

}  // namespace unisearch::report
