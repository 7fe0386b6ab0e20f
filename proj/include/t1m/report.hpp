#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "t1m/classify.hpp"
#include "t1m/scene.hpp"
#include "t1m/theorems.hpp"

namespace t1m {

using ordered_json = nlohmann::ordered_json;

inline std::string fnv1a64_hex(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 0; i < 16; ++i) out[i] = hex[(h >> (60 - 4 * i)) & 0xF];
  return out;
}

struct ErrorRecord {
  std::string code;
  std::string message;
};

struct RunReport {
  int schema = 1;
  std::string version = "0.1.0";
  std::string command;
  std::string config_hash;
  XiConvention xi = XiConvention::Paper2Xh;
  Eq11Variant variant = Eq11Variant::LrPrime;
  std::optional<SlantReport> slant;
  std::vector<TheoremCheck> checks;
  std::optional<Example11Audit> example11;
  std::vector<ErrorRecord> errors;
};

// every numeric entering a report must be finite; absent values are omitted
inline double finite_or_throw(double x, const char* what) {
  if (!std::isfinite(x))
    throw Error(ErrorCode::OutOfRange, std::string("non-finite value in report field ") + what);
  return x;
}

inline ordered_json to_json(const SlantReport& r) {
  ordered_json j;
  j["verdicts"] = {
      {"tangent", to_string(r.verdicts.tangent)},
      {"tangent_constant", finite_or_throw(r.verdicts.slant_c, "tangent_constant")},
      {"tangent_residual", finite_or_throw(r.verdicts.slant_residual, "tangent_residual")},
      {"normal", to_string(r.verdicts.normal)},
      {"normal_constant", finite_or_throw(r.verdicts.nslant_c, "normal_constant")},
      {"normal_residual", finite_or_throw(r.verdicts.nslant_residual, "normal_residual")},
  };
  j["xi_convention"] = to_string(r.xi_convention);
  j["eq11_variant"] = to_string(r.eq11_variant);
  j["tol"] = r.tol;
  j["discrepancy"] = {{"abs", finite_or_throw(r.discrepancy_abs, "discrepancy.abs")},
                      {"rel", finite_or_throw(r.discrepancy_rel, "discrepancy.rel")}};
  ordered_json samples = ordered_json::array();
  for (const auto& row : r.samples) {
    ordered_json s;
    s["s"] = finite_or_throw(row.s, "sample.s");
    if (row.L) s["L"] = finite_or_throw(*row.L, "sample.L");
    if (row.theta) s["theta"] = finite_or_throw(*row.theta, "sample.theta");
    if (row.oracle) s["normal_reeb_oracle"] = finite_or_throw(*row.oracle, "sample.oracle");
    if (row.closed) s["normal_reeb_closed"] = finite_or_throw(*row.closed, "sample.closed");
    if (!row.marker.empty()) s["marker"] = row.marker;
    samples.push_back(std::move(s));
  }
  j["samples"] = std::move(samples);
  ordered_json devs = ordered_json::array();
  for (const auto& d : r.deviations)
    devs.push_back({{"kind", d.kind},
                    {"max_abs", finite_or_throw(d.max_abs, "deviation.max_abs")},
                    {"max_rel", finite_or_throw(d.max_rel, "deviation.max_rel")},
                    {"note", d.note}});
  j["deviations"] = std::move(devs);
  return j;
}

inline ordered_json to_json(const TheoremCheck& c) {
  ordered_json j;
  j["name"] = c.name;
  j["holds"] = c.holds;
  j["residual"] = finite_or_throw(c.residual, "check.residual");
  j["fitted_c"] = finite_or_throw(c.fitted_c, "check.fitted_c");
  if (!c.branch.empty()) j["branch"] = c.branch;
  if (!c.oracle_verdict.empty()) j["oracle_verdict"] = c.oracle_verdict;
  j["consistent"] = c.consistent;
  if (!c.notes.empty()) j["notes"] = c.notes;
  return j;
}

inline ordered_json to_json(const Example11Audit& a) {
  return ordered_json{{"a", a.a},
                      {"kappa_claimed", a.kappa_claimed},
                      {"residual_sigma0", a.residual_flat},
                      {"residual_sigma_minus1", a.residual_ads},
                      {"kappa_consistent_sigma_minus1", a.kappa_consistent_ads},
                      {"flags_inconsistency", a.flags_inconsistency}};
}

inline ordered_json to_json(const RunReport& r) {
  ordered_json j;
  j["schema"] = r.schema;
  j["version"] = r.version;
  j["command"] = r.command;
  j["config_hash"] = r.config_hash;
  j["conventions"] = {{"xi", to_string(r.xi)}, {"eq11", to_string(r.variant)}};
  if (r.slant) j["slant_report"] = to_json(*r.slant);
  if (!r.checks.empty()) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : r.checks) arr.push_back(to_json(c));
    j["checks"] = std::move(arr);
  }
  if (r.example11) j["example11"] = to_json(*r.example11);
  ordered_json errs = ordered_json::array();
  for (const auto& e : r.errors) errs.push_back({{"code", e.code}, {"message", e.message}});
  j["errors"] = std::move(errs);
  return j;
}

// CSV with '.' decimals, ',' separators and a header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string str() const {
    std::string out;
    for (size_t i = 0; i < header.size(); ++i) {
      out += header[i];
      out += i + 1 < header.size() ? "," : "\n";
    }
    for (const auto& row : rows) {
      for (size_t i = 0; i < row.size(); ++i) {
        out += row[i];
        out += i + 1 < row.size() ? "," : "\n";
      }
    }
    return out;
  }
};

inline std::string csv_num(double x) {
  finite_or_throw(x, "csv cell");
  char buf[40];
  auto r = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, r.ptr);
}

}  // namespace t1m
