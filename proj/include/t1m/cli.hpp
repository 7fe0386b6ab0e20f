#pragma once

#include <optional>
#include <string>
#include <vector>

#include "t1m/report.hpp"
#include "t1m/scene.hpp"

namespace t1m {

struct CliOverrides {
  std::optional<int> samples;
  std::optional<double> tol;
  std::optional<std::string> xi;
  std::string format = "json";
};

struct CommandResult {
  RunReport report;
  std::string output;
  int exit_code = 0;
};

namespace detail {

inline void apply_overrides(SceneConfig& cfg, const CliOverrides& ov) {
  if (ov.samples) cfg.set("run", "samples", std::to_string(*ov.samples));
  if (ov.tol) cfg.set("run", "tol", csv_num(*ov.tol));
  if (ov.xi) cfg.set("run", "xi", *ov.xi);
}

inline int exit_code_for_markers(const SlantReport& rep) {
  for (const auto& row : rep.samples)
    if (!row.marker.empty()) return 3;
  return 0;
}

inline CsvTable samples_csv(const SlantReport& rep) {
  CsvTable t;
  t.header = {"s", "L", "theta", "normal_reeb_oracle", "normal_reeb_closed", "marker"};
  for (const auto& row : rep.samples) {
    std::vector<std::string> r;
    r.push_back(csv_num(row.s));
    r.push_back(row.L ? csv_num(*row.L) : "");
    r.push_back(row.theta ? csv_num(*row.theta) : "");
    r.push_back(row.oracle ? csv_num(*row.oracle) : "");
    r.push_back(row.closed ? csv_num(*row.closed) : "");
    r.push_back(row.marker);
    t.rows.push_back(std::move(r));
  }
  return t;
}

}  // namespace detail

inline CommandResult run_classify(SceneConfig cfg, const CliOverrides& ov) {
  detail::apply_overrides(cfg, ov);
  RunOptions ro = run_options(cfg);
  CommandResult out;
  out.report.command = "classify";
  out.report.config_hash = fnv1a64_hex(cfg.raw);
  out.report.xi = ro.conv;
  out.report.variant = ro.variant;

  BuiltScene scene = build_scene(cfg);
  ClassifyOptions co;
  co.grid = ro.samples;
  co.tol = ro.tol;
  co.conv = ro.conv;
  co.variant = ro.variant;
  co.law_override = ro.law;
  SlantReport rep = classify(scene.lift, co);
  out.exit_code = detail::exit_code_for_markers(rep);
  if (out.exit_code == 3)
    out.report.errors.push_back({"NumericalMarkers", "some samples carry error markers"});
  out.report.slant = std::move(rep);
  out.output = ov.format == "csv" ? detail::samples_csv(*out.report.slant).str()
                                  : to_json(out.report).dump(2) + "\n";
  return out;
}

inline TheoremCheck run_named_check(const std::string& name, const SceneConfig& cfg) {
  bool abstract_mode = cfg.get("verify", "mode") == "abstract";
  if (name == "thm8" && abstract_mode) {
    double a = cfg.get_num("verify", "a", cfg.get_num("fiber", "a", 1.0));
    double sigma = cfg.get_num("verify", "sigma", 0.0);
    Expression kap = Expression::parse(cfg.get("verify", "kappa", "0"), {"a"});
    double tol = cfg.get_num("run", "tol", 1e-6);
    return verify_thm8_abstract(a, sigma, kap.eval1("a", a), tol);
  }
  if (abstract_mode)
    throw Error(ErrorCode::ConfigError, "abstract mode is only available for thm8");
  return verify_theorem(name, build_geometric_setup(cfg));
}

inline CommandResult run_verify(const std::string& name, SceneConfig cfg,
                                const CliOverrides& ov) {
  detail::apply_overrides(cfg, ov);
  RunOptions ro = run_options(cfg);
  CommandResult out;
  out.report.command = "verify " + name;
  out.report.config_hash = fnv1a64_hex(cfg.raw);
  out.report.xi = ro.conv;
  out.report.variant = ro.variant;

  TheoremCheck check = run_named_check(name, cfg);
  bool holds = check.holds;
  out.report.checks.push_back(std::move(check));
  if (name == "thm8") {
    double a = cfg.get_num("verify", "a", cfg.get_num("fiber", "a", 1.0));
    out.report.example11 = audit_example11(a);
  }
  out.exit_code = holds ? 0 : 1;
  out.output = to_json(out.report).dump(2) + "\n";
  return out;
}

struct SweepRange {
  double start = 0.0, stop = 1.0, step = 0.25;
};

inline SweepRange parse_sweep_range(const std::string& text) {
  SweepRange r;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &r.start, &r.stop, &r.step) != 3 ||
      !(r.step > 0.0) || r.stop < r.start)
    throw Error(ErrorCode::ConfigError, "sweep range must be start:stop:step with step > 0");
  return r;
}

inline void set_sweep_param(SceneConfig& cfg, const std::string& param, double value) {
  std::string sec, key;
  auto dot = param.find('.');
  if (dot != std::string::npos) {
    sec = param.substr(0, dot);
    key = param.substr(dot + 1);
  } else {
    key = param;
    for (const char* cand : {"verify", "fiber", "curve", "surface"}) {
      if (cfg.has(cand, key)) {
        sec = cand;
        break;
      }
    }
    if (sec.empty()) sec = cfg.sections.count("verify") ? "verify" : "fiber";
  }
  cfg.set(sec, key, csv_num(value));
}

inline CommandResult run_sweep(const std::string& param, const std::string& range_text,
                               SceneConfig cfg, const CliOverrides& ov) {
  detail::apply_overrides(cfg, ov);
  SweepRange range = parse_sweep_range(range_text);
  std::string check_name = cfg.get("verify", "name");

  CommandResult out;
  out.report.command = "sweep " + param + " " + range_text;
  out.report.config_hash = fnv1a64_hex(cfg.raw);
  RunOptions ro = run_options(cfg);
  out.report.xi = ro.conv;
  out.report.variant = ro.variant;

  CsvTable table;
  bool any_fail = false, any_error = false;
  ordered_json jrows = ordered_json::array();
  if (!check_name.empty()) {
    table.header = {param, "residual", "holds", "branch", "fitted_c", "consistent"};
    for (double v = range.start; v <= range.stop + 1e-12; v += range.step) {
      SceneConfig row_cfg = cfg;
      set_sweep_param(row_cfg, param, v);
      try {
        TheoremCheck c = run_named_check(check_name, row_cfg);
        any_fail |= !c.holds;
        table.rows.push_back({csv_num(v), csv_num(c.residual), c.holds ? "1" : "0", c.branch,
                              csv_num(c.fitted_c), c.consistent ? "1" : "0"});
        ordered_json j = to_json(c);
        j[param] = v;
        jrows.push_back(std::move(j));
        out.report.checks.push_back(std::move(c));
      } catch (const Error& e) {
        any_error = true;
        table.rows.push_back({csv_num(v), "", "", "", "", ""});
        out.report.errors.push_back({error_code_name(e.code()), e.what()});
      }
    }
  } else {
    table.header = {param,
                    "tangent",
                    "normal",
                    "tangent_constant",
                    "normal_constant",
                    "discrepancy_rel"};
    for (double v = range.start; v <= range.stop + 1e-12; v += range.step) {
      SceneConfig row_cfg = cfg;
      set_sweep_param(row_cfg, param, v);
      try {
        BuiltScene scene = build_scene(row_cfg);
        ClassifyOptions co;
        co.grid = std::min(ro.samples, 128);
        co.tol = ro.tol;
        co.conv = ro.conv;
        co.variant = ro.variant;
        co.law_override = ro.law;
        SlantReport rep = classify(scene.lift, co);
        any_error |= detail::exit_code_for_markers(rep) != 0;
        table.rows.push_back({csv_num(v), to_string(rep.verdicts.tangent),
                              to_string(rep.verdicts.normal), csv_num(rep.verdicts.slant_c),
                              csv_num(rep.verdicts.nslant_c),
                              csv_num(rep.discrepancy_rel)});
        ordered_json j;
        j[param] = v;
        j["tangent"] = to_string(rep.verdicts.tangent);
        j["normal"] = to_string(rep.verdicts.normal);
        jrows.push_back(std::move(j));
      } catch (const Error& e) {
        any_error = true;
        out.report.errors.push_back({error_code_name(e.code()), e.what()});
      }
    }
  }
  out.exit_code = any_error ? 3 : (any_fail ? 1 : 0);
  if (ov.format == "json") {
    ordered_json j = to_json(out.report);
    j["rows"] = std::move(jrows);
    out.output = j.dump(2) + "\n";
  } else {
    out.output = table.str();
  }
  return out;
}

}  // namespace t1m
