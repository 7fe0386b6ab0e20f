#pragma once

#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "t1m/bundle.hpp"
#include "t1m/expr.hpp"
#include "t1m/fibers.hpp"
#include "t1m/reparam.hpp"
#include "t1m/theorems.hpp"

namespace t1m {

// Flat sectioned key-value scene file:
//   [section]
//   key = value          # trailing comments allowed
struct SceneConfig {
  std::string raw;
  std::map<std::string, std::map<std::string, std::string>> sections;

  bool has(const std::string& sec, const std::string& key) const {
    auto s = sections.find(sec);
    return s != sections.end() && s->second.count(key) > 0;
  }

  std::string get(const std::string& sec, const std::string& key,
                  const std::string& fallback = "") const {
    auto s = sections.find(sec);
    if (s == sections.end()) return fallback;
    auto k = s->second.find(key);
    return k == s->second.end() ? fallback : k->second;
  }

  double get_num(const std::string& sec, const std::string& key, double fallback) const {
    std::string v = get(sec, key);
    if (v.empty()) return fallback;
    return Expression::parse(v, {}).eval({});
  }

  void set(const std::string& sec, const std::string& key, const std::string& value) {
    sections[sec][key] = value;
  }
};

inline SceneConfig parse_scene(const std::string& text) {
  SceneConfig cfg;
  cfg.raw = text;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  auto trim = [](std::string s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw Error(ErrorCode::ConfigError,
                    "line " + std::to_string(lineno) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::ConfigError,
                  "line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (section.empty() || key.empty())
      throw Error(ErrorCode::ConfigError,
                  "line " + std::to_string(lineno) + ": key outside a section");
    cfg.sections[section][key] = value;
  }
  return cfg;
}

struct RunOptions {
  int samples = 512;
  double tol = 1e-6;
  XiConvention conv = XiConvention::Paper2Xh;
  Eq11Variant variant = Eq11Variant::LrPrime;
  std::optional<AngleLaw> law;
};

inline XiConvention parse_xi_convention(const std::string& s) {
  if (s == "paper-2xh") return XiConvention::Paper2Xh;
  if (s == "paper-half") return XiConvention::PaperHalf;
  throw Error(ErrorCode::ConfigError, "unknown xi convention '" + s + "'");
}

inline Eq11Variant parse_eq11_variant(const std::string& s) {
  if (s == "lr-prime") return Eq11Variant::LrPrime;
  if (s == "theta-lprime") return Eq11Variant::ThetaLPrime;
  throw Error(ErrorCode::ConfigError, "unknown eq11 variant '" + s + "'");
}

inline std::optional<AngleLaw> parse_law(const std::string& s) {
  if (s.empty() || s == "auto") return std::nullopt;
  if (s == "cos") return AngleLaw::CosSpan;
  if (s == "cosh") return AngleLaw::CoshSpan;
  if (s == "sinh") return AngleLaw::SinhMixed;
  throw Error(ErrorCode::ConfigError, "unknown angle law '" + s + "'");
}

inline RunOptions run_options(const SceneConfig& cfg) {
  RunOptions ro;
  ro.samples = static_cast<int>(cfg.get_num("run", "samples", 512));
  if (ro.samples < 16) throw Error(ErrorCode::ConfigError, "run.samples must be >= 16");
  ro.tol = cfg.get_num("run", "tol", 1e-6);
  if (!(ro.tol > 0)) throw Error(ErrorCode::ConfigError, "run.tol must be positive");
  ro.conv = parse_xi_convention(cfg.get("run", "xi", "paper-2xh"));
  ro.variant = parse_eq11_variant(cfg.get("run", "eq11", "lr-prime"));
  ro.law = parse_law(cfg.get("run", "law", "auto"));
  return ro;
}

inline SurfaceChart build_chart(const SceneConfig& cfg) {
  std::string type = cfg.get("surface", "type");
  if (type == "flat-lorentz") return make_flat_lorentz();
  if (type == "de-sitter") return make_de_sitter(cfg.get_num("surface", "r", 1.0));
  if (type == "anti-de-sitter") return make_anti_de_sitter();
  if (type == "hyperbolic") return make_hyperbolic();
  if (type == "custom") {
    for (const char* k : {"g11", "g22"})
      if (!cfg.has("surface", k))
        throw Error(ErrorCode::ConfigError, std::string("custom surface needs surface.") + k);
    Expression g11 = Expression::parse(cfg.get("surface", "g11"), {"u", "v"});
    Expression g12 = Expression::parse(cfg.get("surface", "g12", "0"), {"u", "v"});
    Expression g22 = Expression::parse(cfg.get("surface", "g22"), {"u", "v"});
    DomainBox box;
    std::string dom = cfg.get("surface", "domain");
    if (!dom.empty()) {
      if (std::sscanf(dom.c_str(), "%lf:%lf,%lf:%lf", &box.u0, &box.u1, &box.v0, &box.v1) != 4)
        throw Error(ErrorCode::ConfigError, "surface.domain must be u0:u1,v0:v1");
    }
    auto metric = [g11, g12, g22](Vec2 p) {
      Expression::Env env{{"u", p[0]}, {"v", p[1]}};
      return SymMat2{g11.eval(env), g12.eval(env), g22.eval(env)};
    };
    // declared or detected signature
    std::string sig = cfg.get("surface", "signature", "");
    ChartSignature cs;
    if (sig == "lorentzian") {
      cs = ChartSignature::Lorentzian;
    } else if (sig == "riemannian") {
      cs = ChartSignature::Riemannian;
    } else if (sig.empty()) {
      Vec2 mid{0.5 * (box.u0 + box.u1), 0.5 * (box.v0 + box.v1)};
      cs = metric(mid).det() < 0 ? ChartSignature::Lorentzian : ChartSignature::Riemannian;
    } else {
      throw Error(ErrorCode::ConfigError, "surface.signature must be lorentzian or riemannian");
    }
    return make_custom("custom", metric, box, cs);
  }
  throw Error(ErrorCode::ConfigError, "unknown or missing surface.type '" + type + "'");
}

struct BaseCurve {
  CurveFn curve;
  double t0 = 0.0, t1 = 1.0;
};

inline BaseCurve build_base_curve(const SceneConfig& cfg, const SurfaceChart& chart,
                                  std::optional<double> default_speed = std::nullopt) {
  if (!cfg.has("curve", "u") || !cfg.has("curve", "v"))
    throw Error(ErrorCode::ConfigError, "curve.u and curve.v expressions are required");
  Expression ue = Expression::parse(cfg.get("curve", "u"), {"t"});
  Expression ve = Expression::parse(cfg.get("curve", "v"), {"t"});
  std::string range = cfg.get("curve", "range", "0:1");
  double t0 = 0.0, t1 = 1.0;
  if (std::sscanf(range.c_str(), "%lf:%lf", &t0, &t1) != 2 || !(t1 > t0))
    throw Error(ErrorCode::ConfigError, "curve.range must be t0:t1 with t1 > t0");
  CurveFn raw = [ue, ve](double t) { return Vec2{ue.eval1("t", t), ve.eval1("t", t)}; };

  std::optional<double> speed;
  if (cfg.has("curve", "speed")) speed = cfg.get_num("curve", "speed", 2.0);
  else if (default_speed) speed = default_speed;
  if (speed) {
    auto rc = reparametrize_to_speed(chart, raw, t0, t1, *speed);
    return {rc.curve, 0.0, rc.s_end};
  }
  return {raw, t0, t1};
}

inline FieldFn build_fiber(const SceneConfig& cfg, const SurfaceChart& chart,
                           const BaseCurve& base) {
  std::string type = cfg.get("fiber", "type");
  int eps = static_cast<int>(cfg.get_num("fiber", "eps", 1.0));
  int sign = static_cast<int>(cfg.get_num("fiber", "sign", 1.0));
  if (type == "components") {
    Expression x1 = Expression::parse(cfg.get("fiber", "x1", "0"), {"t"});
    Expression x2 = Expression::parse(cfg.get("fiber", "x2", "0"), {"t"});
    return [x1, x2](double t) { return Vec2{x1.eval1("t", t), x2.eval1("t", t)}; };
  }
  if (type == "rapidity") {
    Expression psi = Expression::parse(cfg.get("fiber", "psi", "0"), {"t"});
    return fiber_rapidity(chart, base.curve, [psi](double t) { return psi.eval1("t", t); },
                          eps);
  }
  if (type == "parallel") {
    Vec2 X0{cfg.get_num("fiber", "x01", 0.0), cfg.get_num("fiber", "x02", 1.0)};
    return fiber_parallel(chart, base.curve, base.t0, base.t1, X0);
  }
  if (type == "tangent-scaled") return fiber_tangent_scaled(chart, base.curve);
  if (type == "constant-angle") {
    double L0;
    if (cfg.has("fiber", "L0")) {
      L0 = cfg.get_num("fiber", "L0", 1.0);
    } else {
      double theta0 = cfg.get_num("fiber", "theta0", 0.0);
      auto law = parse_law(cfg.get("fiber", "law", "cosh"));
      L0 = angle_law_value(law.value_or(AngleLaw::CoshSpan), theta0);
    }
    return fiber_constant_angle(chart, base.curve, L0, eps, sign);
  }
  if (type == "slant-ode") {
    double L0 = cfg.get_num("fiber", "L0", 2.0);
    double mu0 = cfg.get_num("fiber", "mu0", 0.0);
    return fiber_slant_ode(chart, base.curve, base.t0, base.t1, L0, mu0);
  }
  if (type == "linear-angle") {
    double a = cfg.get_num("fiber", "a", 1.0);
    double b = cfg.get_num("fiber", "b", 0.0);
    auto law = parse_law(cfg.get("fiber", "law", "cosh")).value_or(AngleLaw::CoshSpan);
    return [chart, base, a, b, law, eps, sign](double t) {
      FrenetApparatus2 fr = frenet2_at(chart, base.curve, t);
      double L = angle_law_value(law, a * t + b);
      double ac = fr.eps1 * L * std::sqrt(std::fabs(1.0 + fr.kappa * fr.kappa * fr.eps2 * eps));
      double b2 = eps * fr.eps2 - ac * ac * fr.eps1 * fr.eps2;
      if (b2 < -1e-12)
        throw Error(ErrorCode::ImaginaryBeta, "linear-angle fiber leaves the causal region");
      return ac * fr.T + (sign * std::sqrt(std::max(b2, 0.0))) * fr.N;
    };
  }
  if (type == "frame-combo") {
    double a = cfg.get_num("fiber", "a", 0.0);
    double b = cfg.get_num("fiber", "b", 1.0);
    return fiber_frame_combo(chart, base.curve, a, b);
  }
  throw Error(ErrorCode::ConfigError, "unknown or missing fiber.type '" + type + "'");
}

struct BuiltScene {
  SurfaceChart chart;
  BaseCurve base;
  LiftedCurve lift;
  RunOptions run;
};

inline BuiltScene build_scene(const SceneConfig& cfg,
                              std::optional<double> default_speed = std::nullopt) {
  BuiltScene out{build_chart(cfg), {}, {}, run_options(cfg)};
  out.base = build_base_curve(cfg, out.chart, default_speed);
  FieldFn fiber = build_fiber(cfg, out.chart, out.base);
  LiftOptions lo;
  out.lift = lift_curve(out.chart, out.base.curve, fiber, out.base.t0, out.base.t1, lo);
  return out;
}

inline GeometricSetup build_geometric_setup(const SceneConfig& cfg) {
  // theorem statements assume base velocity 2 unless the scene overrides it
  BuiltScene scene = build_scene(cfg, 2.0);
  GeometricSetup su{scene.lift, std::min(scene.run.samples, 96), scene.run.tol,
                    scene.run.conv, scene.run.law};
  su.lin_a = cfg.get_num("fiber", "a", 1.0);
  su.lin_b = cfg.get_num("fiber", "b", 0.0);
  return su;
}

}  // namespace t1m
