#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "t1m/classify.hpp"

namespace t1m {

struct TheoremCheck {
  std::string name;
  bool holds = false;
  double residual = 0.0;
  double fitted_c = 0.0;
  std::string branch;           // "+" or "-" where a sign choice applies
  std::string oracle_verdict;   // classification by the Frenet oracle
  bool consistent = true;       // predicate side agrees with the oracle side
  std::string notes;
  std::vector<SampleRow> witnesses;
};

struct GeometricSetup {
  LiftedCurve lift;
  int grid = 48;
  double tol = 1e-6;
  XiConvention conv = XiConvention::Paper2Xh;
  std::optional<AngleLaw> law;
  double lin_a = 1.0, lin_b = 0.0;  // linear-angle parameters where assumed
};

namespace detail {

struct TheoremSamples {
  std::vector<double> s, L, theta, dLds, kappa_t, kappa, sigma, oracle;
  bool oracle_ok = true;
  AngleLaw law = AngleLaw::CosSpan;
  Verdicts verdicts;
};

inline TheoremSamples sample_lift(const GeometricSetup& su) {
  const LiftedCurve& lc = su.lift;
  TheoremSamples out;
  double margin = std::max(0.01 * lc.s_end, 12.0 * lc.h_field);
  double a = margin, b = lc.s_end - margin;
  for (int i = 0; i < su.grid; ++i) {
    double s = a + (b - a) * i / double(su.grid - 1);
    out.s.push_back(s);
    AngleSample as = tangent_reeb(lc, s, su.conv, su.law);
    out.L.push_back(as.L);
    out.theta.push_back(as.theta);
    out.law = as.law;
    out.dLds.push_back(dL_ds(lc, s, su.conv));
    double t = lc.t_of_s(s);
    FrenetApparatus2 fr = frenet2_at(lc.chart, lc.gamma, t);
    out.kappa.push_back(fr.kappa);
    out.sigma.push_back(curvature_at(lc.chart, lc.gamma(t)).sigma);
    BundleCurveSpace space(lc);
    auto f3 = frenet3_at(space, s, Frenet3Options{1e-7, false});
    out.kappa_t.push_back(f3.kappa);
    try {
      out.oracle.push_back(normal_reeb_oracle(lc, s, su.conv));
    } catch (const Error&) {
      out.oracle_ok = false;
    }
  }
  out.verdicts = verdicts_from_samples(out.L, out.oracle, out.oracle_ok, su.tol);
  return out;
}

inline double maxdev(const std::vector<double>& xs, double& mean) {
  mean = 0.0;
  for (double x : xs) mean += x;
  mean /= double(xs.size());
  double d = 0.0;
  for (double x : xs) d = std::max(d, std::fabs(x - mean));
  return d;
}

inline std::string verdict_string(const Verdicts& v) {
  std::string s = to_string(v.tangent);
  s += "/";
  s += to_string(v.normal);
  return s;
}

}  // namespace detail

// All slant and legendre non-geodesic lifts over the unit de Sitter chart
// have vanishing normal-Reeb pairing.
inline TheoremCheck verify_prop3(const GeometricSetup& su) {
  detail::TheoremSamples ts = detail::sample_lift(su);
  TheoremCheck out;
  out.name = "prop3";
  double m = 0.0;
  for (double o : ts.oracle) m = std::max(m, std::fabs(o));
  out.residual = m;
  bool premise = ts.verdicts.tangent != TangentVerdict::None;
  out.holds = ts.oracle_ok && premise && m < std::max(su.tol, 1e-5);
  out.oracle_verdict = detail::verdict_string(ts.verdicts);
  out.consistent = out.holds == (ts.verdicts.normal == NormalVerdict::NLegendre);
  out.notes = premise ? "premise: tangent verdict is slant or legendre"
                      : "premise violated: lift is not slant";
  return out;
}

// Non-slant curves over de Sitter are normal-slant exactly when the angle is
// the inverse law of c * integral of kappa~; equivalently L is affine in the
// cumulative integral of kappa~.
inline TheoremCheck verify_thm4(const GeometricSetup& su) {
  detail::TheoremSamples ts = detail::sample_lift(su);
  TheoremCheck out;
  out.name = "thm4";
  int n = int(ts.s.size());
  std::vector<double> J(n, 0.0);
  for (int i = 1; i < n; ++i)
    J[i] = J[i - 1] + 0.5 * (ts.kappa_t[i] + ts.kappa_t[i - 1]) * (ts.s[i] - ts.s[i - 1]);
  // least-squares affine fit L = alpha J + beta
  double sj = 0, sl = 0, sjj = 0, sjl = 0;
  for (int i = 0; i < n; ++i) {
    sj += J[i];
    sl += ts.L[i];
    sjj += J[i] * J[i];
    sjl += J[i] * ts.L[i];
  }
  double det = n * sjj - sj * sj;
  double alpha = (n * sjl - sj * sl) / det;
  double beta = (sjj * sl - sj * sjl) / det;
  double res = 0.0, scale = 1.0;
  for (int i = 0; i < n; ++i) {
    res = std::max(res, std::fabs(ts.L[i] - alpha * J[i] - beta));
    scale = std::max(scale, std::fabs(ts.L[i]));
  }
  out.fitted_c = alpha;
  out.residual = res;
  bool ode_side = res < su.tol * scale * 10.0;
  bool nslant = ts.verdicts.normal == NormalVerdict::NSlant;
  out.consistent = ode_side == nslant;
  out.holds = out.consistent;
  out.oracle_verdict = detail::verdict_string(ts.verdicts);
  out.notes = std::string("law ") + to_string(ts.law) + (ode_side ? "; L affine in int(kappa~)"
                                                                  : "; L not affine in int(kappa~)");
  if (ts.verdicts.tangent != TangentVerdict::None)
    out.notes += "; premise violated: curve is slant";
  return out;
}

// Over a base that is not de Sitter, a slant lift is normal-slant iff
// (1 - sigma) kappa / kappa~ is a nonzero constant.
inline TheoremCheck verify_prop5(const GeometricSetup& su) {
  detail::TheoremSamples ts = detail::sample_lift(su);
  TheoremCheck out;
  out.name = "prop5";
  std::vector<double> ratio(ts.s.size());
  for (size_t i = 0; i < ts.s.size(); ++i)
    ratio[i] = (1.0 - ts.sigma[i]) * ts.kappa[i] / ts.kappa_t[i];
  double mean = 0.0;
  double dev = detail::maxdev(ratio, mean);
  out.fitted_c = mean;
  out.residual = dev;
  bool ratio_side = dev < su.tol * std::max(1.0, std::fabs(mean)) * 10.0 &&
                    std::fabs(mean) > su.tol;
  bool nslant = ts.verdicts.normal == NormalVerdict::NSlant;
  out.consistent = ratio_side == nslant;
  out.holds = out.consistent;
  out.oracle_verdict = detail::verdict_string(ts.verdicts);
  out.notes = ts.verdicts.tangent == TangentVerdict::Slant
                  ? "premise: slant lift"
                  : "premise violated: lift is not slant";
  return out;
}

// theta' = kappa sigma_bar for normal-legendre lifts of velocity-2 bases.
inline TheoremCheck verify_thm6_legendre(const GeometricSetup& su) {
  detail::TheoremSamples ts = detail::sample_lift(su);
  TheoremCheck out;
  out.name = "thm6-legendre";
  double res = 0.0, scale = 1.0;
  for (size_t i = 0; i < ts.s.size(); ++i) {
    double lp = angle_law_derivative(ts.law, ts.theta[i]);
    if (std::fabs(lp) < 1e-8) continue;  // theta' undefined at stationary law points
    double thetap = ts.dLds[i] / lp;
    double want = ts.kappa[i] * sigma_bar(ts.sigma[i]);
    res = std::max(res, std::fabs(thetap - want));
    scale = std::max(scale, std::fabs(want));
  }
  out.residual = res;
  bool pred = res < su.tol * scale * 10.0;
  bool nleg = ts.verdicts.normal == NormalVerdict::NLegendre;
  out.consistent = pred == nleg;
  out.holds = out.consistent;
  out.oracle_verdict = detail::verdict_string(ts.verdicts);
  return out;
}

// L' +- kappa sigma_bar L = c kappa~ for normal-slant lifts.
inline TheoremCheck verify_thm6_slant(const GeometricSetup& su) {
  detail::TheoremSamples ts = detail::sample_lift(su);
  TheoremCheck out;
  out.name = "thm6-slant";
  double best = 1e300;
  for (int sgn : {+1, -1}) {
    std::vector<double> cs(ts.s.size());
    for (size_t i = 0; i < ts.s.size(); ++i) {
      double sb = sigma_bar(ts.sigma[i]);
      cs[i] = (ts.dLds[i] + sgn * ts.kappa[i] * sb * ts.L[i]) / ts.kappa_t[i];
    }
    double mean = 0.0;
    double res = 0.0;
    detail::maxdev(cs, mean);
    for (size_t i = 0; i < ts.s.size(); ++i) {
      double sb = sigma_bar(ts.sigma[i]);
      res = std::max(res, std::fabs(ts.dLds[i] + sgn * ts.kappa[i] * sb * ts.L[i] -
                                    mean * ts.kappa_t[i]));
    }
    if (res < best) {
      best = res;
      out.fitted_c = mean;
      out.branch = sgn > 0 ? "+" : "-";
    }
  }
  out.residual = best;
  bool pred = best < su.tol * 10.0;
  bool nslant = ts.verdicts.normal == NormalVerdict::NSlant;
  out.consistent = pred == nslant;
  out.holds = out.consistent;
  out.oracle_verdict = detail::verdict_string(ts.verdicts);
  return out;
}

// (1 - sigma)(a +- 4 kappa) = a/16 on direct numbers (linear angle theta = at+b).
inline TheoremCheck verify_thm8_abstract(double a, double sigma, double kappa, double tol) {
  TheoremCheck out;
  out.name = "thm8";
  double rm = std::fabs((1.0 - sigma) * (a - 4.0 * kappa) - a / 16.0);
  double rp = std::fabs((1.0 - sigma) * (a + 4.0 * kappa) - a / 16.0);
  out.branch = rm <= rp ? "-" : "+";
  out.residual = std::min(rm, rp);
  out.holds = out.residual < tol;
  out.notes = "minus branch residual " + std::to_string(rm) + ", plus branch residual " +
              std::to_string(rp);
  return out;
}

// Same predicate sampled along a configured lift with linear angle.
inline TheoremCheck verify_thm8(const GeometricSetup& su) {
  detail::TheoremSamples ts = detail::sample_lift(su);
  TheoremCheck out;
  out.name = "thm8";
  double best = 1e300;
  for (int sgn : {+1, -1}) {
    double res = 0.0;
    for (size_t i = 0; i < ts.s.size(); ++i)
      res = std::max(res, std::fabs((1.0 - ts.sigma[i]) * (su.lin_a + sgn * 4.0 * ts.kappa[i]) -
                                    su.lin_a / 16.0));
    if (res < best) {
      best = res;
      out.branch = sgn > 0 ? "+" : "-";
    }
  }
  out.residual = best;
  bool pred = best < su.tol * 10.0;
  bool nleg = ts.verdicts.normal == NormalVerdict::NLegendre;
  out.consistent = pred == nleg;
  out.holds = out.consistent;
  out.oracle_verdict = detail::verdict_string(ts.verdicts);
  return out;
}

// theta equals the inverse angle law of c kappa~ / (a + 16 (sigma - 1)(a +- 4 kappa)).
inline TheoremCheck verify_thm12(const GeometricSetup& su) {
  detail::TheoremSamples ts = detail::sample_lift(su);
  TheoremCheck out;
  out.name = "thm12";
  double best = 1e300;
  for (int sgn : {+1, -1}) {
    // fit c from the law value itself
    std::vector<double> cs;
    bool usable = true;
    for (size_t i = 0; i < ts.s.size(); ++i) {
      double denom = su.lin_a +
                     16.0 * (ts.sigma[i] - 1.0) * (su.lin_a + sgn * 4.0 * ts.kappa[i]);
      if (std::fabs(denom) < 1e-12 || ts.kappa_t[i] < 1e-12) {
        usable = false;
        break;
      }
      double lawval;
      switch (ts.law) {
        case AngleLaw::CosSpan: lawval = std::sin(ts.theta[i]); break;
        case AngleLaw::SinhMixed: lawval = std::sinh(ts.theta[i]); break;
        case AngleLaw::CoshSpan: lawval = std::cosh(ts.theta[i]); break;
      }
      cs.push_back(lawval * denom / ts.kappa_t[i]);
    }
    if (!usable) continue;
    double mean = 0.0;
    detail::maxdev(cs, mean);
    double res = 0.0;
    for (size_t i = 0; i < ts.s.size(); ++i) {
      double denom = su.lin_a +
                     16.0 * (ts.sigma[i] - 1.0) * (su.lin_a + sgn * 4.0 * ts.kappa[i]);
      double arg = mean * ts.kappa_t[i] / denom;
      double theta_pred;
      switch (ts.law) {
        case AngleLaw::CosSpan:
          if (std::fabs(arg) > 1.0) arg = std::copysign(1.0, arg);
          theta_pred = std::asin(arg);
          break;
        case AngleLaw::SinhMixed: theta_pred = std::asinh(arg); break;
        case AngleLaw::CoshSpan: theta_pred = std::acosh(std::max(arg, 1.0)); break;
      }
      res = std::max(res, std::fabs(ts.theta[i] - theta_pred));
    }
    if (res < best) {
      best = res;
      out.fitted_c = mean;
      out.branch = sgn > 0 ? "+" : "-";
    }
  }
  out.residual = best;
  bool pred = best < su.tol * 10.0;
  bool nslant = ts.verdicts.normal == NormalVerdict::NSlant;
  out.consistent = pred == nslant;
  out.holds = out.consistent;
  out.oracle_verdict = detail::verdict_string(ts.verdicts);
  out.notes = std::string("law ") + to_string(ts.law);
  return out;
}

inline TheoremCheck verify_theorem(const std::string& name, const GeometricSetup& su) {
  if (name == "prop3") return verify_prop3(su);
  if (name == "thm4") return verify_thm4(su);
  if (name == "prop5") return verify_prop5(su);
  if (name == "thm6-legendre") return verify_thm6_legendre(su);
  if (name == "thm6-slant") return verify_thm6_slant(su);
  if (name == "thm8") return verify_thm8(su);
  if (name == "thm12") return verify_thm12(su);
  throw Error(ErrorCode::ConfigError, "unknown theorem check '" + name + "'");
}

// The worked example pins kappa = (15/64) a for the flat predicate; under
// sigma = -1 the same predicate needs kappa = (31/128) a instead. The audit
// evaluates both and flags the inconsistency.
struct Example11Audit {
  double a = 0.0;
  double residual_flat = 0.0;      // sigma = 0 with kappa = 15a/64
  double residual_ads = 0.0;       // sigma = -1 with kappa = 15a/64
  double kappa_claimed = 0.0;      // 15a/64
  double kappa_consistent_ads = 0.0;  // 31a/128
  bool flags_inconsistency = false;
};

inline Example11Audit audit_example11(double a, double tol = 1e-9) {
  Example11Audit out;
  out.a = a;
  out.kappa_claimed = 15.0 * a / 64.0;
  out.kappa_consistent_ads = 31.0 * a / 128.0;
  out.residual_flat = verify_thm8_abstract(a, 0.0, out.kappa_claimed, tol).residual;
  out.residual_ads = verify_thm8_abstract(a, -1.0, out.kappa_claimed, tol).residual;
  out.flags_inconsistency = out.residual_flat < tol && out.residual_ads > tol;
  return out;
}

}  // namespace t1m
