#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "t1m/bundle.hpp"
#include "t1m/error.hpp"
#include "t1m/frenet.hpp"
#include "t1m/lorentz.hpp"
#include "t1m/numdiff.hpp"

namespace t1m {

// Sample of the tangent/Reeb pairing: L = g1(T~, xi) together with the
// Lorentzian angle in the causal configuration of T~ and xi. `mirrored`
// marks same-character pairs with L <= -1, where the cosh law applies to -L.
struct AngleSample {
  double s = 0.0;
  AngleLaw law = AngleLaw::CosSpan;
  double L = 0.0;       // in the requested xi convention
  double theta = 0.0;
  bool mirrored = false;
};

inline AngleLaw select_angle_law(int eps_T, int eps_xi, double L_unit, double law_tol,
                                 bool& mirrored) {
  mirrored = false;
  if (eps_T != eps_xi) return AngleLaw::SinhMixed;
  if (L_unit >= 1.0 + law_tol) return AngleLaw::CoshSpan;
  if (L_unit <= -1.0 - law_tol) {
    mirrored = true;
    return AngleLaw::CoshSpan;
  }
  if (eps_T > 0) return AngleLaw::CosSpan;
  // same-character timelike pair with |L| < 1: negative-definite span,
  // outside the three-law trichotomy
  throw Error(ErrorCode::LawMismatch,
              "timelike pair spans a negative-definite plane; no angle law applies");
}

inline AngleSample tangent_reeb(const LiftedCurve& lc, double s,
                                XiConvention conv = XiConvention::Paper2Xh,
                                std::optional<AngleLaw> law_override = std::nullopt,
                                double law_tol = 1e-7) {
  BundleTangent T = lc.unit_tangent_s(s);
  ContactData cd = contact_at(lc.chart, lc.point_s(s), conv);
  double L = sasaki_inner(lc.chart, T, cd.xi, /*scaled=*/true);
  // angles are defined against the unit-Reeb scaling; paper-half rescales L by 1/4
  double L_unit = conv == XiConvention::Paper2Xh ? L : 4.0 * L;

  AngleSample out;
  out.s = s;
  out.L = L;
  int eps_T = lc.lift_sign, eps_xi = lc.eps_X;
  AngleLaw law;
  if (law_override) {
    law = *law_override;
  } else {
    law = select_angle_law(eps_T, eps_xi, L_unit, law_tol, out.mirrored);
  }
  double v = out.mirrored ? -L_unit : L_unit;
  switch (law) {
    case AngleLaw::CosSpan:
      if (std::fabs(v) > 1.0 + law_tol)
        throw Error(ErrorCode::LawMismatch, "value outside the cos law range");
      v = std::clamp(v, -1.0, 1.0);
      break;
    case AngleLaw::CoshSpan:
      if (v < 1.0 - law_tol)
        throw Error(ErrorCode::LawMismatch, "value outside the cosh law range");
      v = std::max(v, 1.0);
      break;
    case AngleLaw::SinhMixed:
      break;
  }
  out.law = law;
  out.theta = recover_angle(law, v);
  return out;
}

// dL/ds = theta' L'(theta), computed branch-safely by differentiating L.
inline double dL_ds(const LiftedCurve& lc, double s, XiConvention conv) {
  double h = lc.h_field;
  auto Lat = [&](double ss) {
    BundleTangent T = lc.unit_tangent_s(ss);
    ContactData cd = contact_at(lc.chart, lc.point_s(ss), conv);
    return sasaki_inner(lc.chart, T, cd.xi, true);
  };
  return central4(Lat, s, h);
}

// Fiber written in the base Frenet frame: X = (2/r) L T + 2 beta N.
struct FiberDecomposition {
  double coefT = 0.0;        // (2/r) L
  double beta = 0.0;         // signed, sign_beta * sqrt(q)/r
  int sign_beta = +1;
  double beta_measured = 0.0;  // eps2 g(X,N)/2
  double q = 0.0;            // eps_X eps2 (r/2)^2 - eps1 eps2 L^2
  double r = 0.0;
  double L = 0.0;
  double kappa = 0.0;
  int eps1 = +1, eps2 = +1;
  bool base_geodesic = false;
};

inline FiberDecomposition decompose_fiber(const LiftedCurve& lc, double s,
                                          XiConvention conv = XiConvention::Paper2Xh,
                                          double tol = 1e-9) {
  double t = lc.t_of_s(s);
  FrenetApparatus2 fr = frenet2_at(lc.chart, lc.gamma, t);
  Vec2 p = lc.gamma(t);
  Vec2 X = lc.fiber(t);
  double r = lc.base_speed_s(s);
  AngleSample as = tangent_reeb(lc, s, XiConvention::Paper2Xh);
  double L = as.L;
  (void)conv;

  FiberDecomposition fd;
  fd.r = r;
  fd.L = L;
  fd.kappa = fr.kappa;
  fd.eps1 = fr.eps1;
  fd.eps2 = fr.eps2;
  fd.base_geodesic = fr.geodesic;
  fd.coefT = 2.0 * L / r;
  fd.beta_measured = fr.eps2 * lc.chart.inner(p, X, fr.N) / 2.0;
  fd.q = lc.eps_X * fr.eps2 * (r / 2.0) * (r / 2.0) - fr.eps1 * fr.eps2 * L * L;
  if (fd.q < -tol * std::max(1.0, r * r))
    throw Error(ErrorCode::ImaginaryBeta,
                "inconsistent causal data: eps_X eps2 (r/2)^2 - eps1 eps2 L^2 = " +
                    std::to_string(fd.q));
  fd.sign_beta = fd.beta_measured >= 0.0 ? +1 : -1;
  fd.beta = fd.sign_beta * std::sqrt(std::max(fd.q, 0.0)) / r;
  return fd;
}

enum class Eq11Variant { LrPrime, ThetaLPrime };

inline const char* to_string(Eq11Variant v) {
  return v == Eq11Variant::LrPrime ? "lr-prime" : "theta-lprime";
}

struct ClosedFormSample {
  double value = 0.0;
  // witnesses of the internal steps
  double r = 0.0, L = 0.0, sigma = 0.0, kappa = 0.0, kappa_tilde = 0.0;
  double dLds = 0.0, slot1 = 0.0, sqrt_term = 0.0;
  double nablaEX_norm = 0.0;   // base norm of nabla_E X
  double coefE = 0.0;          // velocity-reconstruction coefficient
  double curvature_term = 0.0; // sectional-curvature contraction coefficient
};

// Verbatim evaluation of the closed form
//   g1(N~,xi) = 16 r (1-sigma)/k~ ((L/r)' +- eps2 r kappa sqrt(q)) - (dL/ds)/k~
// with the +- branch fixed by the measured sign of beta. The variant flag
// replaces (L/r)' by theta'L'(theta)/r; the two agree at constant r.
inline ClosedFormSample normal_reeb_closed(const LiftedCurve& lc, double s,
                                           XiConvention conv = XiConvention::Paper2Xh,
                                           Eq11Variant variant = Eq11Variant::LrPrime,
                                           double tol = 1e-9) {
  FiberDecomposition fd = decompose_fiber(lc, s, conv, tol);
  BundleCurveSpace space(lc);
  auto fr3 = frenet3_at(space, s, Frenet3Options{1e-7, false});
  double sigma = curvature_at(lc.chart, lc.point_s(s).x).sigma;

  ClosedFormSample out;
  out.r = fd.r;
  out.L = fd.L;
  out.sigma = sigma;
  out.kappa = fd.kappa;
  out.kappa_tilde = fr3.kappa;
  out.dLds = dL_ds(lc, s, XiConvention::Paper2Xh);
  out.sqrt_term = std::sqrt(std::max(fd.q, 0.0));

  double h = lc.h_field;
  if (variant == Eq11Variant::LrPrime) {
    auto Lr = [&](double ss) {
      AngleSample a = tangent_reeb(lc, ss, XiConvention::Paper2Xh);
      return a.L / lc.base_speed_s(ss);
    };
    out.slot1 = central4(Lr, s, h);
  } else {
    out.slot1 = out.dLds / fd.r;
  }

  double bracket = out.slot1 + fd.sign_beta * fd.eps2 * fd.r * fd.kappa * out.sqrt_term;
  out.value = 16.0 * fd.r * (1.0 - sigma) / fr3.kappa * bracket - out.dLds / fr3.kappa;

  // Eq. (10)/(10.5) witnesses
  Vec2 W = lc.W_s(s);
  double qW = lc.chart.inner(lc.point_s(s).x, W, W);
  if (std::fabs(qW) < tol * tol)
    throw Error(ErrorCode::NullDerivative, "nabla_E X is null or vanishes");
  out.nablaEX_norm = std::sqrt(std::fabs(qW));
  out.coefE = 2.0 * fd.r * bracket / out.nablaEX_norm;
  out.curvature_term = 2.0 * fd.r * bracket * sigma;
  return out;
}

inline double sigma_bar(double sigma, double tol = 1e-9) {
  double denom = 15.0 - 16.0 * sigma;
  if (std::fabs(denom) <= tol)
    throw Error(ErrorCode::SingularSigma, "sigma = 15/16 makes sigma_bar singular");
  return 64.0 * (1.0 - sigma) / denom;
}

// ---- classification ----

enum class TangentVerdict { Legendre, Slant, None };
enum class NormalVerdict { NLegendre, NSlant, None, Unavailable };

inline const char* to_string(TangentVerdict v) {
  switch (v) {
    case TangentVerdict::Legendre: return "legendre";
    case TangentVerdict::Slant: return "slant";
    case TangentVerdict::None: return "none";
  }
  return "?";
}

inline const char* to_string(NormalVerdict v) {
  switch (v) {
    case NormalVerdict::NLegendre: return "n_legendre";
    case NormalVerdict::NSlant: return "n_slant";
    case NormalVerdict::None: return "none";
    case NormalVerdict::Unavailable: return "unavailable";
  }
  return "?";
}

struct SampleRow {
  double s = 0.0;
  std::optional<double> L;
  std::optional<double> theta;
  std::optional<double> oracle;
  std::optional<double> closed;
  std::string marker;  // error code name when a sample failed
};

struct Verdicts {
  TangentVerdict tangent = TangentVerdict::None;
  NormalVerdict normal = NormalVerdict::Unavailable;
  double slant_c = 0.0, slant_residual = 0.0;
  double nslant_c = 0.0, nslant_residual = 0.0;
};

// Pure constancy tests on sampled sequences; constants by sample mean,
// residuals by maximum deviation.
inline Verdicts verdicts_from_samples(const std::vector<double>& L,
                                      const std::vector<double>& oracle, bool oracle_complete,
                                      double tol) {
  Verdicts v;
  auto stats = [](const std::vector<double>& xs, double& mean, double& maxdev) {
    mean = 0.0;
    for (double x : xs) mean += x;
    mean /= double(xs.size());
    maxdev = 0.0;
    for (double x : xs) maxdev = std::max(maxdev, std::fabs(x - mean));
  };
  if (!L.empty()) {
    double mean, dev;
    stats(L, mean, dev);
    v.slant_c = mean;
    v.slant_residual = dev;
    if (dev < tol)
      v.tangent = std::fabs(mean) < tol ? TangentVerdict::Legendre : TangentVerdict::Slant;
  }
  if (oracle_complete && !oracle.empty()) {
    double mean, dev;
    stats(oracle, mean, dev);
    v.nslant_c = mean;
    v.nslant_residual = dev;
    if (dev < tol)
      v.normal = std::fabs(mean) < tol ? NormalVerdict::NLegendre : NormalVerdict::NSlant;
    else
      v.normal = NormalVerdict::None;
  }
  return v;
}

struct DeviationRecord {
  std::string kind;
  double max_abs = 0.0;
  double max_rel = 0.0;
  std::string note;
};

struct SlantReport {
  std::vector<SampleRow> samples;
  Verdicts verdicts;
  XiConvention xi_convention = XiConvention::Paper2Xh;
  Eq11Variant eq11_variant = Eq11Variant::LrPrime;
  double discrepancy_abs = 0.0;  // max |closed - oracle|
  double discrepancy_rel = 0.0;
  std::vector<DeviationRecord> deviations;
  double tol = 1e-6;
};

struct ClassifyOptions {
  int grid = 64;
  double tol = 1e-6;
  XiConvention conv = XiConvention::Paper2Xh;
  Eq11Variant variant = Eq11Variant::LrPrime;
  std::optional<AngleLaw> law_override;
};

inline SlantReport classify(const LiftedCurve& lc, const ClassifyOptions& opt = {}) {
  if (opt.grid < 16) throw Error(ErrorCode::OutOfRange, "classification grid must be >= 16");
  SlantReport rep;
  rep.xi_convention = opt.conv;
  rep.eq11_variant = opt.variant;
  rep.tol = opt.tol;
  double margin = std::max(0.01 * lc.s_end, 12.0 * lc.h_field);
  double a = margin, b = lc.s_end - margin;

  std::vector<double> Ls, oracles;
  bool oracle_complete = true;
  double max_abs = 0.0, max_rel_den = 0.0;
  for (int i = 0; i < opt.grid; ++i) {
    double s = a + (b - a) * i / double(opt.grid - 1);
    SampleRow row;
    row.s = s;
    try {
      AngleSample as = tangent_reeb(lc, s, opt.conv, opt.law_override);
      row.L = as.L;
      row.theta = as.theta;
      Ls.push_back(as.L);
    } catch (const Error& e) {
      row.marker = error_code_name(e.code());
    }
    try {
      double o = normal_reeb_oracle(lc, s, opt.conv);
      row.oracle = o;
      oracles.push_back(o);
    } catch (const Error& e) {
      oracle_complete = false;
      if (row.marker.empty()) row.marker = error_code_name(e.code());
    }
    try {
      ClosedFormSample cf = normal_reeb_closed(lc, s, opt.conv, opt.variant);
      // the closed form is stated for the unit-Reeb convention; rescale to match
      row.closed = opt.conv == XiConvention::Paper2Xh ? cf.value : 0.25 * cf.value;
    } catch (const Error& e) {
      if (row.marker.empty()) row.marker = error_code_name(e.code());
    }
    if (row.oracle && row.closed) {
      max_abs = std::max(max_abs, std::fabs(*row.closed - *row.oracle));
      max_rel_den = std::max(max_rel_den, std::fabs(*row.oracle));
    }
    rep.samples.push_back(std::move(row));
  }
  rep.verdicts = verdicts_from_samples(Ls, oracles, oracle_complete, opt.tol);
  rep.discrepancy_abs = max_abs;
  rep.discrepancy_rel = max_abs / std::max(max_rel_den, 1e-12);
  if (rep.discrepancy_rel > 1e-3) {
    rep.deviations.push_back(
        {"paper-formula-deviation", max_abs, rep.discrepancy_rel,
         "closed form disagrees with the Frenet oracle beyond 1e-3 relative"});
  }
  return rep;
}

}  // namespace t1m
