#pragma once

#include <cmath>
#include <functional>

#include "t1m/error.hpp"
#include "t1m/reparam.hpp"
#include "t1m/surface.hpp"
#include "t1m/vec.hpp"

namespace t1m {

struct FrenetApparatus2 {
  Vec2 T, N;
  double kappa = 0.0;
  int eps1 = +1, eps2 = +1;
  bool geodesic = false;
};

struct Frenet2Options {
  double geodesic_tol = 1e-7;  // sup-norm threshold on nabla_T T
  // frame fields pass through up to three nested central differences, so the
  // step is kept well above the eps/h^3 rounding floor
  double step = 1e-3;
};

// Frenet frame of a non-null chart curve at parameter t. The curve need not
// be unit speed; T is normalized and kappa is the arclength curvature.
// N = nabla_T T / (eps2 kappa) so that T' = eps2 kappa N holds with kappa >= 0.
inline FrenetApparatus2 frenet2_at(const SurfaceChart& chart, const CurveFn& gamma, double t,
                                   const Frenet2Options& opt = {}) {
  double h = opt.step;
  auto unit_tangent = [&](double tt) {
    Vec2 d = central4(gamma, tt, h);
    double q = chart.inner(gamma(tt), d, d);
    if (std::fabs(q) <= chart.null_tol)
      throw Error(ErrorCode::NullSegment, "curve tangent is null");
    return (1.0 / std::sqrt(std::fabs(q))) * d;
  };
  Vec2 p = gamma(t);
  SymMat2 g = chart.metric_at(p);
  Vec2 E = central4(gamma, t, h);
  double qE = g.inner(E, E);
  if (std::fabs(qE) <= chart.null_tol)
    throw Error(ErrorCode::NullSegment, "curve tangent is null");
  int eps1 = qE > 0.0 ? +1 : -1;
  double r = std::sqrt(std::fabs(qE));
  Vec2 T = (1.0 / r) * E;

  Vec2 dET = covariant_derivative(chart, gamma, unit_tangent, t, h);
  Vec2 dTT = (1.0 / r) * dET;

  FrenetApparatus2 out;
  out.T = T;
  out.eps1 = eps1;
  if (sup_norm(dTT) < opt.geodesic_tol) {
    // geodesic: kappa = 0, N is the unit normal, unique up to sign
    Vec2 n = perp(g, T);
    double qn = g.inner(n, n);
    out.N = (1.0 / std::sqrt(std::fabs(qn))) * n;
    out.eps2 = qn > 0.0 ? +1 : -1;
    out.kappa = 0.0;
    out.geodesic = true;
    return out;
  }
  double q = g.inner(dTT, dTT);
  double scale = sup_norm(dTT);
  if (std::fabs(q) <= 1e-12 * scale * scale)
    throw Error(ErrorCode::NullNormal, "nabla_T T is null");
  out.eps2 = q > 0.0 ? +1 : -1;
  out.kappa = std::sqrt(std::fabs(q));
  out.N = (1.0 / (out.eps2 * out.kappa)) * dTT;
  return out;
}

// Residuals of the two rows of the surface Frenet system:
//   T' = eps2 kappa N,  N' = -eps1 kappa T
// computed with frames re-evaluated along the curve.
struct Frenet2Residuals {
  double row1 = 0.0, row2 = 0.0;
};

inline Frenet2Residuals frenet2_residuals(const SurfaceChart& chart, const CurveFn& gamma,
                                          double t, const Frenet2Options& opt = {}) {
  double h = opt.step;
  FrenetApparatus2 fr = frenet2_at(chart, gamma, t, opt);
  auto Tf = [&](double tt) { return frenet2_at(chart, gamma, tt, opt).T; };
  auto Nf = [&](double tt) { return frenet2_at(chart, gamma, tt, opt).N; };
  // derivatives w.r.t. arclength: divide by local speed
  Vec2 E = central4(gamma, t, h);
  double r = std::sqrt(std::fabs(chart.inner(gamma(t), E, E)));
  Vec2 dT = (1.0 / r) * covariant_derivative(chart, gamma, Tf, t, h);
  Vec2 dN = (1.0 / r) * covariant_derivative(chart, gamma, Nf, t, h);
  Frenet2Residuals res;
  res.row1 = sup_norm(dT - (fr.eps2 * fr.kappa) * fr.N);
  res.row2 = sup_norm(dN + (fr.eps1 * fr.kappa) * fr.T);
  return res;
}

// ---- generic 3-D Frenet over a metric+connection oracle ----
//
// Space requirements:
//   using vec;
//   vec tangent(double s) const;                 // unit-speed curve tangent
//   double inner(double s, vec, vec) const;      // metric along the curve
//   vec covariant(std::function<vec(double)>, double s) const;
//   vec complete_frame(double s, vec T, vec N, int eps1, int eps2) const;
//   double comp_norm(double s, vec) const;       // positive surrogate norm

template <class Space>
struct FrenetApparatus3 {
  typename Space::vec T, N, B;
  double kappa = 0.0, tau = 0.0;
  int eps1 = +1, eps2 = +1, eps3 = +1;
  double row1 = 0.0, row2 = 0.0, row3 = 0.0;  // residuals of the Frenet rows
};

struct Frenet3Options {
  double geodesic_tol = 1e-7;
  bool residuals = true;
};

template <class Space>
FrenetApparatus3<Space> frenet3_at(const Space& sp, double s, const Frenet3Options& opt = {}) {
  using vec = typename Space::vec;
  auto tangent_field = [&sp](double ss) { return sp.tangent(ss); };

  auto frame_core = [&](double ss, vec& T, vec& DT, double& kappa, int& e1, int& e2) {
    T = sp.tangent(ss);
    double qT = sp.inner(ss, T, T);
    if (std::fabs(std::fabs(qT) - 1.0) > 1e-5)
      throw Error(ErrorCode::OutOfRange, "frenet3 expects a unit-speed curve");
    e1 = qT > 0.0 ? +1 : -1;
    DT = sp.covariant(tangent_field, ss);
    double scale = sp.comp_norm(ss, DT);
    if (scale < opt.geodesic_tol)
      throw Error(ErrorCode::GeodesicLift, "curve is a geodesic; normal undefined");
    double q = sp.inner(ss, DT, DT);
    if (std::fabs(q) <= 1e-12 * scale * scale)
      throw Error(ErrorCode::NullFrameVector, "nabla T is null");
    kappa = std::sqrt(std::fabs(q));
    e2 = q > 0.0 ? +1 : -1;
  };

  FrenetApparatus3<Space> out;
  vec T, DT;
  frame_core(s, T, DT, out.kappa, out.eps1, out.eps2);
  out.T = T;
  out.N = (1.0 / out.kappa) * DT;
  out.B = sp.complete_frame(s, out.T, out.N, out.eps1, out.eps2);
  double qB = sp.inner(s, out.B, out.B);
  if (std::fabs(qB) < 0.5)
    throw Error(ErrorCode::NullFrameVector, "binormal could not be normalized");
  out.eps3 = qB > 0.0 ? +1 : -1;

  auto normal_field = [&](double ss) {
    vec Tl, DTl;
    double k;
    int e1, e2;
    frame_core(ss, Tl, DTl, k, e1, e2);
    return (1.0 / k) * DTl;
  };
  vec DN = sp.covariant(normal_field, s);
  // row 2 of the system: N' = -eps1 eps2 kappa T + tau B
  out.tau = out.eps3 * sp.inner(s, DN, out.B);

  if (opt.residuals) {
    auto binormal_field = [&](double ss) {
      vec Tl, DTl;
      double k;
      int e1, e2;
      frame_core(ss, Tl, DTl, k, e1, e2);
      vec Nl = (1.0 / k) * DTl;
      return sp.complete_frame(ss, Tl, Nl, e1, e2);
    };
    vec DB = sp.covariant(binormal_field, s);
    vec r1 = DT - out.kappa * out.N;
    vec r2 = DN + (out.eps1 * out.eps2 * out.kappa) * out.T - out.tau * out.B;
    vec r3 = DB + (out.eps2 * out.eps3 * out.tau) * out.N;
    out.row1 = sp.comp_norm(s, r1);
    out.row2 = sp.comp_norm(s, r2);
    out.row3 = sp.comp_norm(s, r3);
  }
  return out;
}

}  // namespace t1m
