#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "t1m/error.hpp"
#include "t1m/frenet.hpp"
#include "t1m/numdiff.hpp"
#include "t1m/reparam.hpp"
#include "t1m/space3.hpp"
#include "t1m/surface.hpp"
#include "t1m/vec.hpp"

namespace t1m {

// Point of the unit tangent bundle: base point x and unit fiber vector u.
struct BundlePoint {
  Vec2 x;
  Vec2 u;
  int eps_u = +1;  // g(u,u)
};

inline BundlePoint make_bundle_point(const SurfaceChart& chart, Vec2 x, Vec2 u,
                                     double tol = 1e-9) {
  double q = chart.inner(x, u, u);
  int eps = q > 0.0 ? +1 : -1;
  if (std::fabs(q - eps) > tol)
    throw Error(ErrorCode::FiberNotUnit,
                "fiber vector has g(u,u) = " + std::to_string(q));
  return {x, u, eps};
}

// Projection onto the complement of the fiber direction; the tangential lift
// of V is (V - eps_u g(V,u) u)^v, which is tangent to T1M for either causal
// character of u.
inline Vec2 tangential_project(const SurfaceChart& chart, const BundlePoint& p, Vec2 V) {
  double a = chart.inner(p.x, V, p.u);
  return V - (p.eps_u * a) * p.u;
}

// Tangent vector of T1M at p, split into horizontal part h and tangential
// part t with g(t, u) = 0.
struct BundleTangent {
  BundlePoint at;
  Vec2 h{0.0, 0.0};
  Vec2 t{0.0, 0.0};
};

inline void require_same_point(const BundleTangent& A, const BundleTangent& B) {
  if (sup_norm(A.at.x - B.at.x) > 1e-9 || sup_norm(A.at.u - B.at.u) > 1e-9)
    throw Error(ErrorCode::MismatchedBasePoints, "bundle tangents live at different points");
}

inline BundleTangent operator+(const BundleTangent& A, const BundleTangent& B) {
  require_same_point(A, B);
  return {A.at, A.h + B.h, A.t + B.t};
}

inline BundleTangent operator-(const BundleTangent& A, const BundleTangent& B) {
  require_same_point(A, B);
  return {A.at, A.h - B.h, A.t - B.t};
}

inline BundleTangent operator*(double s, const BundleTangent& A) {
  return {A.at, s * A.h, s * A.t};
}

inline BundleTangent operator-(const BundleTangent& A) { return -1.0 * A; }

inline BundleTangent horizontal_lift(const BundlePoint& p, Vec2 X) {
  return {p, X, {0.0, 0.0}};
}

inline BundleTangent tangential_lift(const SurfaceChart& chart, const BundlePoint& p, Vec2 X) {
  return {p, {0.0, 0.0}, tangential_project(chart, p, X)};
}

// Sasaki metric restricted to T1M, by the h/t pairing rules; the fiber
// correction term vanishes on stored tangents but is kept in the formula.
inline double sasaki_inner(const SurfaceChart& chart, const BundleTangent& A,
                           const BundleTangent& B, bool scaled) {
  require_same_point(A, B);
  const SymMat2 g = chart.metric_at(A.at.x);
  double val = g.inner(A.h, B.h) + g.inner(A.t, B.t) -
               g.inner(A.t, A.at.u) * g.inner(B.t, A.at.u);
  return scaled ? 0.25 * val : val;
}

// Sasaki metric of the full tangent bundle TM on raw (horizontal, vertical)
// pairs; used to test normality of the canonical vertical field.
inline double sasaki_tm_inner(const SurfaceChart& chart, Vec2 x, Vec2 h1, Vec2 v1, Vec2 h2,
                              Vec2 v2) {
  const SymMat2 g = chart.metric_at(x);
  return g.inner(h1, h2) + g.inner(v1, v2);
}

enum class XiConvention { Paper2Xh, PaperHalf };

inline const char* to_string(XiConvention c) {
  return c == XiConvention::Paper2Xh ? "paper-2xh" : "paper-half";
}

// Contact data at a bundle point. The normative structure uses xi = 2 u^h,
// eta dual to xi through g1 with the causal sign of the fiber so that
// eta(xi) = 1 holds for either fiber character; phi swaps horizontal and
// tangential parts. PaperHalf exposes the alternative xi = u^h / 2 scaling
// with the literal eta = eta'/2 for experiments.
struct ContactData {
  BundlePoint p;
  XiConvention conv = XiConvention::Paper2Xh;
  BundleTangent xi;

  double eta(const SurfaceChart& chart, const BundleTangent& A) const {
    if (conv == XiConvention::Paper2Xh)
      return p.eps_u * sasaki_inner(chart, A, xi, /*scaled=*/true);
    // literal eta = eta'/2 with eta'(A) = g1s(A, u^h)
    BundleTangent uh = horizontal_lift(p, p.u);
    return 0.5 * sasaki_inner(chart, A, uh, /*scaled=*/false);
  }

  BundleTangent phi(const SurfaceChart& chart, const BundleTangent& A) const {
    // phi(X^h + Y^t) = X^t - Y^h for stored tangents (eta'(Y^h) = 0 when
    // g(Y,u) = 0)
    BundleTangent out{p, -A.t, tangential_project(chart, p, A.h)};
    return out;
  }
};

inline ContactData contact_at(const SurfaceChart& chart, const BundlePoint& p,
                              XiConvention conv = XiConvention::Paper2Xh) {
  (void)chart;
  ContactData cd;
  cd.p = p;
  cd.conv = conv;
  double scale = conv == XiConvention::Paper2Xh ? 2.0 : 0.5;
  cd.xi = horizontal_lift(p, scale * p.u);
  return cd;
}

struct LiftOptions {
  double fiber_tol = 1e-8;   // |g(X,X) - eps| tolerance
  double null_tol = 1e-7;    // threshold on |g1(T,T)|
  int probe_samples = 64;
  double h_field = 1e-3;     // step for s-derivatives of fields along the lift
  bool reparametrize = true;
};

// Curve in T1M: base curve gamma with unit fiber field X, plus the
// g1-arclength parametrization used by the Frenet machinery.
class LiftedCurve {
 public:
  SurfaceChart chart;
  CurveFn gamma;
  FieldFn fiber;
  double t0 = 0.0, t1 = 1.0;
  int eps_X = +1;
  int lift_sign = +1;       // sign of g1(T~,T~)
  double r_mean = 0.0;      // mean base speed over the original parameter
  bool r_const = false;     // base speed constant within 1e-6
  double h_field = 1e-3;
  SpeedWarp warp;           // g1 arclength; s in [margin, s_end - margin]
  double s_end = 0.0;

  // original-parameter quantities
  Vec2 E_t(double t) const { return central4(gamma, t, 1e-3); }

  Vec2 W_t(double t) const {            // nabla_E X at t
    return covariant_derivative(chart, gamma, fiber, t);
  }

  BundlePoint point_t(double t) const {
    return {gamma(t), fiber(t), eps_X};
  }

  BundleTangent tangent_t(double t) const {  // E^h + (nabla_E X)^t, not unit
    BundlePoint p = point_t(t);
    return {p, E_t(t), tangential_project(chart, p, W_t(t))};
  }

  double g1_speed_t(double t) const {
    BundleTangent T = tangent_t(t);
    return std::sqrt(std::fabs(sasaki_inner(chart, T, T, true)));
  }

  // arclength-parameter quantities
  double t_of_s(double s) const { return warp.t_at(s); }

  BundlePoint point_s(double s) const { return point_t(t_of_s(s)); }

  Vec2 E_s(double s) const {
    double t = t_of_s(s);
    return (1.0 / g1_speed_t(t)) * E_t(t);
  }

  Vec2 W_s(double s) const {
    double t = t_of_s(s);
    return (1.0 / g1_speed_t(t)) * W_t(t);
  }

  BundleTangent unit_tangent_s(double s) const {
    double t = t_of_s(s);
    return (1.0 / g1_speed_t(t)) * tangent_t(t);
  }

  double base_speed_s(double s) const {  // r(s) = |dgamma/ds|
    Vec2 E = E_s(s);
    return std::sqrt(std::fabs(chart.inner(point_s(s).x, E, E)));
  }
};

inline LiftedCurve lift_curve(const SurfaceChart& chart, CurveFn gamma, FieldFn fiber,
                              double t0, double t1, const LiftOptions& opt = {}) {
  LiftedCurve lc;
  lc.chart = chart;
  lc.gamma = std::move(gamma);
  lc.fiber = std::move(fiber);
  lc.t0 = t0;
  lc.t1 = t1;
  lc.h_field = opt.h_field;

  // fiber must have constant g(X,X) = +-1
  double q0 = chart.inner(lc.gamma(t0), lc.fiber(t0), lc.fiber(t0));
  int eps = q0 > 0.0 ? +1 : -1;
  double rsum = 0.0, rmin = 1e300, rmax = -1e300;
  int sign0 = 0;
  for (int i = 0; i <= opt.probe_samples; ++i) {
    double t = t0 + (t1 - t0) * i / opt.probe_samples;
    Vec2 p = lc.gamma(t), X = lc.fiber(t);
    double q = chart.inner(p, X, X);
    if (std::fabs(q - eps) > opt.fiber_tol)
      throw Error(ErrorCode::FiberNotUnit,
                  "g(X,X) = " + std::to_string(q) + " at t = " + std::to_string(t));
    BundleTangent T = lc.tangent_t(t);
    double g1TT = sasaki_inner(chart, T, T, true);
    if (std::fabs(g1TT) <= opt.null_tol)
      throw Error(ErrorCode::NullLift, "lifted tangent is null at t = " + std::to_string(t));
    int s = g1TT > 0.0 ? +1 : -1;
    if (sign0 == 0) sign0 = s;
    if (s != sign0)
      throw Error(ErrorCode::NullLift, "lifted tangent changes causal character");
    Vec2 E = lc.E_t(t);
    double r = std::sqrt(std::fabs(chart.inner(p, E, E)));
    rsum += r;
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  lc.eps_X = eps;
  lc.lift_sign = sign0;
  lc.r_mean = rsum / (opt.probe_samples + 1);
  lc.r_const = (rmax - rmin) < 1e-6;

  if (opt.reparametrize) {
    auto speed = [lc](double t) { return lc.g1_speed_t(t); };
    lc.warp = SpeedWarp(speed, t0, t1, 1.0, 512, 1e-10);
    lc.s_end = lc.warp.s_end();
  }
  return lc;
}

// Covariant derivative along a lifted curve of a bundle-tangent field,
// applying the four connection rules over the h/t decompositions of both
// the curve tangent and the field. R is taken from the base curvature.
inline BundleTangent nabla1_along(const LiftedCurve& lc,
                                  const std::function<BundleTangent(double)>& F, double s) {
  const SurfaceChart& chart = lc.chart;
  double h = lc.h_field;
  BundlePoint p = lc.point_s(s);
  const SymMat2 g = chart.metric_at(p.x);
  Vec2 E = lc.E_s(s);
  Vec2 X = p.u;
  Vec2 W = lc.W_s(s);

  BundleTangent F0 = F(s);
  Vec2 A = F0.h, Bt = F0.t;
  Vec2 dA = central4([&](double ss) { return F(ss).h; }, s, h);
  Vec2 dB = central4([&](double ss) { return F(ss).t; }, s, h);
  Christoffels2 Gm = christoffel_at(chart, p.x);
  dA = dA + Gm.contract(E, A);
  dB = dB + Gm.contract(E, Bt);

  double sigma = curvature_at(chart, p.x).sigma;
  // 2-D curvature operator: R(Y,Z)V = sigma (g(Z,V) Y - g(Y,V) Z)
  auto R = [&](Vec2 Y, Vec2 Z, Vec2 V) {
    return sigma * (g.inner(Z, V) * Y - g.inner(Y, V) * Z);
  };

  Vec2 h_out = dA + 0.5 * (R(X, W, A) + R(X, Bt, E));
  Vec2 t_raw = dB - 0.5 * R(E, A, X);
  // rule 4 contributes -g(Y,u) X^t; zero for stored tangents
  Vec2 rule4 = -g.inner(Bt, X) * W;
  Vec2 t_out = tangential_project(chart, p, t_raw) + rule4;
  return {p, h_out, t_out};
}

// Frenet space adapter: the lifted curve with the rescaled Sasaki metric g1.
class BundleCurveSpace {
 public:
  using vec = BundleTangent;

  explicit BundleCurveSpace(const LiftedCurve& lc) : lc_(&lc) {}

  vec tangent(double s) const { return lc_->unit_tangent_s(s); }

  double inner(double, const vec& a, const vec& b) const {
    return sasaki_inner(lc_->chart, a, b, /*scaled=*/true);
  }

  vec covariant(const std::function<vec(double)>& F, double s) const {
    return nabla1_along(*lc_, F, s);
  }

  vec complete_frame(double s, const vec& T, const vec& N, int, int) const {
    const SurfaceChart& chart = lc_->chart;
    BundlePoint p = lc_->point_s(s);
    const SymMat2 g = chart.metric_at(p.x);
    Vec2 w = perp(g, p.u);
    double qw = g.inner(w, w);
    vec b1 = horizontal_lift(p, Vec2{1.0, 0.0});
    vec b2 = horizontal_lift(p, Vec2{0.0, 1.0});
    vec b3{p, {0.0, 0.0}, (1.0 / std::sqrt(std::fabs(qw))) * w};
    vec basis[3] = {b1, b2, b3};
    Vec3 row_t{}, row_n{};
    for (int i = 0; i < 3; ++i) {
      row_t[i] = inner(s, basis[i], T);
      row_n[i] = inner(s, basis[i], N);
    }
    Vec3 coef = euclid_cross(row_t, row_n);
    vec B = coef[0] * b1 + coef[1] * b2 + coef[2] * b3;
    double q = inner(s, B, B);
    if (std::fabs(q) < 1e-12 * (1.0 + sup_norm(coef) * sup_norm(coef)))
      throw Error(ErrorCode::NullFrameVector, "bundle frame complement is null");
    B = (1.0 / std::sqrt(std::fabs(q))) * B;
    // orientation: positive determinant of frame coefficients in the basis
    auto coords = [&](const vec& V) {
      double lam = 0.0;
      Vec2 tw = b3.t;
      double denom = tw[0] * tw[0] + tw[1] * tw[1];
      lam = (V.t[0] * tw[0] + V.t[1] * tw[1]) / denom;
      return Vec3{V.h[0], V.h[1], lam};
    };
    if (det3(coords(T), coords(N), coords(B)) < 0.0) B = -B;
    return B;
  }

  double comp_norm(double, const vec& a) const {
    return std::max(sup_norm(a.h), sup_norm(a.t));
  }

 private:
  const LiftedCurve* lc_;
};

// g1(N~, xi) by the Frenet route: fully independent of the closed form.
inline double normal_reeb_oracle(const LiftedCurve& lc, double s,
                                 XiConvention conv = XiConvention::Paper2Xh) {
  BundleCurveSpace space(lc);
  auto fr = frenet3_at(space, s, Frenet3Options{1e-7, /*residuals=*/false});
  ContactData cd = contact_at(lc.chart, lc.point_s(s), conv);
  return sasaki_inner(lc.chart, fr.N, cd.xi, /*scaled=*/true);
}

}  // namespace t1m
