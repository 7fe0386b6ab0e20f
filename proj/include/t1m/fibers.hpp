#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "t1m/error.hpp"
#include "t1m/frenet.hpp"
#include "t1m/surface.hpp"

namespace t1m {

// Unit fiber fields along a base curve, for building lifted curves.

// X = a T + b N in the base Frenet frame; g(X,X) = a^2 eps1 + b^2 eps2.
inline FieldFn fiber_frame_combo(const SurfaceChart& chart, CurveFn gamma, double a, double b) {
  return [chart, gamma = std::move(gamma), a, b](double t) {
    FrenetApparatus2 fr = frenet2_at(chart, gamma, t);
    return a * fr.T + b * fr.N;
  };
}

// Rapidity parametrization against the deterministic orthonormal frame:
// spacelike branch X = cosh(psi) e1 + sinh(psi) e2,
// timelike  branch X = sinh(psi) e1 + cosh(psi) e2.
inline FieldFn fiber_rapidity(const SurfaceChart& chart, CurveFn gamma,
                              std::function<double(double)> psi, int eps_X) {
  return [chart, gamma = std::move(gamma), psi = std::move(psi), eps_X](double t) {
    Frame2 f = orthonormal_frame(chart, gamma(t));
    double p = psi(t);
    if (eps_X > 0) return std::cosh(p) * f.e1 + std::sinh(p) * f.e2;
    return std::sinh(p) * f.e1 + std::cosh(p) * f.e2;
  };
}

// Unit tangent direction: X = E/|E|.
inline FieldFn fiber_tangent_scaled(const SurfaceChart& chart, CurveFn gamma) {
  return [chart, gamma = std::move(gamma)](double t) {
    Vec2 E = central4(gamma, t, 1e-3);
    double q = chart.inner(gamma(t), E, E);
    if (std::fabs(q) <= chart.null_tol)
      throw Error(ErrorCode::NullSegment, "tangent-scaled fiber over a null segment");
    return (1.0 / std::sqrt(std::fabs(q))) * E;
  };
}

// Fiber holding g1(T~, xi) = L0 along the lift (exactly on constant-curvature
// base families). From g(X,X) = eps_X and the arclength normalization of the
// lift, the frame coefficients are
//   a = eps1 L0 sqrt|1 + kappa^2 eps2 eps_X|,  b = +-sqrt(eps_X eps2 - a^2 eps1 eps2).
inline FieldFn fiber_constant_angle(const SurfaceChart& chart, CurveFn gamma, double L0,
                                    int eps_X, int sign_b = +1) {
  return [chart, gamma = std::move(gamma), L0, eps_X, sign_b](double t) {
    FrenetApparatus2 fr = frenet2_at(chart, gamma, t);
    double k = fr.kappa;
    double a = fr.eps1 * L0 * std::sqrt(std::fabs(1.0 + k * k * fr.eps2 * eps_X));
    double b2 = eps_X * fr.eps2 - a * a * fr.eps1 * fr.eps2;
    if (b2 < -1e-12)
      throw Error(ErrorCode::ImaginaryBeta,
                  "no unit fiber with the requested angle: b^2 = " + std::to_string(b2));
    double b = sign_b * std::sqrt(std::max(b2, 0.0));
    return a * fr.T + b * fr.N;
  };
}

// Slant fiber over a spacelike base with timelike normal: X = cosh(mu) T +
// sinh(mu) N with mu solving
//   mu' = r kappa + r sqrt(1 - cosh(mu)^2 / L0^2)
// which holds g1(T~, xi) = L0 exactly along the arclength-normalized lift
// while keeping it non-geodesic. Requires |L0| > cosh(mu) on the range.
class SlantOdeFiber {
 public:
  SlantOdeFiber(const SurfaceChart& chart, CurveFn gamma, double t0, double t1, double L0,
                double mu0 = 0.0, int steps = 8192)
      : chart_(chart), gamma_(std::move(gamma)), t0_(t0), dt_((t1 - t0) / steps) {
    sign_ = L0 < 0.0 ? -1.0 : 1.0;
    double La = std::fabs(L0);
    auto rhs = [&](double t, double mu) {
      FrenetApparatus2 fr = frenet2_at(chart_, gamma_, t);
      if (fr.eps1 != +1 || fr.eps2 != -1)
        throw Error(ErrorCode::LawMismatch, "slant-ode fiber needs a spacelike base");
      Vec2 E = central4(gamma_, t, 1e-3);
      double r = std::sqrt(std::fabs(chart_.inner(gamma_(t), E, E)));
      double arg = 1.0 - std::cosh(mu) * std::cosh(mu) / (La * La);
      if (arg < -1e-12)
        throw Error(ErrorCode::ImaginaryBeta, "slant-ode fiber left its validity region");
      return r * fr.kappa + r * std::sqrt(std::max(arg, 0.0));
    };
    auto rk4 = [&rhs](double t, double mu, double dt) {
      double k1 = rhs(t, mu);
      double k2 = rhs(t + dt / 2, mu + dt / 2 * k1);
      double k3 = rhs(t + dt / 2, mu + dt / 2 * k2);
      double k4 = rhs(t + dt, mu + dt * k3);
      return mu + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    };
    mus_.resize(steps + 5);
    mus_[2] = mu0;
    mus_[1] = rk4(t0, mu0, -dt_);
    mus_[0] = rk4(t0 - dt_, mus_[1], -dt_);
    for (int i = 2; i < steps + 4; ++i) mus_[i + 1] = rk4(t0 + (i - 2) * dt_, mus_[i], dt_);
  }

  double mu(double t) const {
    double w = (t - (t0_ - 2.0 * dt_)) / dt_;
    int i = static_cast<int>(std::floor(w));
    i = std::clamp(i, 1, static_cast<int>(mus_.size()) - 3);
    double f = w - i;
    double p0 = mus_[i - 1], p1 = mus_[i], p2 = mus_[i + 1], p3 = mus_[i + 2];
    double f2 = f * f, f3 = f2 * f;
    return 0.5 * (2.0 * p1 + f * (p2 - p0) + f2 * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) +
                  f3 * (3.0 * p1 - p0 - 3.0 * p2 + p3));
  }

  Vec2 operator()(double t) const {
    FrenetApparatus2 fr = frenet2_at(chart_, gamma_, t);
    double m = mu(t);
    return sign_ * (std::cosh(m) * fr.T) + sign_ * (std::sinh(m) * fr.N);
  }

 private:
  SurfaceChart chart_;
  CurveFn gamma_;
  double t0_, dt_, sign_;
  std::vector<double> mus_;
};

inline FieldFn fiber_slant_ode(const SurfaceChart& chart, CurveFn gamma, double t0, double t1,
                               double L0, double mu0 = 0.0, int steps = 8192) {
  auto sf = std::make_shared<SlantOdeFiber>(chart, std::move(gamma), t0, t1, L0, mu0, steps);
  return [sf](double t) { return (*sf)(t); };
}

// Parallel transport of X0 along gamma: dX/dt = -Gamma(E, X), RK4 on a fixed
// grid, Catmull-Rom interpolation in between. The grid extends one cell past
// each end so that finite differences over the endpoints stay on the table.
class ParallelFiber {
 public:
  ParallelFiber(const SurfaceChart& chart, CurveFn gamma, double t0, double t1, Vec2 X0,
                int steps = 16384)
      : t0_(t0), dt_((t1 - t0) / steps) {
    auto rhs = [&chart, &gamma](double t, Vec2 X) {
      Vec2 E = central4(gamma, t, 1e-3);
      Christoffels2 G = christoffel_at(chart, gamma(t));
      return -1.0 * G.contract(E, X);
    };
    auto rk4 = [&rhs](double t, Vec2 X, double dt) {
      Vec2 k1 = rhs(t, X);
      Vec2 k2 = rhs(t + dt / 2, X + (dt / 2) * k1);
      Vec2 k3 = rhs(t + dt / 2, X + (dt / 2) * k2);
      Vec2 k4 = rhs(t + dt, X + dt * k3);
      return X + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };
    // nodes at t0 + (i-2) dt for i = 0 .. steps+4
    xs_.resize(steps + 5);
    xs_[2] = X0;
    xs_[1] = rk4(t0, X0, -dt_);
    xs_[0] = rk4(t0 - dt_, xs_[1], -dt_);
    for (int i = 2; i < steps + 4; ++i) xs_[i + 1] = rk4(t0 + (i - 2) * dt_, xs_[i], dt_);
  }

  Vec2 operator()(double t) const {
    double w = (t - (t0_ - 2.0 * dt_)) / dt_;
    int i = static_cast<int>(std::floor(w));
    i = std::clamp(i, 1, static_cast<int>(xs_.size()) - 3);
    double f = w - i;
    const Vec2 &p0 = xs_[i - 1], &p1 = xs_[i], &p2 = xs_[i + 1], &p3 = xs_[i + 2];
    double f2 = f * f, f3 = f2 * f;
    return 0.5 * (2.0 * p1 + f * (p2 - p0) +
                  f2 * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - 1.0 * p3) +
                  f3 * (3.0 * p1 - 1.0 * p0 - 3.0 * p2 + p3));
  }

 private:
  double t0_, dt_;
  std::vector<Vec2> xs_;
};

inline FieldFn fiber_parallel(const SurfaceChart& chart, CurveFn gamma, double t0, double t1,
                              Vec2 X0, int steps = 16384) {
  auto pf = std::make_shared<ParallelFiber>(chart, gamma, t0, t1, X0, steps);
  return [pf](double t) { return (*pf)(t); };
}

}  // namespace t1m
