#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "t1m/error.hpp"
#include "t1m/numdiff.hpp"
#include "t1m/surface.hpp"

namespace t1m {

// Monotone arclength warp for a positive speed function on [t0, t1].
// Construction integrates the speed with 5-point Gauss-Legendre per cell and
// Newton-solves the inverse on a uniform arclength grid; queries evaluate a
// quintic Hermite spline through those nodes with exact first and second
// derivatives, so the warp stays C^2 and cheap under nested differentiation.
class SpeedWarp {
 public:
  SpeedWarp() = default;

  SpeedWarp(std::function<double(double)> speed, double t0, double t1, double target,
            int cells = 1024, double speed_tol = 1e-9)
      : speed_(std::move(speed)), t0_(t0), t1_(t1), target_(target) {
    if (!(t1 > t0)) throw Error(ErrorCode::OutOfRange, "empty parameter range");
    if (!(target > 0.0)) throw Error(ErrorCode::OutOfRange, "target speed must be positive");
    ts_.resize(cells + 1);
    S_.resize(cells + 1);
    double dt = (t1 - t0) / cells;
    S_[0] = 0.0;
    for (int i = 0; i <= cells; ++i) ts_[i] = t0 + i * dt;
    ts_.back() = t1;
    for (int i = 0; i < cells; ++i) S_[i + 1] = S_[i] + segment(ts_[i], ts_[i + 1], speed_tol);
    total_ = S_.back();
    build_inverse_table(cells);
  }

  double total_length() const { return total_; }
  // arclength parameter runs over [0, s_end]
  double s_end() const { return send_; }
  double target() const { return target_; }

  // t such that arclength(t0 .. t) = s * target; linear extrapolation past
  // the ends so finite-difference stencils can cross the boundary
  double t_at(double s) const {
    if (s <= 0.0) return t0_ + s * target_ / std::max(speed_(t0_), 1e-14);
    if (s >= send_) return t1_ + (s - send_) * target_ / std::max(speed_(t1_), 1e-14);
    double w = s / hs_;
    int i = std::clamp(static_cast<int>(w), 0, int(tv_.size()) - 2);
    double x = w - i;
    double h = hs_;
    double x2 = x * x, x3 = x2 * x, x4 = x3 * x, x5 = x4 * x;
    double H0 = 1.0 - 10.0 * x3 + 15.0 * x4 - 6.0 * x5;
    double H1 = x - 6.0 * x3 + 8.0 * x4 - 3.0 * x5;
    double H2 = 0.5 * x2 - 1.5 * x3 + 1.5 * x4 - 0.5 * x5;
    double H3 = 10.0 * x3 - 15.0 * x4 + 6.0 * x5;
    double H4 = -4.0 * x3 + 7.0 * x4 - 3.0 * x5;
    double H5 = 0.5 * x3 - x4 + 0.5 * x5;
    return tv_[i] * H0 + h * td_[i] * H1 + h * h * tc_[i] * H2 + tv_[i + 1] * H3 +
           h * td_[i + 1] * H4 + h * h * tc_[i + 1] * H5;
  }

  double dt_ds(double s) const { return target_ / speed_(t_at(s)); }

 private:
  double segment(double a, double b, double speed_tol) const {
    // 5-point Gauss-Legendre on [a, b]
    static const double xs[5] = {-0.906179845938664, -0.538469310105683, 0.0,
                                 0.538469310105683, 0.906179845938664};
    static const double ws[5] = {0.236926885056189, 0.478628670499366,
                                 0.568888888888889, 0.478628670499366,
                                 0.236926885056189};
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int q = 0; q < 5; ++q) {
      double sp = speed_(mid + half * xs[q]);
      if (speed_tol > 0.0 && sp <= speed_tol)
        throw Error(ErrorCode::NullSegment, "curve speed fell below tolerance");
      acc += ws[q] * sp;
    }
    return acc * half;
  }

  // exact inverse by bracketed Newton on the cumulative table
  double solve_t(double goal) const {
    auto it = std::upper_bound(S_.begin(), S_.end(), goal);
    int i = std::clamp<int>(int(it - S_.begin()) - 1, 0, int(ts_.size()) - 2);
    double t = ts_[i] + (goal - S_[i]) / std::max(speed_(ts_[i]), 1e-14);
    t = std::clamp(t, ts_[i], ts_[i + 1]);
    for (int k = 0; k < 10; ++k) {
      double F = S_[i] + segment(ts_[i], t, 0.0) - goal;
      double sp = speed_(t);
      if (sp < 1e-14) break;
      double dtN = F / sp;
      t -= dtN;
      t = std::clamp(t, ts_[i] - 1e-12, ts_[i + 1] + 1e-12);
      if (std::fabs(dtN) < 1e-15 * std::max(1.0, std::fabs(t))) break;
    }
    return t;
  }

  void build_inverse_table(int cells) {
    send_ = total_ / target_;
    int n = std::max(cells, 64);
    hs_ = send_ / n;
    tv_.resize(n + 1);
    td_.resize(n + 1);
    tc_.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
      double s = i * hs_;
      double t = i == 0 ? t0_ : (i == n ? t1_ : solve_t(s * target_));
      double sp = speed_(t);
      double dspdt = central4(speed_, t, 1e-4);
      double tp = target_ / sp;                        // dt/ds
      double tpp = -target_ * dspdt * tp / (sp * sp);  // d2t/ds2
      tv_[i] = t;
      td_[i] = tp;
      tc_[i] = tpp;
    }
  }

  std::function<double(double)> speed_;
  double t0_ = 0.0, t1_ = 1.0, target_ = 1.0, total_ = 0.0;
  double send_ = 0.0, hs_ = 1.0;
  std::vector<double> ts_, S_;
  std::vector<double> tv_, td_, tc_;
};

struct ReparametrizedCurve {
  CurveFn curve;      // s -> chart point, |gamma'(s)| = target
  SpeedWarp warp;
  double s_end = 0.0;
};

// Reparametrize a chart curve to constant speed in the chart metric.
inline ReparametrizedCurve reparametrize_to_speed(const SurfaceChart& chart,
                                                  const CurveFn& gamma, double t0, double t1,
                                                  double target_speed,
                                                  double speed_tol = 1e-7) {
  auto speed = [&chart, gamma](double t) {
    Vec2 d = central4(gamma, t, 1e-3);
    double q = chart.inner(gamma(t), d, d);
    return std::sqrt(std::fabs(q));
  };
  // probe for null segments early with a sign check
  {
    int sign0 = 0;
    for (int i = 0; i <= 64; ++i) {
      double t = t0 + (t1 - t0) * i / 64.0;
      Vec2 d = central4(gamma, t, 1e-3);
      double q = chart.inner(gamma(t), d, d);
      if (std::fabs(q) <= speed_tol * speed_tol)
        throw Error(ErrorCode::NullSegment, "curve is null near t=" + std::to_string(t));
      int s = q > 0.0 ? 1 : -1;
      if (sign0 == 0) sign0 = s;
      if (s != sign0)
        throw Error(ErrorCode::NullSegment, "curve changes causal character");
    }
  }
  SpeedWarp warp(speed, t0, t1, target_speed, 1024, speed_tol);
  CurveFn out = [gamma, warp](double s) { return gamma(warp.t_at(s)); };
  return {std::move(out), warp, warp.s_end()};
}

}  // namespace t1m
