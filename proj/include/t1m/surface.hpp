#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "t1m/error.hpp"
#include "t1m/numdiff.hpp"
#include "t1m/vec.hpp"

namespace t1m {

using CurveFn = std::function<Vec2(double)>;   // t -> chart point
using FieldFn = std::function<Vec2(double)>;   // t -> chart components along a curve

struct DomainBox {
  double u0 = -50.0, u1 = 50.0, v0 = -50.0, v1 = 50.0;

  bool contains(Vec2 p, double margin = 0.0) const {
    return p[0] >= u0 + margin && p[0] <= u1 - margin && p[1] >= v0 + margin &&
           p[1] <= v1 - margin;
  }
};

enum class ChartSignature { Lorentzian, Riemannian };

// Gamma[i][j][k] = \Gamma^i_{jk}, symmetric in (j,k).
struct Christoffels2 {
  double G[2][2][2]{};

  Vec2 contract(Vec2 a, Vec2 b) const {
    Vec2 out{0.0, 0.0};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) out[i] += G[i][j][k] * a[j] * b[k];
    return out;
  }
};

struct CurvatureReport {
  Vec2 point;
  double sigma = 0.0;   // sectional curvature
  double r1212 = 0.0;   // g(R(d1,d2)d2, d1)
};

// A 2-D pseudo-Riemannian chart: metric components over a coordinate box,
// optional closed-form Christoffels, finite-difference steps.
struct SurfaceChart {
  std::string name;
  DomainBox domain;
  std::function<SymMat2(Vec2)> metric_fn;
  std::optional<std::function<Christoffels2(Vec2)>> christoffel_fn;
  ChartSignature signature = ChartSignature::Lorentzian;
  double h1 = 1e-5;       // step for metric first derivatives
  double h2 = 1e-4;       // step for Christoffel derivatives
  double null_tol = 1e-9;

  SymMat2 metric_at(Vec2 p) const {
    SymMat2 g = metric_fn(p);
    if (std::fabs(g.det()) <= 1e-10)
      throw Error(ErrorCode::DegenerateMetric, name + " metric degenerate at sampled point");
    return g;
  }

  double inner(Vec2 p, Vec2 a, Vec2 b) const { return metric_at(p).inner(a, b); }

  double norm(Vec2 p, Vec2 a) const {
    double q = inner(p, a, a);
    if (std::fabs(q) <= null_tol)
      throw Error(ErrorCode::NullVector, "norm of a null chart vector");
    return std::sqrt(std::fabs(q));
  }

  int causal_sign(Vec2 p, Vec2 a) const {
    double q = inner(p, a, a);
    if (q > null_tol) return +1;
    if (q < -null_tol) return -1;
    return 0;
  }

  void require_interior(Vec2 p, double margin) const {
    if (!domain.contains(p, margin))
      throw Error(ErrorCode::OutOfDomain, name + " point outside chart domain");
  }
};

inline Christoffels2 christoffel_at(const SurfaceChart& chart, Vec2 p) {
  chart.require_interior(p, 2.0 * chart.h1);
  if (chart.christoffel_fn) return (*chart.christoffel_fn)(p);
  SymMat2 gi = chart.metric_at(p).inverse();
  double dg[2][2][2];  // dg[k][i][j] = d_k g_ij
  for (int k = 0; k < 2; ++k) {
    Vec2 pp = p, pm = p;
    pp[k] += chart.h1;
    pm[k] -= chart.h1;
    SymMat2 a = chart.metric_at(pp), b = chart.metric_at(pm);
    double inv2h = 1.0 / (2.0 * chart.h1);
    dg[k][0][0] = (a.g11 - b.g11) * inv2h;
    dg[k][0][1] = dg[k][1][0] = (a.g12 - b.g12) * inv2h;
    dg[k][1][1] = (a.g22 - b.g22) * inv2h;
  }
  double giM[2][2] = {{gi.g11, gi.g12}, {gi.g12, gi.g22}};
  Christoffels2 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        double s = 0.0;
        for (int l = 0; l < 2; ++l)
          s += giM[i][l] * (dg[j][l][k] + dg[k][j][l] - dg[l][j][k]);
        out.G[i][j][k] = 0.5 * s;
      }
  return out;
}

// R(d_i, d_j) d_k = R^l_{ijk} d_l with
// R^l_{ijk} = d_i G^l_{jk} - d_j G^l_{ik} + G^l_{im} G^m_{jk} - G^l_{jm} G^m_{ik}
struct Riemann2 {
  double R[2][2][2][2]{};  // covariant R_{ijkl} = g(R(d_i,d_j)d_k, d_l)
};

inline Riemann2 riemann_at(const SurfaceChart& chart, Vec2 p) {
  chart.require_interior(p, 2.0 * (chart.h1 + chart.h2));
  Christoffels2 dG[2];  // dG[m] = d_m Gamma
  for (int m = 0; m < 2; ++m) {
    Vec2 pp = p, pm = p;
    pp[m] += chart.h2;
    pm[m] -= chart.h2;
    Christoffels2 a = christoffel_at(chart, pp), b = christoffel_at(chart, pm);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          dG[m].G[i][j][k] = (a.G[i][j][k] - b.G[i][j][k]) / (2.0 * chart.h2);
  }
  Christoffels2 G = christoffel_at(chart, p);
  SymMat2 g = chart.metric_at(p);
  double gM[2][2] = {{g.g11, g.g12}, {g.g12, g.g22}};
  Riemann2 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        double up[2];
        for (int l = 0; l < 2; ++l) {
          double s = dG[i].G[l][j][k] - dG[j].G[l][i][k];
          for (int m = 0; m < 2; ++m)
            s += G.G[l][i][m] * G.G[m][j][k] - G.G[l][j][m] * G.G[m][i][k];
          up[l] = s;
        }
        for (int l = 0; l < 2; ++l)
          out.R[i][j][k][l] = gM[l][0] * up[0] + gM[l][1] * up[1];
      }
  return out;
}

inline CurvatureReport curvature_at(const SurfaceChart& chart, Vec2 p) {
  Riemann2 R = riemann_at(chart, p);
  SymMat2 g = chart.metric_at(p);
  // sigma = g(R(d1,d2)d2, d1) / (g11 g22 - g12^2); fixed so de Sitter gives +1
  double r1212 = R.R[0][1][1][0];
  return {p, r1212 / g.det(), r1212};
}

// (\nabla_E V)^i = dV^i/dt + G^i_{jk} E^j V^k along gamma, E = gamma'(t).
inline Vec2 covariant_derivative(const SurfaceChart& chart, const CurveFn& gamma,
                                 const FieldFn& V, double t, double step = 0.0) {
  double h = step > 0.0 ? step : 1e-3;
  Vec2 p = gamma(t);
  Vec2 E = central4(gamma, t, h);
  Vec2 dV = central4(V, t, h);
  Christoffels2 G = christoffel_at(chart, p);
  return dV + G.contract(E, V(t));
}

// ---- built-in charts ----

inline SurfaceChart make_flat_lorentz() {
  SurfaceChart c;
  c.name = "flat-lorentz";
  c.metric_fn = [](Vec2) { return SymMat2{1.0, 0.0, -1.0}; };
  c.christoffel_fn = [](Vec2) { return Christoffels2{}; };
  c.signature = ChartSignature::Lorentzian;
  return c;
}

// Intrinsic de Sitter chart: g = r^2 cosh^2(v) du^2 - r^2 dv^2, sigma = 1/r^2.
inline SurfaceChart make_de_sitter(double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::OutOfRange, "de-sitter radius must be positive");
  SurfaceChart c;
  c.name = "de-sitter";
  c.domain = DomainBox{-50.0, 50.0, -6.0, 6.0};
  c.metric_fn = [r](Vec2 p) {
    double ch = std::cosh(p[1]);
    return SymMat2{r * r * ch * ch, 0.0, -r * r};
  };
  c.christoffel_fn = [](Vec2 p) {
    Christoffels2 G;
    G.G[0][0][1] = G.G[0][1][0] = std::tanh(p[1]);
    G.G[1][0][0] = std::sinh(p[1]) * std::cosh(p[1]);
    return G;
  };
  c.signature = ChartSignature::Lorentzian;
  return c;
}

// Intrinsic AdS_2 chart: g = du^2 - cosh^2(u) dv^2, sigma = -1.
inline SurfaceChart make_anti_de_sitter() {
  SurfaceChart c;
  c.name = "anti-de-sitter";
  c.domain = DomainBox{-6.0, 6.0, -50.0, 50.0};
  c.metric_fn = [](Vec2 p) {
    double ch = std::cosh(p[0]);
    return SymMat2{1.0, 0.0, -ch * ch};
  };
  c.christoffel_fn = [](Vec2 p) {
    Christoffels2 G;
    G.G[1][0][1] = G.G[1][1][0] = std::tanh(p[0]);
    G.G[0][1][1] = std::sinh(p[0]) * std::cosh(p[0]);
    return G;
  };
  c.signature = ChartSignature::Lorentzian;
  return c;
}

// Riemannian hyperbolic chart (curvature cross-checks only): g = du^2 + cosh^2(u) dv^2.
inline SurfaceChart make_hyperbolic() {
  SurfaceChart c;
  c.name = "hyperbolic";
  c.domain = DomainBox{-6.0, 6.0, -50.0, 50.0};
  c.metric_fn = [](Vec2 p) {
    double ch = std::cosh(p[0]);
    return SymMat2{1.0, 0.0, ch * ch};
  };
  c.signature = ChartSignature::Riemannian;
  return c;
}

inline SurfaceChart make_custom(std::string name, std::function<SymMat2(Vec2)> metric,
                                DomainBox box, ChartSignature sig) {
  SurfaceChart c;
  c.name = std::move(name);
  c.domain = box;
  c.metric_fn = std::move(metric);
  c.signature = sig;
  // reject degenerate or mis-declared custom metrics at the domain center
  Vec2 mid{0.5 * (box.u0 + box.u1), 0.5 * (box.v0 + box.v1)};
  SymMat2 g = c.metric_at(mid);
  double tr = g.g11 + g.g22, det = g.det();
  bool lorentzian = det < 0.0;
  (void)tr;
  if (lorentzian != (sig == ChartSignature::Lorentzian))
    throw Error(ErrorCode::DegenerateMetric,
                "declared signature does not match metric eigenvalue signs");
  return c;
}

// Deterministic orthonormal frame {e1, e2} with g(e1,e1) = +1 and, on a
// Lorentzian chart, g(e2,e2) = -1. Starts from the coordinate direction of
// larger |g(d,d)|.
struct Frame2 {
  Vec2 e1, e2;
};

inline Frame2 orthonormal_frame(const SurfaceChart& chart, Vec2 p) {
  SymMat2 g = chart.metric_at(p);
  Vec2 d1{1.0, 0.0}, d2{0.0, 1.0};
  double q1 = g.inner(d1, d1);
  Vec2 a = d1, b = d2;
  if (std::fabs(q1) <= chart.null_tol) {
    a = d2;
    b = d1;
    q1 = g.inner(a, a);
  }
  Vec2 e1 = (1.0 / std::sqrt(std::fabs(q1))) * a;
  double s1 = q1 > 0.0 ? 1.0 : -1.0;
  // subtract the e1 component, then normalize
  Vec2 w = b - (s1 * g.inner(b, e1)) * e1;
  double q2 = g.inner(w, w);
  if (std::fabs(q2) <= chart.null_tol)
    throw Error(ErrorCode::DegenerateMetric, "cannot build orthonormal frame");
  Vec2 e2 = (1.0 / std::sqrt(std::fabs(q2))) * w;
  if (s1 < 0.0) std::swap(e1, e2);  // keep e1 spacelike
  return {e1, e2};
}

// g-orthogonal rotation: j(X) is nonzero and g(j(X), X) = 0 for non-null X.
inline Vec2 perp(const SymMat2& g, Vec2 x) {
  return {-(g.g12 * x[0] + g.g22 * x[1]), g.g11 * x[0] + g.g12 * x[1]};
}

}  // namespace t1m
