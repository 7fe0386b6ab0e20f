#pragma once

#include <cmath>
#include <functional>

#include "t1m/error.hpp"
#include "t1m/lorentz.hpp"
#include "t1m/numdiff.hpp"
#include "t1m/vec.hpp"

namespace t1m {

struct Mat3 {
  double m[3][3]{};

  double inner(Vec3 a, Vec3 b) const {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) acc += m[i][j] * a[i] * b[j];
    return acc;
  }

  Mat3 inverse() const {
    Mat3 inv;
    double c00 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    double c01 = m[1][2] * m[2][0] - m[1][0] * m[2][2];
    double c02 = m[1][0] * m[2][1] - m[1][1] * m[2][0];
    double det = m[0][0] * c00 + m[0][1] * c01 + m[0][2] * c02;
    if (std::fabs(det) < 1e-300)
      throw Error(ErrorCode::DegenerateMetric, "3x3 metric not invertible");
    double id = 1.0 / det;
    inv.m[0][0] = c00 * id;
    inv.m[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) * id;
    inv.m[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) * id;
    inv.m[1][0] = c01 * id;
    inv.m[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) * id;
    inv.m[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) * id;
    inv.m[2][0] = c02 * id;
    inv.m[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) * id;
    inv.m[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) * id;
    return inv;
  }
};

inline Vec3 euclid_cross(Vec3 a, Vec3 b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double det3(Vec3 a, Vec3 b, Vec3 c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

// Flat ambient Minkowski 3-space, signature (+,+,-). The frame is completed
// with the Minkowski wedge so that T x N = eps1 eps2 B.
class FlatM3 {
 public:
  using vec = Vec3;

  FlatM3(std::function<Vec3(double)> curve, double h = 1e-3)
      : curve_(std::move(curve)), h_(h) {}

  vec tangent(double s) const { return central4(curve_, s, h_); }

  double inner(double, vec a, vec b) const {
    return a[0] * b[0] + a[1] * b[1] - a[2] * b[2];
  }

  vec covariant(const std::function<vec(double)>& F, double s) const {
    return central4(F, s, h_);
  }

  vec complete_frame(double s, vec T, vec N, int eps1, int eps2) const {
    Vec3 B = (eps1 * eps2) * wedge3(T, N);
    double q = inner(s, B, B);
    if (std::fabs(q) < 1e-12)
      throw Error(ErrorCode::NullFrameVector, "wedge of T and N is null");
    return (1.0 / std::sqrt(std::fabs(q))) * B;
  }

  double comp_norm(double, vec a) const { return sup_norm(a); }

 private:
  std::function<Vec3(double)> curve_;
  double h_;
};

// Generic 3-D coordinate chart: metric components plus finite-difference
// Christoffels. Used as an independent route to bundle geometry in tests.
class Chart3 {
 public:
  using vec = Vec3;

  Chart3(std::function<Mat3(Vec3)> metric, std::function<Vec3(double)> curve,
         double h_metric = 1e-5, double h_field = 1e-3)
      : metric_(std::move(metric)), curve_(std::move(curve)), hm_(h_metric), hf_(h_field) {}

  vec tangent(double s) const { return central4(curve_, s, hf_); }

  double inner(double s, vec a, vec b) const { return metric_(curve_(s)).inner(a, b); }

  vec covariant(const std::function<vec(double)>& F, double s) const {
    Vec3 dF = central4(F, s, hf_);
    Vec3 cp = tangent(s);
    Vec3 f = F(s);
    double G[3][3][3];
    christoffels(curve_(s), G);
    Vec3 out = dF;
    for (int l = 0; l < 3; ++l)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) out[l] += G[l][j][k] * cp[j] * f[k];
    return out;
  }

  vec complete_frame(double s, vec T, vec N, int, int) const {
    Mat3 g = metric_(curve_(s));
    Vec3 a{}, b{};
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        a[j] += g.m[j][k] * T[k];
        b[j] += g.m[j][k] * N[k];
      }
    Vec3 B = euclid_cross(a, b);  // nullspace of the two covector rows
    double q = g.inner(B, B);
    if (std::fabs(q) < 1e-12 * sup_norm(B) * sup_norm(B))
      throw Error(ErrorCode::NullFrameVector, "frame complement is null");
    B = (1.0 / std::sqrt(std::fabs(q))) * B;
    if (det3(T, N, B) < 0.0) B = -B;
    return B;
  }

  double comp_norm(double, vec a) const { return sup_norm(a); }

  void christoffels(Vec3 p, double G[3][3][3]) const {
    Mat3 gi = metric_(p).inverse();
    double dg[3][3][3];  // dg[k][i][j]
    for (int k = 0; k < 3; ++k) {
      Vec3 pp = p, pm = p;
      pp[k] += hm_;
      pm[k] -= hm_;
      Mat3 A = metric_(pp), Bm = metric_(pm);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) dg[k][i][j] = (A.m[i][j] - Bm.m[i][j]) / (2.0 * hm_);
    }
    for (int l = 0; l < 3; ++l)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          double sacc = 0.0;
          for (int m = 0; m < 3; ++m)
            sacc += gi.m[l][m] * (dg[j][m][k] + dg[k][j][m] - dg[m][j][k]);
          G[l][j][k] = 0.5 * sacc;
        }
  }

 private:
  std::function<Mat3(Vec3)> metric_;
  std::function<Vec3(double)> curve_;
  double hm_, hf_;
};

}  // namespace t1m
