#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "t1m/error.hpp"

namespace t1m {

struct Vec2 {
  double c[2]{0.0, 0.0};

  double& operator[](std::size_t i) { return c[i]; }
  double operator[](std::size_t i) const { return c[i]; }
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a[0], s * a[1]}; }
inline Vec2 operator-(Vec2 a) { return {-a[0], -a[1]}; }

struct Vec3 {
  double c[3]{0.0, 0.0, 0.0};

  double& operator[](std::size_t i) { return c[i]; }
  double operator[](std::size_t i) const { return c[i]; }
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a[0], s * a[1], s * a[2]}; }
inline Vec3 operator-(Vec3 a) { return {-a[0], -a[1], -a[2]}; }

inline double sup_norm(Vec2 a) { return std::max(std::fabs(a[0]), std::fabs(a[1])); }
inline double sup_norm(Vec3 a) {
  return std::max(std::fabs(a[0]), std::max(std::fabs(a[1]), std::fabs(a[2])));
}

// Symmetric 2x2 metric components g_ij.
struct SymMat2 {
  double g11 = 1.0, g12 = 0.0, g22 = 1.0;

  double det() const { return g11 * g22 - g12 * g12; }

  double inner(Vec2 a, Vec2 b) const {
    return g11 * a[0] * b[0] + g12 * (a[0] * b[1] + a[1] * b[0]) + g22 * a[1] * b[1];
  }

  SymMat2 inverse() const {
    double d = det();
    if (std::fabs(d) < 1e-300) throw Error(ErrorCode::DegenerateMetric, "2x2 metric not invertible");
    return {g22 / d, -g12 / d, g11 / d};
  }

  Vec2 apply(Vec2 a) const {
    return {g11 * a[0] + g12 * a[1], g12 * a[0] + g22 * a[1]};
  }
};

}  // namespace t1m
