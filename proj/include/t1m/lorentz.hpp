#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "t1m/error.hpp"
#include "t1m/vec.hpp"

namespace t1m {

inline constexpr double kDefaultNullTol = 1e-9;

// Diagonal metric signature, entries +1 or -1, dimension 2 or 3.
struct MetricSignature {
  std::vector<int> signs;

  MetricSignature(std::initializer_list<int> s) : signs(s) { validate(); }
  explicit MetricSignature(std::vector<int> s) : signs(std::move(s)) { validate(); }

  std::size_t dim() const { return signs.size(); }

  void validate() const {
    if (signs.size() != 2 && signs.size() != 3)
      throw Error(ErrorCode::DimensionMismatch, "signature must have length 2 or 3");
    for (int s : signs)
      if (s != 1 && s != -1)
        throw Error(ErrorCode::DimensionMismatch, "signature entries must be +1 or -1");
  }
};

inline MetricSignature sig_m13() { return MetricSignature{+1, +1, -1}; }
inline MetricSignature sig_lorentz_plane() { return MetricSignature{+1, -1}; }

enum class CausalCharacter { Spacelike, Timelike, Null };

inline const char* to_string(CausalCharacter c) {
  switch (c) {
    case CausalCharacter::Spacelike: return "spacelike";
    case CausalCharacter::Timelike: return "timelike";
    case CausalCharacter::Null: return "null";
  }
  return "?";
}

inline double minkowski_inner(const MetricSignature& sig, std::span<const double> x,
                              std::span<const double> y) {
  if (x.size() != sig.dim() || y.size() != sig.dim())
    throw Error(ErrorCode::DimensionMismatch, "vector dimension does not match signature");
  double acc = 0.0;
  for (std::size_t i = 0; i < sig.dim(); ++i) acc += sig.signs[i] * x[i] * y[i];
  return acc;
}

inline double minkowski_inner(const MetricSignature& sig, Vec3 x, Vec3 y) {
  return minkowski_inner(sig, std::span<const double>(x.c, 3), std::span<const double>(y.c, 3));
}

inline double minkowski_inner(const MetricSignature& sig, Vec2 x, Vec2 y) {
  return minkowski_inner(sig, std::span<const double>(x.c, 2), std::span<const double>(y.c, 2));
}

template <class V>
CausalCharacter causal_character(const MetricSignature& sig, const V& x,
                                 double tol = kDefaultNullTol) {
  double q = minkowski_inner(sig, x, x);
  if (q > tol) return CausalCharacter::Spacelike;
  if (q < -tol) return CausalCharacter::Timelike;
  return CausalCharacter::Null;
}

// Norm as sqrt(|g(x,x)|); the quadratic form is negative on timelike vectors.
template <class V>
double lorentz_norm(const MetricSignature& sig, const V& x, double tol = kDefaultNullTol) {
  double q = minkowski_inner(sig, x, x);
  if (std::fabs(q) <= tol)
    throw Error(ErrorCode::NullVector, "norm of a null vector is undefined");
  return std::sqrt(std::fabs(q));
}

// Minkowski wedge product in signature (+,+,-): determinant expansion of
// | i  j  -k |
// | x1 x2 x3 |
// | y1 y2 y3 |
inline Vec3 wedge3(Vec3 x, Vec3 y) {
  return {x[1] * y[2] - x[2] * y[1],
          -(x[0] * y[2] - x[2] * y[0]),
          -(x[0] * y[1] - x[1] * y[0])};
}

// Lorentzian angle laws of the three causal configurations.
enum class AngleLaw { CosSpan, CoshSpan, SinhMixed };

inline const char* to_string(AngleLaw law) {
  switch (law) {
    case AngleLaw::CosSpan: return "cos";
    case AngleLaw::CoshSpan: return "cosh";
    case AngleLaw::SinhMixed: return "sinh";
  }
  return "?";
}

inline double angle_law_value(AngleLaw law, double theta) {
  switch (law) {
    case AngleLaw::CosSpan: return std::cos(theta);
    case AngleLaw::CoshSpan: return std::cosh(theta);
    case AngleLaw::SinhMixed: return std::sinh(theta);
  }
  return 0.0;
}

// d/dtheta of the law value.
inline double angle_law_derivative(AngleLaw law, double theta) {
  switch (law) {
    case AngleLaw::CosSpan: return -std::sin(theta);
    case AngleLaw::CoshSpan: return std::sinh(theta);
    case AngleLaw::SinhMixed: return std::cosh(theta);
  }
  return 0.0;
}

// Inverse of angle_law_value on the principal branch: [0,pi] for cos,
// theta >= 0 for cosh, all reals for sinh.
inline double recover_angle(AngleLaw law, double value) {
  switch (law) {
    case AngleLaw::CosSpan:
      if (value < -1.0 || value > 1.0)
        throw Error(ErrorCode::OutOfRange, "cos law needs value in [-1,1]");
      return std::acos(value);
    case AngleLaw::CoshSpan:
      if (value < 1.0)
        throw Error(ErrorCode::OutOfRange, "cosh law needs value >= 1");
      return std::acosh(value);
    case AngleLaw::SinhMixed:
      return std::asinh(value);
  }
  return 0.0;
}

}  // namespace t1m
