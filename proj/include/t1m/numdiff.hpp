#pragma once

namespace t1m {

// Fourth-order central difference. Frame pipelines nest differentiation up
// to three deep, so a wide step with a high-order stencil keeps both the
// eps/h^3 rounding floor and the truncation error small.
template <class F>
auto central4(F&& f, double x, double h) {
  auto num = -1.0 * f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + 1.0 * f(x - 2.0 * h);
  return (1.0 / (12.0 * h)) * num;
}

}  // namespace t1m
