#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "t1m/lorentz.hpp"

using namespace t1m;

TEST_CASE("minkowski inner product") {
  MetricSignature m3 = sig_m13();
  MetricSignature m2 = sig_lorentz_plane();

  CHECK(minkowski_inner(m3, Vec3{1, 2, 3}, Vec3{1, 2, 3}) == Catch::Approx(-4.0));
  CHECK(minkowski_inner(m2, Vec2{1, 1}, Vec2{1, 1}) == 0.0);
  CHECK(minkowski_inner(m3, Vec3{1, 0, 0}, Vec3{0, 0, 1}) == 0.0);

  std::vector<double> bad{1.0, 2.0};
  CHECK_THROWS_AS(minkowski_inner(m3, bad, bad), Error);

  // exact symmetry on random samples
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    Vec3 x{d(rng), d(rng), d(rng)}, y{d(rng), d(rng), d(rng)};
    CHECK(minkowski_inner(m3, x, y) == minkowski_inner(m3, y, x));
  }
}

TEST_CASE("causal character") {
  MetricSignature m3 = sig_m13();
  CHECK(causal_character(m3, Vec3{1, 0, 0}, 1e-12) == CausalCharacter::Spacelike);
  CHECK(causal_character(m3, Vec3{0, 0, 1}, 1e-12) == CausalCharacter::Timelike);
  CHECK(causal_character(m3, Vec3{1, 0, 1}, 1e-12) == CausalCharacter::Null);

  // scale invariance for non-null vectors
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  std::uniform_real_distribution<double> lg(-3.0, 3.0);
  int used = 0;
  while (used < 100) {
    Vec3 x{d(rng), d(rng), d(rng)};
    auto c = causal_character(m3, x, 1e-9);
    if (c == CausalCharacter::Null) continue;
    ++used;
    double lam = std::pow(10.0, lg(rng));
    if (used % 2) lam = -lam;
    CHECK(causal_character(m3, lam * x, 1e-9) == c);
  }
}

TEST_CASE("wedge product") {
  Vec3 e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1};
  Vec3 w12 = wedge3(e1, e2);
  CHECK(w12[0] == 0.0);
  CHECK(w12[1] == 0.0);
  CHECK(w12[2] == -1.0);
  Vec3 w13 = wedge3(e1, e3);
  CHECK(w13[0] == 0.0);
  CHECK(w13[1] == -1.0);
  CHECK(w13[2] == 0.0);

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> d(-4.0, 4.0);
  MetricSignature m3 = sig_m13();
  for (int i = 0; i < 200; ++i) {
    Vec3 x{d(rng), d(rng), d(rng)}, y{d(rng), d(rng), d(rng)};
    Vec3 w = wedge3(x, y);
    // g-orthogonal to both arguments
    CHECK(std::fabs(minkowski_inner(m3, w, x)) < 1e-10);
    CHECK(std::fabs(minkowski_inner(m3, w, y)) < 1e-10);
    // exact antisymmetry
    Vec3 anti = wedge3(y, x) + w;
    CHECK(sup_norm(anti) == 0.0);
    Vec3 self = wedge3(x, x);
    CHECK(sup_norm(self) == 0.0);
  }
}

TEST_CASE("lorentz norm") {
  MetricSignature m3 = sig_m13();
  MetricSignature m2 = sig_lorentz_plane();
  CHECK(lorentz_norm(m3, Vec3{0, 0, 2}) == Catch::Approx(2.0));
  CHECK(lorentz_norm(m2, Vec2{3, 0}) == Catch::Approx(3.0));
  CHECK_THROWS_AS(lorentz_norm(m3, Vec3{1, 0, 1}), Error);
  try {
    lorentz_norm(m3, Vec3{1, 0, 1});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NullVector);
  }
}

TEST_CASE("angle laws") {
  CHECK(angle_law_value(AngleLaw::CosSpan, 0.0) == 1.0);
  CHECK(angle_law_value(AngleLaw::SinhMixed, 0.0) == 0.0);
  CHECK_THROWS_AS(recover_angle(AngleLaw::CoshSpan, 0.5), Error);
  try {
    recover_angle(AngleLaw::CoshSpan, 0.5);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfRange);
  }

  // round trip law(recover(v)) = v on each law's range
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> in01(-1.0, 1.0);
  std::uniform_real_distribution<double> big(1.0, 20.0);
  std::uniform_real_distribution<double> anyv(-20.0, 20.0);
  for (int i = 0; i < 300; ++i) {
    double v1 = in01(rng);
    CHECK(angle_law_value(AngleLaw::CosSpan, recover_angle(AngleLaw::CosSpan, v1)) ==
          Catch::Approx(v1).margin(1e-12));
    double v2 = big(rng);
    CHECK(angle_law_value(AngleLaw::CoshSpan, recover_angle(AngleLaw::CoshSpan, v2)) ==
          Catch::Approx(v2).margin(1e-12 * v2));
    double v3 = anyv(rng);
    CHECK(angle_law_value(AngleLaw::SinhMixed, recover_angle(AngleLaw::SinhMixed, v3)) ==
          Catch::Approx(v3).margin(1e-12 * (1.0 + std::fabs(v3))));
  }

  // principal branches
  CHECK(recover_angle(AngleLaw::CosSpan, -1.0) == Catch::Approx(3.14159265358979));
  CHECK(recover_angle(AngleLaw::CoshSpan, 1.0) == 0.0);
}
