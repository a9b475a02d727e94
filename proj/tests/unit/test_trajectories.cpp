#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "fowalk/trajectories.hpp"

using namespace fowalk;
using Catch::Approx;

namespace {
constexpr double kL0 = 1.0;
constexpr double kdL = 0.12;
constexpr double kT = 1.15;
}  // namespace

TEST_CASE("leg length reference holds L0 over the first half and dips to L0-dL") {
  const LegLengthReference ref(kL0, kdL, kT);
  const auto hold = ref(0.25 * kT);
  CHECK(hold.value == kL0);
  CHECK(hold.rate == 0.0);
  const auto apex = ref(0.75 * kT);
  CHECK(apex.value == Approx(kL0 - kdL).margin(1e-12));
  CHECK(apex.rate == Approx(0.0).margin(1e-12));
  CHECK_THROWS_AS(ref(-0.01), std::domain_error);
  CHECK_THROWS_AS(ref(kT), std::domain_error);
}

TEST_CASE("leg length reference stays within [L0-dL, L0]") {
  const LegLengthReference ref(kL0, kdL, kT);
  for (int i = 0; i < 2000; ++i) {
    const double phase = kT * i / 2000.0;
    const double v = ref(phase).value;
    CHECK(v <= kL0 + 1e-12);
    CHECK(v >= kL0 - kdL - 1e-12);
  }
}

TEST_CASE("leg length reference is C3 at every knot including the wrap") {
  const LegLengthReference ref(kL0, kdL, kT);
  // Symbolic comparison from the segment coefficients at interior knots.
  for (int n = 0; n <= 3; ++n) CHECK(ref.curve().knot_mismatch(n) < 1e-8 * (1.0 + kdL));
  // Periodic wrap: compare T- against 0+ per derivative order.
  for (int n = 0; n <= 3; ++n) {
    const double end = ref.curve().segments.back().derivative(kT, n);
    const double start = ref.curve().segments.front().derivative(0.0, n);
    CHECK(end == Approx(start).margin(1e-8 * (1.0 + kdL / std::pow(kT, n))));
  }
}

TEST_CASE("reported jerk matches a finite-difference oracle away from knots") {
  const LegLengthReference ref(kL0, kdL, kT);
  // Five-point centered difference of the value as an independent check of
  // the symbolic derivatives.
  auto fd3 = [&](double t, double h) {
    return (ref(t + 2 * h).value - 2 * ref(t + h).value + 2 * ref(t - h).value -
            ref(t - 2 * h).value) /
           (2 * h * h * h);
  };
  for (double t : {0.55 * kT, 0.7 * kT, 0.8 * kT, 0.95 * kT}) {
    const double h = 2e-4;
    CHECK(ref.derivative(t, 3) == Approx(fd3(t, h)).margin(2e-3 * std::abs(ref.derivative(t, 3)) + 1e-4));
  }
  // Jerk at the hold junction vanishes from both sides: the symbolic value on
  // the quintic side equals the hold side exactly.
  const double scale = kdL / (kT * kT * kT);
  CHECK(std::abs(ref.derivative(0.5 * kT, 3)) < 1e-8 * scale + 1e-10);
}

TEST_CASE("pushoff foot angle hits its endpoints exactly and holds") {
  const double theta_po = 30.0 * std::numbers::pi / 180.0;
  const double t_po = 0.23;
  auto at0 = pushoff_foot_angle(0.0, theta_po, t_po);
  CHECK(at0.value == 0.0);
  CHECK(at0.rate == 0.0);
  auto at_end = pushoff_foot_angle(t_po, theta_po, t_po);
  CHECK(at_end.value == Approx(0.5236).margin(5e-5));
  CHECK(at_end.value == theta_po);
  CHECK(at_end.rate == 0.0);
  auto beyond = pushoff_foot_angle(2.0 * t_po, theta_po, t_po);
  CHECK(beyond.value == theta_po);
  CHECK(beyond.rate == 0.0);
  CHECK_THROWS_AS(pushoff_foot_angle(-0.1, theta_po, t_po), std::domain_error);
}

TEST_CASE("pushoff foot angle is non-decreasing and bounded") {
  const double theta_po = 0.5236;
  const double t_po = 0.23;
  double prev = -1.0;
  for (int i = 0; i <= 300; ++i) {
    const double t = 1.5 * t_po * i / 300.0;
    const auto s = pushoff_foot_angle(t, theta_po, t_po);
    CHECK(s.value >= prev - 1e-12);
    CHECK(s.value >= 0.0);
    CHECK(s.value <= theta_po + 1e-12);
    prev = s.value;
  }
}

TEST_CASE("swing heel reference obeys its boundary conditions") {
  const Vec2 start{-0.35, 0.17};
  const Vec2 target{0.22, -0.012};
  const double h_clr = 0.06;

  auto [p0, r0] = swing_heel_reference(0.0, start, target, h_clr);
  CHECK(p0.x == Approx(start.x).margin(1e-12));
  CHECK(p0.y == Approx(start.y).margin(1e-12));

  auto [p1, r1] = swing_heel_reference(1.0, start, target, h_clr);
  CHECK(p1.x == Approx(target.x).margin(1e-12));
  CHECK(p1.y == Approx(target.y).margin(1e-12));
  CHECK(r1.x == Approx(0.0).margin(1e-10));
  CHECK(r1.y == Approx(0.0).margin(1e-10));

  auto [pm, rm] = swing_heel_reference(0.5, start, target, h_clr);
  CHECK(pm.y == Approx(h_clr).margin(1e-12));

  CHECK_THROWS_AS(swing_heel_reference(0.5, start, target, -0.01), std::invalid_argument);
  CHECK_THROWS_AS(swing_heel_reference(1.5, start, target, h_clr), std::domain_error);
}

TEST_CASE("swing vertical apex oracle matches an independent boundary solve") {
  // Oracle: build the apex-to-ground half directly with quintic_between using
  // the joint state the stitched curve reports, then compare values.
  const Vec2 start{-0.3, 0.0};
  const Vec2 target{0.2, -0.012};
  const double h_clr = 0.08;
  SwingCurve curve(start, target.y, h_clr);
  const auto& vert = curve.vertical();
  const double a_mid = vert.derivative(0.5, 2);
  const QuinticSegment oracle = quintic_between(h_clr, 0.0, a_mid, target.y, 0.0, 0.0, 0.5, 1.0);
  for (int i = 0; i <= 10; ++i) {
    const double s = 0.5 + 0.5 * i / 10.0;
    CHECK(vert.value(s) == Approx(oracle.value(s)).margin(1e-10));
  }
}
