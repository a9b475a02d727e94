#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "fowalk/mechanics.hpp"

using namespace fowalk;
using Catch::Approx;

TEST_CASE("axial leg force: spring-damper with unilateral clamp") {
  CHECK(axial_leg_force(14000, 100, 1.0, 0.0, 1.0, 0.0) == 0.0);
  CHECK(axial_leg_force(14000, 0, 1.0, 0.0, 0.98, 0.0) == Approx(280.0));
  CHECK(axial_leg_force(14000, 163.95, 1.0, -0.05, 0.98, 0.05) == Approx(263.61).margin(0.005));
  // Tensile demand clamps to zero; the raw value stays signed.
  CHECK(axial_leg_force(14000, 0, 0.95, 0.0, 1.0, 0.0) == 0.0);
  CHECK(axial_leg_force_raw(14000, 0, 0.95, 0.0, 1.0, 0.0) == Approx(-700.0));
}

TEST_CASE("axial leg force is never negative over random draws") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double k = 1000 + 19000 * d(rng);
    const double b = 500 * d(rng);
    const double F = axial_leg_force(k, b, 0.8 + 0.4 * d(rng), 2 * d(rng) - 1, 0.8 + 0.4 * d(rng),
                                     2 * d(rng) - 1);
    CHECK(F >= 0.0);
  }
}

TEST_CASE("flat-foot ankle torque: dorsiflexion spring with clamp") {
  CHECK(flatfoot_ankle_torque(0.2, 0.2, 400.0) == 0.0);
  CHECK(flatfoot_ankle_torque(-0.1, -0.2, 400.0) == Approx(40.0));
  CHECK(flatfoot_ankle_torque(0.1, 0.2, 400.0) == 0.0);
}

TEST_CASE("flat-foot contact forces reproduce the frozen example") {
  const ContactForces c = flatfoot_contact_forces(750.0, 0.1, 1.0, 0.2, 30.0);
  CHECK(c.heel == Approx(593.26).margin(0.005));
  CHECK(c.toe == Approx(150.0));

  const ContactForces plain = flatfoot_contact_forces(640.0, 0.0, 1.0, 0.2, 0.0);
  CHECK(plain.heel == Approx(640.0));
  CHECK(plain.toe == 0.0);
}

TEST_CASE("flat-foot heel+toe sum is F cos(theta) - tau sin(theta)/L") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double F = 1000 * d(rng);
    const double th = 1.2 * d(rng) - 0.6;
    const double L = 0.7 + 0.5 * d(rng);
    const double Lf = 0.1 + 0.4 * d(rng);
    const double tau = 300 * d(rng);
    const ContactForces c = flatfoot_contact_forces(F, th, L, Lf, tau);
    CHECK(c.heel + c.toe ==
          Approx(F * std::cos(th) - tau * std::sin(th) / L).margin(1e-9 * (1 + F)));
  }
}

TEST_CASE("push-off ankle torque reproduces the frozen example and the cosine zero") {
  CHECK(pushoff_ankle_torque(750.0, 0.2, 0.3, 0.95, 0.2) == Approx(119.57).margin(0.005));
  const double th = 0.4;
  CHECK(pushoff_ankle_torque(600.0, th, 0.5 * std::numbers::pi - th, 1.0, 0.2) ==
        Approx(0.0).margin(1e-9));
}

TEST_CASE("push-off toe force reproduces the frozen example and limits") {
  CHECK(pushoff_toe_force(750.0, 0.2, 119.57, 0.95) == Approx(710.04).margin(0.01));
  CHECK(pushoff_toe_force(500.0, 0.0, 0.0, 1.0) == Approx(500.0));
  CHECK(pushoff_toe_force(0.0, 0.3, 50.0, 1.0) == Approx(-50.0 * std::sin(0.3)));
}

TEST_CASE("heel-off torque continuity: Eq. 3 at zero tilt zeroes the heel force") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double F = 50.0 + 1500.0 * d(rng);
    const double th = 1.0 * d(rng) - 0.5;
    const double L = 0.6 + 0.6 * d(rng);
    const double Lf = 0.1 + 0.4 * d(rng);
    const double tau = pushoff_ankle_torque(F, th, 0.0, L, Lf);
    const ContactForces c = flatfoot_contact_forces(F, th, L, Lf, tau);
    CHECK(std::abs(c.heel) <= 1e-10 * (std::abs(F) + std::abs(tau)));
  }
}

TEST_CASE("push-off torque throws at the singular toe-pivot configuration") {
  //  1 + (Lf/L) sin(x) = 0 requires Lf >= L; pick Lf == L and x = -pi/2.
  CHECK_THROWS_AS(pushoff_ankle_torque(500.0, -0.5 * std::numbers::pi, 0.0, 0.5, 0.5),
                  std::runtime_error);
}

TEST_CASE("leg geometry: angle sign, units, and rates") {
  // Mass ahead of the ankle gives positive theta.
  const LegGeometry g = make_leg_geometry({0.2, 0.95}, {1.2, 0.0}, {0.0, 0.0}, {0.0, 0.0});
  CHECK(g.theta == Approx(std::atan2(0.2, 0.95)));
  CHECK(g.theta_eq() == Approx(-std::atan2(0.2, 0.95)));
  CHECK(g.length == Approx(std::hypot(0.2, 0.95)));
  CHECK(g.unit_axial.dot(g.unit_transverse) == Approx(0.0).margin(1e-15));
  // Forward mass motion increases theta and stretches the leg.
  CHECK(g.theta_rate > 0.0);
  CHECK(g.length_rate > 0.0);
  CHECK_THROWS_AS(make_leg_geometry({0, 0}, {0, 0}, {0, 0}, {0, 0}), std::domain_error);
}

TEST_CASE("leg force on mass: axial-only and vertical decomposition") {
  const LegGeometry g = make_leg_geometry({0.1, 0.97}, {1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0});
  const Vec2 pure = leg_force_on_mass(500.0, 0.0, g);
  CHECK(pure.norm() == Approx(500.0));
  CHECK(pure.dot(g.unit_transverse) == Approx(0.0).margin(1e-9));

  // Vertical component equals F_h + F_t of the flat-foot split.
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const Vec2 mass{2 * d(rng) - 1, 0.7 + 0.5 * d(rng)};
    const Vec2 ankle{2 * d(rng) - 1, 0.0};
    const LegGeometry geom = make_leg_geometry(mass, {0, 0}, ankle, {0, 0});
    const double F = 900 * d(rng);
    const double tau = 250 * d(rng);
    const double Lf = 0.35;
    const ContactForces c = flatfoot_contact_forces(F, geom.theta_eq(), geom.length, Lf, tau);
    const Vec2 f = leg_force_on_mass(F, tau, geom);
    CHECK(f.y == Approx(c.heel + c.toe).margin(1e-9 * 736.0));
  }

  // A swing leg carries no force at all.
  CHECK(leg_force_on_mass(0.0, 0.0, g) == Vec2{0.0, 0.0});
}
