#pragma once

#include <cmath>
#include <stdexcept>

#include "fowalk/vec2.hpp"

namespace fowalk {

// Angle conventions
// -----------------
// State, logging and the ankle spring use theta measured from vertical,
// positive when the mass is ahead of the ankle (it grows monotonically
// through stance). The contact-force equations below take the opposite sign:
// theta positive when the ankle is ahead of the mass, which is the convention
// under which the heel/toe force split and the toe-pivot torque balance are
// statically consistent for the massless leg-foot assembly. Call sites pass
// -theta_fwd; LegGeometry::theta_eq() does the flip.

struct LegGeometry {
  Vec2 ankle_pos;        // heel end of the foot; the ankle joint sits there
  double length = 0.0;   // m
  double length_rate = 0.0;
  double theta = 0.0;    // rad, positive mass ahead of ankle
  double theta_rate = 0.0;
  Vec2 unit_axial;       // ankle -> mass
  Vec2 unit_transverse;  // axial rotated +90 deg; see leg_force_on_mass

  double theta_eq() const { return -theta; }
};

// Geometry of one leg from mass and ankle kinematics.
inline LegGeometry make_leg_geometry(Vec2 mass_pos, Vec2 mass_vel, Vec2 ankle_pos,
                                     Vec2 ankle_vel) {
  Vec2 d = mass_pos - ankle_pos;
  const double L = d.norm();
  if (L <= 0.0) throw std::domain_error("leg geometry: zero leg length");
  LegGeometry g;
  g.ankle_pos = ankle_pos;
  g.length = L;
  g.unit_axial = d / L;
  g.unit_transverse = perp_ccw(g.unit_axial);
  Vec2 rel_vel = mass_vel - ankle_vel;
  g.length_rate = rel_vel.dot(g.unit_axial);
  g.theta = std::atan2(d.x, d.y);
  g.theta_rate = -rel_vel.dot(g.unit_transverse) / L;
  return g;
}

// Spring-damper leg force about the commanded neutral length, clamped at zero
// because the unilateral leg cannot pull on the ground.
inline double axial_leg_force_raw(double k, double b, double L_d, double Ld_rate, double L,
                                  double L_rate) {
  return k * (L_d - L) + b * (Ld_rate - L_rate);
}

inline double axial_leg_force(double k, double b, double L_d, double Ld_rate, double L,
                              double L_rate) {
  return std::max(0.0, axial_leg_force_raw(k, b, L_d, Ld_rate, L, L_rate));
}

// Flat-foot ankle: a spring resisting dorsiflexion, neutral at the leg angle
// recorded at touchdown. Angles here are in the mass-ahead-positive
// convention, so the deflection is theta - theta_td.
inline double flatfoot_ankle_torque(double theta, double theta_td, double k_a) {
  return k_a * std::max(0.0, theta - theta_td);
}

struct ContactForces {
  double heel = 0.0;  // N, vertical reaction at the heel
  double toe = 0.0;   // N, vertical reaction at the toe
};

// Heel/toe split of the vertical reaction for a flat foot. theta in the
// equation convention (ankle ahead of mass positive).
inline ContactForces flatfoot_contact_forces(double F, double theta, double L, double L_f,
                                             double tau_a) {
  ContactForces c;
  c.heel = F * std::cos(theta) - tau_a * (std::sin(theta) / L + 1.0 / L_f);
  c.toe = tau_a / L_f;
  return c;
}

// Ankle moment required to hold the commanded foot tilt while pivoting about
// the toe. theta in the equation convention. The denominator stays well away
// from zero for sane geometry; a vanishing one means the commanded tilt is
// statically impossible, which aborts the run with a diagnostic.
inline double pushoff_ankle_torque(double F, double theta, double theta_f, double L, double L_f) {
  const double denom = 1.0 + (L_f / L) * std::sin(theta_f + theta);
  if (std::abs(denom) < 1e-9)
    throw std::runtime_error("pushoff_ankle_torque: singular toe-pivot configuration");
  return F * L_f * std::cos(theta_f + theta) / denom;
}

// Vertical toe reaction during push-off; its zero crossing ends the phase.
inline double pushoff_toe_force(double F, double theta, double tau_a, double L) {
  return F * std::cos(theta) - tau_a * std::sin(theta) / L;
}

// Net force the (massless) leg transmits to the point mass: the axial
// spring-damper force plus the transverse tip force of the ankle torque.
// With unit_transverse = axial rotated +90 deg, the vertical component
// equals F_h + F_t of the flat-foot split, which is the invariant the sign
// conventions are pinned by. Swing legs transmit nothing (F = tau_a = 0).
inline Vec2 leg_force_on_mass(double F, double tau_a, const LegGeometry& geom) {
  if (geom.length <= 0.0) throw std::domain_error("leg_force_on_mass: zero leg length");
  return geom.unit_axial * F + geom.unit_transverse * (tau_a / geom.length);
}

}  // namespace fowalk
