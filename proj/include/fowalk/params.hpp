#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "fowalk/control.hpp"

namespace fowalk {

// Stance subphases. The trailing leg is in push-off from heel-off until its
// toe force crosses zero; before that a stance leg is in touchdown for the
// first td_subphase_fraction of its cycle and in mid-stance otherwise.
enum class Subphase { touchdown, stance, pushoff };

enum class ModelVariant { ankle_foot, point_foot };

// Reference posture of the flat-foot ankle spring. `vertical` keeps the
// spring neutral when the shank is perpendicular to the foot, which
// reproduces human-scale ankle moments with an anthropomorphic foot;
// `touchdown` re-zeros it at each touchdown angle instead.
enum class AnkleNeutral { vertical, touchdown };

// Per-subphase leg spring stiffness and damping ratios.
struct StiffnessSchedule {
  double k_td = 14000.0;  // N/m
  double k_ss = 14000.0;
  double k_po = 14000.0;
  double zeta_td = 0.01;
  double zeta_ss = 0.08;
  double zeta_po = 0.10;
};

// Ankle rotational stiffness while the foot is flat. During push-off the
// ankle torque is set by the feedforward foot-angle trajectory instead.
struct AnkleSchedule {
  double ka_td = 200.0;  // N*m/rad
  double ka_ss = 400.0;
};

struct ModelParams {
  ModelVariant variant = ModelVariant::ankle_foot;

  double body_mass = 75.0;         // kg
  double rest_leg_length = 1.0;    // m
  double stride_period = 1.15;     // s
  double foot_length = 0.20;       // m, heel-to-toe contact span
  double pushoff_angle = 30.0 * std::numbers::pi / 180.0;  // rad
  double pushoff_duration = 0.23;  // s (scenario files may give it as % of T)
  double retraction_amplitude = 0.12;  // m
  double gravity = 9.81;           // m/s^2

  StiffnessSchedule leg_schedule;
  AnkleSchedule ankle_schedule;
  FootPlacementLaw placement_law;
  AnkleNeutral ankle_neutral = AnkleNeutral::vertical;

  double swing_clearance = 0.06;       // m, swing heel apex height
  double td_subphase_fraction = 0.12;  // of stride period

  // Swing spline aims this far below ground so the touchdown residual has a
  // transversal crossing; the event fires at height zero slightly before the
  // spline endpoint.
  double touchdown_overshoot = 0.012;  // m

  double fall_height_fraction = 0.5;   // fall when y_m < fraction * L0
  double gain_blend_fraction = 0.0;    // linear gain blend window, fraction of T (0 = step)

  double fall_height() const { return fall_height_fraction * rest_leg_length; }
};

// b = 2*zeta*sqrt(k*m), the damping coefficient realizing a given damping
// ratio for a second-order system.
inline double damping_from_ratio(double zeta, double k, double m) {
  if (k <= 0.0) throw std::invalid_argument("damping_from_ratio: stiffness must be positive");
  if (m <= 0.0) throw std::invalid_argument("damping_from_ratio: mass must be positive");
  if (zeta < 0.0) throw std::invalid_argument("damping_from_ratio: damping ratio must be >= 0");
  return 2.0 * zeta * std::sqrt(k * m);
}

inline Subphase subphase_of(double cycle_fraction, bool is_pushing, bool heel_down,
                            double td_fraction) {
  if (is_pushing) return Subphase::pushoff;
  if (heel_down && cycle_fraction < td_fraction) return Subphase::touchdown;
  return Subphase::stance;
}

struct Gains {
  double k = 0.0;    // N/m
  double b = 0.0;    // N*s/m
  double k_a = 0.0;  // N*m/rad (zero during push-off: torque is feedforward there)
};

inline Gains gains_at(Subphase sp, const StiffnessSchedule& leg, const AnkleSchedule& ankle,
                      double body_mass) {
  switch (sp) {
    case Subphase::touchdown:
      return {leg.k_td, damping_from_ratio(leg.zeta_td, leg.k_td, body_mass), ankle.ka_td};
    case Subphase::stance:
      return {leg.k_ss, damping_from_ratio(leg.zeta_ss, leg.k_ss, body_mass), ankle.ka_ss};
    case Subphase::pushoff:
      return {leg.k_po, damping_from_ratio(leg.zeta_po, leg.k_po, body_mass), 0.0};
  }
  throw std::logic_error("gains_at: bad subphase");
}

// Stiffness cases 1-3: constant / soft-touchdown / soft-midstance leg springs
// with a shared ankle profile.
inline StiffnessSchedule case_leg_schedule(int case_id) {
  switch (case_id) {
    case 1:
      return {14000.0, 14000.0, 14000.0, 0.01, 0.08, 0.10};
    case 2:
      return {9000.0, 14000.0, 14000.0, 0.01, 0.08, 0.10};
    case 3:
      return {14000.0, 10000.0, 14000.0, 0.01, 0.08, 0.10};
    default:
      throw std::invalid_argument("unknown stiffness case " + std::to_string(case_id) +
                                  " (expected 1, 2 or 3)");
  }
}

inline AnkleSchedule case_ankle_schedule(int case_id) {
  switch (case_id) {
    case 1:
      return {200.0, 400.0};
    case 2:
      return {200.0, 440.0};
    case 3:
      return {200.0, 420.0};
    default:
      throw std::invalid_argument("unknown stiffness case " + std::to_string(case_id) +
                                  " (expected 1, 2 or 3)");
  }
}

inline Gains gains_at(Subphase sp, int case_id, double body_mass) {
  return gains_at(sp, case_leg_schedule(case_id), case_ankle_schedule(case_id), body_mass);
}

// Collects every invariant violation instead of throwing, so a scenario
// loader can report them all at once.
inline std::vector<std::string> validate(const ModelParams& p) {
  std::vector<std::string> v;
  auto require = [&v](bool ok, const std::string& msg) {
    if (!ok) v.push_back(msg);
  };
  require(p.body_mass > 0.0, "body mass must be positive");
  require(p.rest_leg_length > 0.0, "rest leg length must be positive");
  require(p.stride_period > 0.0, "stride period must be positive");
  if (p.variant == ModelVariant::ankle_foot) {
    require(p.foot_length > 0.0, "foot length must be positive");
    require(p.foot_length < p.rest_leg_length, "foot length must be shorter than the leg");
    require(p.pushoff_angle > 0.0 && p.pushoff_angle < 0.5 * std::numbers::pi,
            "push-off angle must lie in (0, pi/2)");
    require(p.pushoff_duration > 0.0, "push-off duration must be positive");
    require(p.pushoff_duration < p.stride_period, "push-off duration exceeds stride");
  }
  require(p.retraction_amplitude > 0.0, "retraction amplitude must be positive");
  require(p.retraction_amplitude < p.rest_leg_length,
          "retraction amplitude must be smaller than the leg length");
  require(p.gravity > 0.0, "gravity must be positive");
  require(p.td_subphase_fraction > 0.0 && p.td_subphase_fraction < 0.5,
          "touchdown subphase fraction must lie in (0, 0.5)");
  require(p.swing_clearance > 0.0, "swing clearance must be positive");
  require(p.touchdown_overshoot > 0.0, "touchdown overshoot must be positive");
  require(p.fall_height_fraction > 0.0 && p.fall_height_fraction < 1.0,
          "fall height fraction must lie in (0, 1)");
  require(p.gain_blend_fraction >= 0.0 && p.gain_blend_fraction < 0.25,
          "gain blend fraction must lie in [0, 0.25)");

  auto check_schedule = [&](const StiffnessSchedule& s) {
    require(s.k_td > 0.0 && s.k_ss > 0.0 && s.k_po > 0.0, "leg stiffness must be positive");
    require(s.zeta_td >= 0.0 && s.zeta_td <= 1.0 && s.zeta_ss >= 0.0 && s.zeta_ss <= 1.0 &&
                s.zeta_po >= 0.0 && s.zeta_po <= 1.0,
            "damping ratios must lie in [0, 1]");
  };
  check_schedule(p.leg_schedule);
  if (p.variant == ModelVariant::ankle_foot) {
    require(p.ankle_schedule.ka_td > 0.0 && p.ankle_schedule.ka_ss > 0.0,
            "ankle stiffness must be positive");
  }
  return v;
}

}  // namespace fowalk
