#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

namespace fowalk {

enum class Leg { left = 0, right = 1 };

inline Leg other(Leg leg) { return leg == Leg::left ? Leg::right : Leg::left; }
inline int idx(Leg leg) { return static_cast<int>(leg); }

// Velocity-based touchdown offset of the swing heel ahead of the mass:
//   dx = c0 + c1*vx + c2*(vx - v_ref)
// An engaged override makes the law constant (used by the fixed-placement
// experiment). Value semantics: with_override/cleared return modified copies.
struct FootPlacementLaw {
  double c0 = 0.0;      // m
  double c1 = 0.30;     // s
  double c2 = 0.15;     // s
  double v_ref = 1.2;   // m/s
  std::optional<double> override_dx;

  double target(double vx) const {
    if (override_dx) return *override_dx;
    return c0 + c1 * vx + c2 * (vx - v_ref);
  }

  FootPlacementLaw with_override(double dx) const {
    FootPlacementLaw law = *this;
    law.override_dx = dx;
    return law;
  }

  FootPlacementLaw cleared() const {
    FootPlacementLaw law = *this;
    law.override_dx.reset();
    return law;
  }
};

inline double placement_target(double vx, const FootPlacementLaw& law) { return law.target(vx); }

// Free-running stride clock. Legs run in antiphase (left offset 0, right T/2);
// events never reset it, which is what makes the leg-length trajectory a
// forced oscillation.
struct StrideClock {
  double period = 1.15;  // s

  double leg_offset(Leg leg) const { return leg == Leg::left ? 0.0 : 0.5 * period; }

  // Phase of `leg` at global time t, in [0, T).
  double phase(double t, Leg leg) const {
    if (period <= 0.0) throw std::invalid_argument("stride period must be positive");
    double p = std::fmod(t + leg_offset(leg), period);
    if (p < 0.0) p += period;
    return p;
  }

  double fraction(double t, Leg leg) const { return phase(t, leg) / period; }

  // Earliest time strictly after t at which `leg` reaches phase `target`.
  double next_phase_time(double t, Leg leg, double target) const {
    double p = phase(t, leg);
    double dt = target - p;
    if (dt <= 0.0) dt += period;
    return t + dt;
  }
};

inline double clock_phase(double t, Leg leg, const StrideClock& clock) { return clock.phase(t, leg); }

}  // namespace fowalk
