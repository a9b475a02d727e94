#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "fowalk/quintic.hpp"
#include "fowalk/vec2.hpp"

namespace fowalk {

struct CurveSample {
  double value = 0.0;
  double rate = 0.0;
};

// Clock-driven neutral leg length: held at L0 over the first half of the
// stride, then retracted to L0 - dL at 3T/4 and back. The descent and ascent
// each use two quintics joined at their midpoints; with the midpoint slope
// set to -5*dL/(4h) (h = T/8) the pieces carry zero acceleration and jerk at
// every outer junction, so the whole period is C3 including the wrap.
class LegLengthReference {
 public:
  LegLengthReference() = default;

  LegLengthReference(double rest_length, double retraction, double period)
      : rest_length_(rest_length), retraction_(retraction), period_(period) {
    if (period <= 0.0) throw std::invalid_argument("leg length reference: period must be positive");
    if (retraction <= 0.0 || retraction >= rest_length)
      throw std::invalid_argument("leg length reference: retraction must lie in (0, L0)");
    const double T = period;
    const double h = T / 8.0;
    const double vm = -5.0 * retraction / (4.0 * h);
    const double L0 = rest_length;
    const double dL = retraction;
    curve_.append(constant_segment(L0, 0.0, 0.5 * T));
    curve_.append(quintic_between(L0, 0.0, 0.0, L0 - 0.5 * dL, vm, 0.0, 0.5 * T, 0.625 * T));
    curve_.append(quintic_between(L0 - 0.5 * dL, vm, 0.0, L0 - dL, 0.0, 0.0, 0.625 * T, 0.75 * T));
    curve_.append(quintic_between(L0 - dL, 0.0, 0.0, L0 - 0.5 * dL, -vm, 0.0, 0.75 * T, 0.875 * T));
    curve_.append(quintic_between(L0 - 0.5 * dL, -vm, 0.0, L0, 0.0, 0.0, 0.875 * T, T));
  }

  // (L_d, Ld_dot) at a clock phase in [0, T).
  CurveSample operator()(double clock_phase) const {
    if (clock_phase < 0.0 || clock_phase >= period_)
      throw std::domain_error("leg length reference: phase outside [0, T)");
    return {curve_.value(clock_phase), curve_.derivative(clock_phase, 1)};
  }

  double derivative(double clock_phase, int n) const { return curve_.derivative(clock_phase, n); }

  const PiecewiseCurve& curve() const { return curve_; }
  double rest_length() const { return rest_length_; }
  double retraction() const { return retraction_; }
  double period() const { return period_; }

  // Knot times at which integration restarts (derivative discontinuities are
  // absent up to jerk, but stepping across knots cheaply degrades the error
  // estimate).
  static constexpr std::array<double, 5> knot_fractions() {
    return {0.5, 0.625, 0.75, 0.875, 1.0};
  }

 private:
  double rest_length_ = 1.0;
  double retraction_ = 0.12;
  double period_ = 1.15;
  PiecewiseCurve curve_;
};

// Feedforward foot tilt during push-off: a single quintic from 0 to theta_po
// over t_po with zero end rates, held at theta_po afterwards (the torque law
// still needs a defined angle if the toe force has not crossed zero by t_po).
inline CurveSample pushoff_foot_angle(double t_since_pushoff, double theta_po, double t_po) {
  if (t_since_pushoff < 0.0)
    throw std::domain_error("pushoff_foot_angle: time since push-off must be >= 0");
  if (t_po <= 0.0) throw std::invalid_argument("pushoff_foot_angle: t_po must be positive");
  if (t_since_pushoff >= t_po) return {theta_po, 0.0};
  const double u = t_since_pushoff / t_po;
  const double u2 = u * u;
  const double s = u2 * u * (10.0 + u * (-15.0 + 6.0 * u));
  const double ds = 30.0 * u2 * (1.0 + u * (-2.0 + u));
  return {theta_po * s, theta_po * ds / t_po};
}

// Swing-heel reference in a frame that follows the mass horizontally and is
// fixed to the ground vertically: x is heel-ahead-of-mass, y is absolute
// height. Horizontal: single quintic with zero end rates, rebuilt per
// evaluation so the target can track the placement law continuously.
// Vertical: two quintics through the clearance apex at s = 0.5, C3 at the
// joint; the profile is fixed at lift-off, so the touchdown residual is a
// function of s alone.
class SwingCurve {
 public:
  SwingCurve() = default;

  SwingCurve(Vec2 start_rel, double target_y, double clearance)
      : start_(start_rel), target_y_(target_y) {
    if (clearance <= 0.0) throw std::invalid_argument("swing curve: clearance must be positive");
    vertical_ =
        stitch_pair_c3(start_rel.y, 0.0, 0.0, clearance, 0.0, target_y, 0.0, 0.0, 0.0, 0.5, 1.0);
  }

  // Position and d/ds rate at s for the given horizontal target, clamped to
  // the ends outside [0, 1].
  std::pair<Vec2, Vec2> eval(double s, double target_x) const {
    const QuinticSegment hx =
        quintic_between(start_.x, 0.0, 0.0, target_x, 0.0, 0.0, 0.0, 1.0);
    const double sc = std::clamp(s, 0.0, 1.0);
    Vec2 pos{hx.value(sc), vertical_.value(sc)};
    Vec2 rate{hx.derivative(sc, 1), vertical_.derivative(sc, 1)};
    if (s != sc) rate = {0.0, 0.0};
    return {pos, rate};
  }

  double height(double s) const { return vertical_.value(std::clamp(s, 0.0, 1.0)); }

  Vec2 start() const { return start_; }
  double target_y() const { return target_y_; }
  const PiecewiseCurve& vertical() const { return vertical_; }

 private:
  Vec2 start_{};
  double target_y_ = 0.0;
  PiecewiseCurve vertical_{};
};

// One-shot spec form: full target point, evaluated once.
inline std::pair<Vec2, Vec2> swing_heel_reference(double s, Vec2 start_rel, Vec2 target_rel,
                                                  double clearance) {
  if (s < 0.0 || s > 1.0) throw std::domain_error("swing_heel_reference: s outside [0, 1]");
  return SwingCurve(start_rel, target_rel.y, clearance).eval(s, target_rel.x);
}

}  // namespace fowalk
