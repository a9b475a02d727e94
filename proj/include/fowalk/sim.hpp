#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fowalk/integrator.hpp"
#include "fowalk/mechanics.hpp"
#include "fowalk/params.hpp"
#include "fowalk/state.hpp"
#include "fowalk/trajectories.hpp"

namespace fowalk {

struct SimTolerances {
  double rel = 1e-9;
  double abs = 1e-11;
  double event = 1e-9;       // |residual| at a fired event, natural units
  double event_time = 1e-10; // bracket width after localization, s
  double log_dt = 1e-3;      // uniform trace sampling
  double max_step = 0.02;    // s
};

// Immutable-per-run bundle: parameters plus the precomputed clock and
// leg-length reference. The placement law inside params is the one mutable
// piece (override experiments swap it mid-run).
struct SimContext {
  ModelParams params;
  StrideClock clock;
  LegLengthReference leg_ref;
  SimTolerances tol;

  explicit SimContext(const ModelParams& p, const SimTolerances& tols = {})
      : params(p),
        clock{p.stride_period},
        leg_ref(p.rest_leg_length, p.retraction_amplitude, p.stride_period),
        tol(tols) {}
};

// Everything derivable for one leg at one instant. The event residuals, the
// mass dynamics and the trace logger all read from this one pipeline.
struct LegSignals {
  ContactMode mode = ContactMode::swing;
  LegGeometry geom;
  double L_d = 0.0, Ld_rate = 0.0;
  double F_raw = 0.0;  // spring-damper force before the unilateral clamp
  double F = 0.0;
  double tau_a = 0.0;
  double F_h = 0.0, F_t = 0.0;
  double F_t_raw = 0.0;  // toe force from the raw axial force; toe-off residual
  double theta_f = 0.0;  // foot tilt
  Gains gains;
  Vec2 heel, heel_vel, toe;
  Vec2 force;  // transmitted to the mass
  double dx_target = 0.0;
};

namespace detail {

inline Gains flat_gains(const SimContext& ctx, double fraction) {
  const ModelParams& p = ctx.params;
  const Gains td = gains_at(Subphase::touchdown, p.leg_schedule, p.ankle_schedule, p.body_mass);
  const Gains ss = gains_at(Subphase::stance, p.leg_schedule, p.ankle_schedule, p.body_mass);
  const double f0 = p.td_subphase_fraction;
  const double w = p.gain_blend_fraction;
  if (fraction < f0) return td;
  if (w > 0.0 && fraction < f0 + w) {
    const double u = (fraction - f0) / w;
    return {td.k + u * (ss.k - td.k), td.b + u * (ss.b - td.b), td.k_a + u * (ss.k_a - td.k_a)};
  }
  return ss;
}

}  // namespace detail

inline LegSignals compute_leg_signals(const SimContext& ctx, const WalkerState& st, Leg leg,
                                      Vec2 P, Vec2 V, double t) {
  const ModelParams& p = ctx.params;
  const LegDiscreteState& ls = st.leg(leg);
  const bool point_foot = p.variant == ModelVariant::point_foot;

  LegSignals out;
  out.mode = ls.mode;
  out.dx_target = p.placement_law.target(V.x);
  const auto ref = ctx.leg_ref(ctx.clock.phase(t, leg));
  out.L_d = ref.value;
  out.Ld_rate = ref.rate;

  switch (ls.mode) {
    case ContactMode::flat: {
      out.heel = ls.heel;
      out.heel_vel = {0.0, 0.0};
      out.geom = make_leg_geometry(P, V, ls.heel, {0.0, 0.0});
      out.gains = detail::flat_gains(ctx, ctx.clock.fraction(t, leg));
      out.F_raw = axial_leg_force_raw(out.gains.k, out.gains.b, out.L_d, out.Ld_rate,
                                      out.geom.length, out.geom.length_rate);
      out.F = std::max(0.0, out.F_raw);
      if (point_foot) {
        out.tau_a = 0.0;
        out.F_h = out.F;
        out.F_t = 0.0;
        out.toe = ls.heel;
      } else {
        const double neutral =
            p.ankle_neutral == AnkleNeutral::vertical ? 0.0 : ls.theta_td;
        out.tau_a = flatfoot_ankle_torque(out.geom.theta, neutral, out.gains.k_a);
        const ContactForces cf = flatfoot_contact_forces(out.F, out.geom.theta_eq(),
                                                         out.geom.length, p.foot_length, out.tau_a);
        out.F_h = cf.heel;
        out.F_t = cf.toe;
        out.toe = ls.heel + Vec2{p.foot_length, 0.0};
      }
      out.force = leg_force_on_mass(out.F, out.tau_a, out.geom);
      break;
    }
    case ContactMode::toe: {
      const auto tilt = pushoff_foot_angle(t - ls.pushoff_start, p.pushoff_angle,
                                           p.pushoff_duration);
      out.theta_f = tilt.value;
      const double cf_ = std::cos(tilt.value), sf_ = std::sin(tilt.value);
      out.heel = ls.toe_anchor + Vec2{-p.foot_length * cf_, p.foot_length * sf_};
      out.heel_vel = Vec2{p.foot_length * sf_, p.foot_length * cf_} * tilt.rate;
      out.toe = ls.toe_anchor;
      out.geom = make_leg_geometry(P, V, out.heel, out.heel_vel);
      out.gains = gains_at(Subphase::pushoff, p.leg_schedule, p.ankle_schedule, p.body_mass);
      out.F_raw = axial_leg_force_raw(out.gains.k, out.gains.b, out.L_d, out.Ld_rate,
                                      out.geom.length, out.geom.length_rate);
      out.F = std::max(0.0, out.F_raw);
      const double theta_eq = out.geom.theta_eq();
      out.tau_a = pushoff_ankle_torque(out.F, theta_eq, out.theta_f, out.geom.length,
                                       p.foot_length);
      out.F_t = pushoff_toe_force(out.F, theta_eq, out.tau_a, out.geom.length);
      const double tau_raw = pushoff_ankle_torque(out.F_raw, theta_eq, out.theta_f,
                                                  out.geom.length, p.foot_length);
      out.F_t_raw = pushoff_toe_force(out.F_raw, theta_eq, tau_raw, out.geom.length);
      out.F_h = 0.0;
      out.force = leg_force_on_mass(out.F, out.tau_a, out.geom);
      break;
    }
    case ContactMode::swing: {
      const double dur = ls.swing_t1 - ls.swing_t0;
      const double s = (t - ls.swing_t0) / dur;
      const auto [rel, rate] = ls.swing.eval(s, out.dx_target);
      out.heel = {P.x + rel.x, rel.y};
      out.heel_vel = {V.x + rate.x / dur, rate.y / dur};
      out.toe = out.heel + (point_foot ? Vec2{} : Vec2{p.foot_length, 0.0});
      out.geom = make_leg_geometry(P, V, out.heel, out.heel_vel);
      out.force = {0.0, 0.0};
      break;
    }
  }
  return out;
}

// State vector: [x, y, vx, vy, W_left, W_right]. The work integrals ride
// along so the energy bookkeeping is exact across events.
using StateVec = std::array<double, 6>;

inline StateVec pack_state(const WalkerState& st) {
  return {st.mass_pos.x, st.mass_pos.y, st.mass_vel.x, st.mass_vel.y, st.leg_work[0],
          st.leg_work[1]};
}

inline void unpack_state(const StateVec& y, WalkerState& st) {
  st.mass_pos = {y[0], y[1]};
  st.mass_vel = {y[2], y[3]};
  st.leg_work = {y[4], y[5]};
}

// Point-mass dynamics under the forces of the contacting legs; clocks ride on
// global time, contact anchors are frozen between events.
inline void derivatives(const SimContext& ctx, const WalkerState& st, double t, const StateVec& y,
                        StateVec& dy) {
  const Vec2 P{y[0], y[1]};
  const Vec2 V{y[2], y[3]};
  Vec2 net{0.0, -ctx.params.body_mass * ctx.params.gravity};
  double work_rate[2] = {0.0, 0.0};
  for (Leg leg : {Leg::left, Leg::right}) {
    if (st.leg(leg).mode == ContactMode::swing) continue;
    const LegSignals sig = compute_leg_signals(ctx, st, leg, P, V, t);
    net += sig.force;
    work_rate[idx(leg)] = sig.force.dot(V);
  }
  dy[0] = V.x;
  dy[1] = V.y;
  dy[2] = net.x / ctx.params.body_mass;
  dy[3] = net.y / ctx.params.body_mass;
  dy[4] = work_rate[0];
  dy[5] = work_rate[1];
}

struct EventSpec {
  Event id;
  int residual_sign_direction = -1;  // all transitions fire on + -> - crossings
};

struct ActiveEvents {
  std::array<EventSpec, 3> items{};
  int count = 0;

  void add(EventKind kind, Leg leg) { items[count++] = {{kind, leg}, -1}; }
};

namespace detail {

inline Leg leg_with_mode(const WalkerState& st, ContactMode m) {
  if (st.legs[0].mode == m) return Leg::left;
  if (st.legs[1].mode == m) return Leg::right;
  throw std::logic_error("inconsistent phase/contact bookkeeping");
}

}  // namespace detail

inline Leg trailing_leg(const WalkerState& st) {
  switch (st.phase) {
    case PhaseId::double_support: return other(st.last_touchdown);
    case PhaseId::double_support_pushoff: return detail::leg_with_mode(st, ContactMode::toe);
    case PhaseId::single_support: return detail::leg_with_mode(st, ContactMode::flat);
    case PhaseId::single_support_pushoff: return detail::leg_with_mode(st, ContactMode::toe);
  }
  throw std::logic_error("bad phase");
}

inline ActiveEvents active_events(const WalkerState& st, ModelVariant variant) {
  ActiveEvents ev;
  if (variant == ModelVariant::point_foot) {
    switch (st.phase) {
      case PhaseId::double_support:
        ev.add(EventKind::lift_off, other(st.last_touchdown));
        break;
      case PhaseId::single_support:
        ev.add(EventKind::lift_off, detail::leg_with_mode(st, ContactMode::flat));
        ev.add(EventKind::touchdown, detail::leg_with_mode(st, ContactMode::swing));
        break;
      default:
        throw std::logic_error("point-foot model only has DS/SS phases");
    }
  } else {
    switch (st.phase) {
      case PhaseId::double_support:
        ev.add(EventKind::heel_off, other(st.last_touchdown));
        break;
      case PhaseId::single_support:
        ev.add(EventKind::heel_off, detail::leg_with_mode(st, ContactMode::flat));
        ev.add(EventKind::touchdown, detail::leg_with_mode(st, ContactMode::swing));
        break;
      case PhaseId::single_support_pushoff:
        ev.add(EventKind::toe_off, detail::leg_with_mode(st, ContactMode::toe));
        ev.add(EventKind::touchdown, detail::leg_with_mode(st, ContactMode::swing));
        break;
      case PhaseId::double_support_pushoff:
        ev.add(EventKind::toe_off, detail::leg_with_mode(st, ContactMode::toe));
        break;
    }
  }
  ev.add(EventKind::fall, Leg::left);
  return ev;
}

// Residual whose negative-going zero crossing fires `ev`.
inline double event_residual(const SimContext& ctx, const WalkerState& st, const Event& ev, Vec2 P,
                             Vec2 V, double t) {
  switch (ev.kind) {
    case EventKind::fall:
      return P.y - ctx.params.fall_height();
    case EventKind::heel_off:
      return compute_leg_signals(ctx, st, ev.leg, P, V, t).F_h;
    case EventKind::toe_off:
      return compute_leg_signals(ctx, st, ev.leg, P, V, t).F_t_raw;
    case EventKind::lift_off:
      return compute_leg_signals(ctx, st, ev.leg, P, V, t).F_raw;
    case EventKind::touchdown:
      return compute_leg_signals(ctx, st, ev.leg, P, V, t).heel.y;
  }
  throw std::logic_error("bad event kind");
}

// Residuals of all events active in the current phase, in active_events order.
inline std::vector<double> event_residuals(const SimContext& ctx, const WalkerState& st,
                                           double t) {
  const ActiveEvents ev = active_events(st, ctx.params.variant);
  std::vector<double> out(static_cast<std::size_t>(ev.count));
  for (int i = 0; i < ev.count; ++i)
    out[static_cast<std::size_t>(i)] =
        event_residual(ctx, st, ev.items[i].id, st.mass_pos, st.mass_vel, t);
  return out;
}

enum class TransitionOutcome { ok, fell, support_lost };

// Begin a swing: spline from the lift-off heel position (mass-relative x,
// absolute height) to the placement target, ending when the leg's clock
// wraps. A wrap closer than 5% of T is skipped to avoid a degenerate spline.
inline void start_swing(SimContext& ctx, WalkerState& st, Leg leg, Vec2 start_rel) {
  LegDiscreteState& ls = st.leg(leg);
  const ModelParams& p = ctx.params;
  ls.mode = ContactMode::swing;
  ls.swing = SwingCurve(start_rel, -p.touchdown_overshoot, p.swing_clearance);
  ls.swing_t0 = st.t;
  double dur = ctx.params.stride_period - ctx.clock.phase(st.t, leg);
  if (dur < 0.05 * ctx.params.stride_period) dur += ctx.params.stride_period;
  ls.swing_t1 = st.t + dur;
}

// Applies the phase-transition table. The continuous mass state is left
// untouched: the legs are massless, so there is no impact map.
inline TransitionOutcome apply_transition(SimContext& ctx, WalkerState& st, const Event& ev) {
  const ModelParams& p = ctx.params;
  const double t = st.t;
  LegDiscreteState& ls = st.leg(ev.leg);

  auto bad_pair = [&]() -> std::logic_error {
    return std::logic_error(std::string("transition (") + phase_name(st.phase) + ", " +
                            event_name(ev) + ") is not in the table");
  };

  switch (ev.kind) {
    case EventKind::fall:
      return TransitionOutcome::fell;

    case EventKind::touchdown: {
      if (ls.mode != ContactMode::swing) throw bad_pair();
      if (st.phase != PhaseId::single_support && st.phase != PhaseId::single_support_pushoff)
        throw bad_pair();
      const LegSignals sig = compute_leg_signals(ctx, st, ev.leg, st.mass_pos, st.mass_vel, t);
      ls.mode = ContactMode::flat;
      ls.heel = {sig.heel.x, 0.0};  // residual is ~0 here; anchor exactly on the ground
      ls.theta_td = std::atan2(st.mass_pos.x - ls.heel.x, st.mass_pos.y);
      st.last_touchdown = ev.leg;
      st.phase = st.phase == PhaseId::single_support ? PhaseId::double_support
                                                     : PhaseId::double_support_pushoff;
      return TransitionOutcome::ok;
    }

    case EventKind::heel_off: {
      if (ls.mode != ContactMode::flat) throw bad_pair();
      if (st.phase != PhaseId::single_support && st.phase != PhaseId::double_support)
        throw bad_pair();
      ls.toe_anchor = ls.heel + Vec2{p.foot_length, 0.0};
      ls.pushoff_start = t;
      ls.mode = ContactMode::toe;
      st.phase = st.phase == PhaseId::single_support ? PhaseId::single_support_pushoff
                                                     : PhaseId::double_support_pushoff;
      return TransitionOutcome::ok;
    }

    case EventKind::toe_off: {
      if (ls.mode != ContactMode::toe) throw bad_pair();
      if (st.phase == PhaseId::single_support_pushoff) return TransitionOutcome::support_lost;
      if (st.phase != PhaseId::double_support_pushoff) throw bad_pair();
      const LegSignals sig = compute_leg_signals(ctx, st, ev.leg, st.mass_pos, st.mass_vel, t);
      start_swing(ctx, st, ev.leg, Vec2{sig.heel.x - st.mass_pos.x, sig.heel.y});
      st.phase = PhaseId::single_support;
      return TransitionOutcome::ok;
    }

    case EventKind::lift_off: {
      if (ls.mode != ContactMode::flat || p.variant != ModelVariant::point_foot) throw bad_pair();
      if (st.phase == PhaseId::single_support) return TransitionOutcome::support_lost;
      if (st.phase != PhaseId::double_support) throw bad_pair();
      start_swing(ctx, st, ev.leg, Vec2{ls.heel.x - st.mass_pos.x, ls.heel.y});
      st.phase = PhaseId::single_support;
      return TransitionOutcome::ok;
    }
  }
  throw bad_pair();
}

}  // namespace fowalk
