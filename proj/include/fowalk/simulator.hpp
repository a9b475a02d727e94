#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "fowalk/sim.hpp"

namespace fowalk {

// Drives the hybrid system: adaptive integration inside a phase, restarts at
// gain/curve boundaries, event localization on dense output, transition
// application with cascade handling, and uniform trace logging.
class Simulator {
 public:
  Simulator(const ModelParams& params, const WalkerState& init, const SimTolerances& tol = {})
      : ctx_(params, tol), st_(init) {
    integ_.rel_tol = tol.rel;
    integ_.abs_tol = tol.abs;
    next_log_ = st_.t;
    log_state_row(st_.t, pack_state(st_), nullptr);
    next_log_ = st_.t + ctx_.tol.log_dt;
    check_immediate_events();
  }

  const WalkerState& state() const { return st_; }
  WalkerState& state() { return st_; }
  const GaitTrace& trace() const { return trace_; }
  GaitTrace take_trace() { return std::move(trace_); }
  SimContext& context() { return ctx_; }
  const SimContext& context() const { return ctx_; }
  bool terminated() const { return terminated_; }
  RunStatus status() const { return trace_.status; }

  void set_placement_override(double dx) {
    ctx_.params.placement_law = ctx_.params.placement_law.with_override(dx);
  }
  void clear_placement_override() {
    ctx_.params.placement_law = ctx_.params.placement_law.cleared();
  }

  // Instantaneous velocity change (perturbation experiments). Logged as a
  // fresh sample so the discontinuity is visible in the trace.
  void inject_velocity(Vec2 dv) {
    st_.mass_vel += dv;
    integ_.reset_step_size();
    log_state_row(st_.t + 1e-9, pack_state(st_), nullptr);
  }

  // Advance by at most dt_max. If an event fires inside the step the state
  // stops exactly at the localized event time and the transition is applied.
  std::optional<Event> step_with_events(double dt_max) {
    if (terminated_) return std::nullopt;
    const double t0 = st_.t;
    double h_max = std::min({dt_max, next_boundary(t0) - t0, ctx_.tol.max_step});
    // Clock boundaries can sit within rounding of t0; one-ulp progress keeps
    // the loop moving without straddling the boundary.
    const double min_h = std::nextafter(t0, std::numeric_limits<double>::infinity()) - t0;
    h_max = std::max(h_max, min_h);

    StateVec y0 = pack_state(st_);
    auto rhs = [this](double t, const StateVec& y, StateVec& dy) {
      derivatives(ctx_, st_, t, y, dy);
    };
    DenseStep<6> step;
    try {
      step = integ_.step(rhs, t0, y0, h_max);
    } catch (const IntegrationError& e) {
      terminate(RunStatus::error, e.what());
      return std::nullopt;
    }

    const ActiveEvents active = active_events(st_, ctx_.params.variant);
    const auto residual_at = [&](const Event& ev, double t) {
      const StateVec y = t == step.t0 ? step.y0 : (t == step.t1 ? step.y1 : step.eval(t));
      return event_residual(ctx_, st_, ev, {y[0], y[1]}, {y[2], y[3]}, t);
    };

    // Scan a few dense samples per event for the first strict sign change,
    // then bisect. Tangential touches produce no sign change and never fire.
    // Several events may cross in one step; the earliest wins. A residual
    // already past zero at the step start (possible when a gain step at a
    // clock boundary jumps a contact force over the manifold) fires right
    // there.
    constexpr int kScan = 4;
    double t_fire = std::numeric_limits<double>::infinity();
    std::optional<Event> fired;
    for (int i = 0; i < active.count; ++i) {
      const Event ev = active.items[i].id;
      double ta = step.t0;
      double ra = residual_at(ev, ta);
      if (ra < -ctx_.tol.event) {
        t_fire = step.t0;
        fired = ev;
        break;
      }
      for (int j = 1; j <= kScan; ++j) {
        const double tb = step.t0 + (step.t1 - step.t0) * j / kScan;
        const double rb = residual_at(ev, tb);
        if (ra > 0.0 && rb < 0.0) {
          const double tc = bisect_crossing([&](double t) { return residual_at(ev, t); }, ta, tb,
                                            ctx_.tol.event, ctx_.tol.event_time);
          if (tc < t_fire) {
            t_fire = tc;
            fired = ev;
          }
          break;
        }
        ta = tb;
        ra = rb;
      }
    }

    if (!fired) {
      advance_to(step.t1, step.y1, step);
      return std::nullopt;
    }

    const StateVec y_ev = step.eval(t_fire);
    advance_to(t_fire, y_ev, step);
    fire_event(*fired);
    return fired;
  }

  RunStatus run_until(double t_stop) {
    while (!terminated_ && st_.t < t_stop - 1e-12) step_with_events(t_stop - st_.t);
    if (!terminated_ && (trace_.rows.empty() || trace_.rows.back().t < st_.t - 1e-12))
      log_state_row(st_.t, pack_state(st_), nullptr);
    return trace_.status;
  }

 private:
  SimContext ctx_;
  WalkerState st_;
  GaitTrace trace_;
  Dopri5<6> integ_;
  double next_log_ = 0.0;
  bool terminated_ = false;

  void terminate(RunStatus status, const std::string& detail) {
    terminated_ = true;
    trace_.status = status;
    trace_.status_detail = detail;
  }

  // Move the continuous state to (t, y), logging uniform samples passed on
  // the way using the dense interpolant.
  void advance_to(double t, const StateVec& y, const DenseStep<6>& step) {
    while (next_log_ < t - 1e-12) {
      log_state_row(next_log_, step.eval(next_log_), nullptr);
      next_log_ += ctx_.tol.log_dt;
    }
    st_.t = t;
    unpack_state(y, st_);
  }

  void fire_event(const Event& ev) {
    log_state_row(st_.t, pack_state(st_), &ev);
    TransitionOutcome out;
    try {
      out = apply_transition(ctx_, st_, ev);
    } catch (const std::exception& e) {
      terminate(RunStatus::error, e.what());
      return;
    }
    if (out == TransitionOutcome::fell) {
      terminate(RunStatus::fell, "fall threshold crossed at t=" + std::to_string(st_.t));
      return;
    }
    if (out == TransitionOutcome::support_lost) {
      terminate(RunStatus::support_lost,
                "last contact lifted off with no leg ready at t=" + std::to_string(st_.t));
      return;
    }
    integ_.reset_step_size();
    // Post-transition sample a sliver later keeps timestamps strictly
    // increasing while giving integrators of the logged signals a correct
    // right-side value at the discontinuity.
    log_state_row(st_.t + 1e-9, pack_state(st_), nullptr);
    check_immediate_events();
  }

  // A reconstructed or freshly transitioned state may already sit past
  // another event's manifold (for instance the trailing heel unloads through
  // zero the moment the fresh leg touches down). Fire those immediately.
  void check_immediate_events() {
    for (int guard = 0; guard < 6 && !terminated_; ++guard) {
      const ActiveEvents active = active_events(st_, ctx_.params.variant);
      std::optional<Event> due;
      for (int i = 0; i < active.count; ++i) {
        const double r = event_residual(ctx_, st_, active.items[i].id, st_.mass_pos, st_.mass_vel,
                                        st_.t);
        if (r < -ctx_.tol.event) {
          due = active.items[i].id;
          break;
        }
      }
      if (!due) return;
      st_.t += 1e-9;  // keep event records strictly ordered
      fire_event(*due);
    }
  }

  // Next time at which the right-hand side loses smoothness: leg-length curve
  // knots, touchdown-gain boundaries, the push-off hold junction, and swing
  // spline knots. Integration restarts there so steps never straddle one.
  double next_boundary(double t) const {
    double out = std::numeric_limits<double>::infinity();
    const double T = ctx_.params.stride_period;
    for (Leg leg : {Leg::left, Leg::right}) {
      for (double f : LegLengthReference::knot_fractions())
        out = std::min(out, ctx_.clock.next_phase_time(t, leg, f * T));
      out = std::min(out, ctx_.clock.next_phase_time(t, leg, ctx_.params.td_subphase_fraction * T));
      if (ctx_.params.gain_blend_fraction > 0.0)
        out = std::min(out, ctx_.clock.next_phase_time(
                                t, leg,
                                (ctx_.params.td_subphase_fraction + ctx_.params.gain_blend_fraction) * T));
      const LegDiscreteState& ls = st_.leg(leg);
      if (ls.mode == ContactMode::toe) {
        const double hold = ls.pushoff_start + ctx_.params.pushoff_duration;
        if (hold > t + 1e-12) out = std::min(out, hold);
      }
      if (ls.mode == ContactMode::swing) {
        const double mid = 0.5 * (ls.swing_t0 + ls.swing_t1);
        if (mid > t + 1e-12) out = std::min(out, mid);
        if (ls.swing_t1 > t + 1e-12) out = std::min(out, ls.swing_t1);
      }
    }
    return out;
  }

  void log_state_row(double t, const StateVec& y, const Event* ev) {
    double stamp = t;
    if (!trace_.rows.empty() && stamp <= trace_.rows.back().t) {
      // Regular samples that collide with an existing row are redundant;
      // event records must survive, so their stamp is nudged forward while
      // the signals stay evaluated at the true event state.
      if (!ev) return;
      stamp = trace_.rows.back().t + 1e-9;
    }
    TraceRow row;
    row.t = stamp;
    row.x = y[0];
    row.y = y[1];
    row.vx = y[2];
    row.vy = y[3];
    row.work_l = y[4];
    row.work_r = y[5];
    row.phase = st_.phase;
    const Vec2 P{y[0], y[1]};
    const Vec2 V{y[2], y[3]};
    for (Leg leg : {Leg::left, Leg::right}) {
      const LegSignals sig = compute_leg_signals(ctx_, st_, leg, P, V, t);
      LegSample& s = row.legs[idx(leg)];
      s.L = sig.geom.length;
      s.L_d = sig.L_d;
      s.F = sig.F;
      s.theta = sig.geom.theta;
      s.tau_a = sig.tau_a;
      s.F_h = sig.F_h;
      s.F_t = sig.F_t;
      s.heel_x = sig.heel.x;
      s.heel_y = sig.heel.y;
      s.toe_x = sig.toe.x;
      s.toe_y = sig.toe.y;
      s.k = sig.gains.k;
      s.b = sig.gains.b;
      s.k_a = sig.gains.k_a;
      s.dx_target = sig.dx_target;
    }
    if (ev) row.event = event_name(*ev);
    trace_.rows.push_back(std::move(row));
  }
};

// Mid-stance start: vertical stance leg statically compressed, clocks set so
// the stance leg sits a quarter period into its cycle, the other leg starting
// its swing from behind the mass.
inline WalkerState initial_state(const ModelParams& params, double speed,
                                 double swing_start_rel_x = -0.30) {
  WalkerState st;
  const double y0 = params.rest_leg_length -
                    params.body_mass * params.gravity / params.leg_schedule.k_ss;
  st.t = 0.25 * params.stride_period;
  st.mass_pos = {0.0, y0};
  st.mass_vel = {speed, 0.0};
  st.phase = PhaseId::single_support;
  st.last_touchdown = Leg::left;

  LegDiscreteState& stance = st.leg(Leg::left);
  stance.mode = ContactMode::flat;
  stance.heel = {0.0, 0.0};
  stance.theta_td = 0.0;

  LegDiscreteState& swing = st.leg(Leg::right);
  swing.mode = ContactMode::swing;
  swing.swing = SwingCurve({swing_start_rel_x, 0.0}, -params.touchdown_overshoot,
                           params.swing_clearance);
  swing.swing_t0 = st.t;
  swing.swing_t1 = st.t + 0.25 * params.stride_period;
  return st;
}

// One-call run. Deterministic: identical inputs give bit-identical traces.
inline GaitTrace simulate(const ModelParams& params, const WalkerState& init, double t_end,
                          const SimTolerances& tol = {}) {
  Simulator sim(params, init, tol);
  sim.run_until(t_end);
  return sim.take_trace();
}

}  // namespace fowalk
