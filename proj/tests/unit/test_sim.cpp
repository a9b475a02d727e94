#include <catch2/catch_amalgamated.hpp>

#include "fowalk/simulator.hpp"

using namespace fowalk;
using Catch::Approx;

namespace {

ModelParams nominal_params() {
  ModelParams p;
  return p;
}

}  // namespace

TEST_CASE("derivatives: gravity-only free fall") {
  ModelParams p = nominal_params();
  SimContext ctx(p);
  WalkerState st = initial_state(p, 1.2);
  // Force both legs airborne (not a reachable phase; exercised directly).
  st.leg(Leg::left).mode = ContactMode::swing;
  st.leg(Leg::left).swing = SwingCurve({-0.1, 0.0}, -p.touchdown_overshoot, p.swing_clearance);
  st.leg(Leg::left).swing_t0 = st.t;
  st.leg(Leg::left).swing_t1 = st.t + 0.3;
  StateVec y = pack_state(st);
  StateVec dy{};
  derivatives(ctx, st, st.t, y, dy);
  CHECK(dy[2] == Approx(0.0).margin(1e-12));
  CHECK(dy[3] == Approx(-p.gravity));
}

TEST_CASE("derivatives: vertical undeflected leg gives F/m - g") {
  ModelParams p = nominal_params();
  SimContext ctx(p);
  WalkerState st = initial_state(p, 0.0);
  // Stance leg vertical with zero velocity; compression mg/k_ss.
  StateVec y = pack_state(st);
  StateVec dy{};
  derivatives(ctx, st, st.t, y, dy);
  // theta == theta_td == 0, so no ankle torque; static compression balances
  // gravity exactly.
  CHECK(dy[2] == Approx(0.0).margin(1e-9));
  CHECK(dy[3] == Approx(0.0).margin(1e-9));
}

TEST_CASE("event residuals: flat-foot heel-off residual equals F for upright leg") {
  ModelParams p = nominal_params();
  SimContext ctx(p);
  WalkerState st = initial_state(p, 0.0);
  const auto res = event_residuals(ctx, st, st.t);
  // Active: heel_off(stance), touchdown(swing), fall.
  REQUIRE(res.size() == 3);
  const double F = p.body_mass * p.gravity;
  CHECK(res[0] == Approx(F).epsilon(1e-9));
  CHECK(res[2] == Approx(st.mass_pos.y - p.fall_height()));
}

TEST_CASE("touchdown residual is the swing heel height") {
  ModelParams p = nominal_params();
  SimContext ctx(p);
  WalkerState st = initial_state(p, 1.2);
  const LegSignals sig = compute_leg_signals(ctx, st, Leg::right, st.mass_pos, st.mass_vel, st.t);
  CHECK(sig.heel.y == Approx(0.0).margin(1e-12));  // spline starts on the ground
  const double res = event_residual(ctx, st, {EventKind::touchdown, Leg::right}, st.mass_pos,
                                    st.mass_vel, st.t);
  CHECK(res == Approx(sig.heel.y));
}

TEST_CASE("apply_transition follows the phase table") {
  ModelParams p = nominal_params();
  SimContext ctx(p);

  SECTION("single support + heel-off -> single support push-off") {
    WalkerState st = initial_state(p, 1.2);
    st.t = 0.5;
    REQUIRE(apply_transition(ctx, st, {EventKind::heel_off, Leg::left}) ==
            TransitionOutcome::ok);
    CHECK(st.phase == PhaseId::single_support_pushoff);
    CHECK(st.leg(Leg::left).mode == ContactMode::toe);
    CHECK(st.leg(Leg::left).pushoff_start == 0.5);
    CHECK(st.leg(Leg::left).toe_anchor.x == Approx(p.foot_length));
  }

  SECTION("single support push-off + swing touchdown -> double support push-off") {
    WalkerState st = initial_state(p, 1.2);
    REQUIRE(apply_transition(ctx, st, {EventKind::heel_off, Leg::left}) ==
            TransitionOutcome::ok);
    const Vec2 pos_before = st.mass_pos;
    const Vec2 vel_before = st.mass_vel;
    REQUIRE(apply_transition(ctx, st, {EventKind::touchdown, Leg::right}) ==
            TransitionOutcome::ok);
    CHECK(st.phase == PhaseId::double_support_pushoff);
    CHECK(st.leg(Leg::right).mode == ContactMode::flat);
    CHECK(st.leg(Leg::right).heel.y == 0.0);
    CHECK(st.mass_pos == pos_before);
    CHECK(st.mass_vel == vel_before);
  }

  SECTION("double support push-off + trailing toe-off -> single support") {
    WalkerState st = initial_state(p, 1.2);
    REQUIRE(apply_transition(ctx, st, {EventKind::heel_off, Leg::left}) ==
            TransitionOutcome::ok);
    REQUIRE(apply_transition(ctx, st, {EventKind::touchdown, Leg::right}) ==
            TransitionOutcome::ok);
    st.t += 0.1;
    REQUIRE(apply_transition(ctx, st, {EventKind::toe_off, Leg::left}) == TransitionOutcome::ok);
    CHECK(st.phase == PhaseId::single_support);
    CHECK(st.leg(Leg::left).mode == ContactMode::swing);
  }

  SECTION("unknown pair throws a logic error") {
    WalkerState st = initial_state(p, 1.2);
    CHECK_THROWS_AS(apply_transition(ctx, st, {EventKind::toe_off, Leg::left}), std::logic_error);
  }
}

TEST_CASE("simulate: zero horizon returns the initial sample only") {
  ModelParams p = nominal_params();
  WalkerState init = initial_state(p, 1.2);
  GaitTrace tr = simulate(p, init, init.t);
  REQUIRE(tr.rows.size() == 1);
  CHECK(tr.rows[0].t == init.t);
  CHECK(tr.status == RunStatus::completed);
}
