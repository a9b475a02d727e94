#pragma once

#include <array>
#include <string>
#include <vector>

#include "fowalk/control.hpp"
#include "fowalk/trajectories.hpp"
#include "fowalk/vec2.hpp"

namespace fowalk {

// The four walking modes. Push-off phases have the trailing foot in contact
// through the toe only.
enum class PhaseId {
  double_support,
  single_support,
  single_support_pushoff,
  double_support_pushoff,
};

inline const char* phase_name(PhaseId p) {
  switch (p) {
    case PhaseId::double_support: return "DS";
    case PhaseId::single_support: return "SS";
    case PhaseId::single_support_pushoff: return "SSPO";
    case PhaseId::double_support_pushoff: return "DSPO";
  }
  return "?";
}

enum class ContactMode { flat, toe, swing };

struct LegDiscreteState {
  ContactMode mode = ContactMode::swing;
  Vec2 heel;               // anchor while flat; derived while toe; spline output while swing
  Vec2 toe_anchor;         // pivot point, valid while mode == toe
  double theta_td = 0.0;   // leg angle at touchdown (mass-ahead positive); ankle-spring neutral
  double pushoff_start = 0.0;  // time heel-off fired, valid while mode == toe
  SwingCurve swing;        // valid while mode == swing
  double swing_t0 = 0.0;
  double swing_t1 = 1.0;
};

// Full hybrid configuration: continuous mass state plus the discrete data
// frozen between events.
struct WalkerState {
  double t = 0.0;
  Vec2 mass_pos;
  Vec2 mass_vel;
  PhaseId phase = PhaseId::single_support;
  std::array<LegDiscreteState, 2> legs;
  Leg last_touchdown = Leg::left;
  std::array<double, 2> leg_work{};  // integrated leg power delivered to the mass

  LegDiscreteState& leg(Leg l) { return legs[idx(l)]; }
  const LegDiscreteState& leg(Leg l) const { return legs[idx(l)]; }
};

enum class EventKind { heel_off, toe_off, touchdown, lift_off, fall };

struct Event {
  EventKind kind = EventKind::fall;
  Leg leg = Leg::left;

  bool operator==(const Event&) const = default;
};

inline std::string event_name(const Event& e) {
  const char* base = nullptr;
  switch (e.kind) {
    case EventKind::heel_off: base = "heel_off"; break;
    case EventKind::toe_off: base = "toe_off"; break;
    case EventKind::touchdown: base = "touchdown"; break;
    case EventKind::lift_off: base = "lift_off"; break;
    case EventKind::fall: return "fall";
  }
  return std::string(base) + (e.leg == Leg::left ? "_l" : "_r");
}

enum class RunStatus { completed, fell, support_lost, error };

inline const char* run_status_name(RunStatus s) {
  switch (s) {
    case RunStatus::completed: return "completed";
    case RunStatus::fell: return "fell";
    case RunStatus::support_lost: return "support_lost";
    case RunStatus::error: return "error";
  }
  return "?";
}

// Per-leg logged signals, one set per trace row.
struct LegSample {
  double L = 0.0;
  double L_d = 0.0;
  double F = 0.0;
  double theta = 0.0;  // mass-ahead positive
  double tau_a = 0.0;
  double F_h = 0.0;
  double F_t = 0.0;
  double heel_x = 0.0, heel_y = 0.0;
  double toe_x = 0.0, toe_y = 0.0;
  double k = 0.0, b = 0.0, k_a = 0.0;
  double dx_target = 0.0;
};

struct TraceRow {
  double t = 0.0;
  double x = 0.0, y = 0.0, vx = 0.0, vy = 0.0;
  PhaseId phase = PhaseId::single_support;
  std::array<LegSample, 2> legs;
  double work_l = 0.0, work_r = 0.0;
  std::string event;  // empty unless this row marks a fired event
};

struct GaitTrace {
  std::vector<TraceRow> rows;
  RunStatus status = RunStatus::completed;
  std::string status_detail;

  std::vector<std::size_t> event_rows() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (!rows[i].event.empty()) out.push_back(i);
    return out;
  }
};

}  // namespace fowalk
