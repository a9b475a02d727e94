#include <cstdio>
#include <cstdlib>

#include "fowalk/simulator.hpp"

using namespace fowalk;

int main(int argc, char** argv) {
  ModelParams p;
  double t_end = 20.0;
  if (argc > 1) p.foot_length = std::atof(argv[1]);
  if (argc > 2) p.placement_law.c1 = std::atof(argv[2]);
  if (argc > 3) p.placement_law.c2 = std::atof(argv[3]);
  if (argc > 4) p.retraction_amplitude = std::atof(argv[4]);
  if (argc > 5) t_end = std::atof(argv[5]);
  double v0 = 1.2;
  if (argc > 6) v0 = std::atof(argv[6]);
  if (argc > 7) p.placement_law.c0 = std::atof(argv[7]);
  if (argc > 8) p.touchdown_overshoot = std::atof(argv[8]);
  if (argc > 9) p.td_subphase_fraction = std::atof(argv[9]);

  WalkerState init = initial_state(p, v0);
  Simulator sim(p, init, {});
  sim.run_until(t_end);
  const GaitTrace& tr = sim.trace();
  std::printf("status=%s rows=%zu t_last=%.3f\n", run_status_name(tr.status), tr.rows.size(),
              tr.rows.empty() ? 0.0 : tr.rows.back().t);
  std::printf("detail=%s\n", tr.status_detail.c_str());
  int shown = 0;
  double last_td_t = -1.0, last_td_x = 0.0;
  for (const auto& row : tr.rows) {
    if (row.event.empty()) continue;
    if (shown < 40) {
      std::printf("  ev %-14s t=%8.4f x=%7.3f y=%6.4f vx=%6.3f phase->%s\n", row.event.c_str(),
                  row.t, row.x, row.y, row.vx, phase_name(row.phase));
      ++shown;
    }
    if (row.event.rfind("touchdown_l", 0) == 0) {
      if (last_td_t >= 0) {
        std::printf("stride @t=%8.3f  dur=%.4f  speed=%.4f  y=%.4f vx=%.4f\n", row.t,
                    row.t - last_td_t, (row.x - last_td_x) / (row.t - last_td_t), row.y, row.vx);
      }
      last_td_t = row.t;
      last_td_x = row.x;
    }
  }
  return 0;
}
