#include "fisim/plant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fisim/units.hpp"

namespace fisim {

WorldState step_host(const WorldState& state, double accel_cmd, double steer_torque,
                     const PlantParams& p, double dt) {
  if (!std::isfinite(accel_cmd) || !std::isfinite(steer_torque) || dt <= 0.0)
    throw std::invalid_argument("step_host: non-finite input");

  WorldState s = state;
  const double accel = std::clamp(accel_cmd, p.a_min, p.a_max);
  s.host_accel = accel;
  s.host_speed = std::max(0.0, state.host_speed + accel * dt);

  const double steer_limit = deg_to_rad(p.steer_limit_deg);
  const double torque = std::clamp(steer_torque, -1.0, 1.0);
  s.steer_angle = std::clamp(state.steer_angle + p.steer_rate_gain * torque * dt,
                             -steer_limit, steer_limit);
  s.heading = state.heading + state.host_speed * std::tan(state.steer_angle) / p.wheelbase * dt;
  s.lat_offset = state.lat_offset - state.host_speed * std::sin(state.heading) * dt;
  s.host_pos = state.host_pos + state.host_speed * std::cos(state.heading) * dt;
  s.t = state.t + dt;
  return s;
}

LeadStep step_lead(const LeadProfile& profile, double lead_speed, double t, double dt) {
  // Active segment: the last one whose start time has passed.
  const SpeedSegment* seg = nullptr;
  for (const auto& s : profile.segments) {
    if (t >= s.start_t) seg = &s;
    else break;
  }
  double v = lead_speed;
  if (seg != nullptr && v != seg->target_speed) {
    const double dv = seg->accel * dt;
    if (v < seg->target_speed) v = std::min(v + dv, seg->target_speed);
    else v = std::max(v - dv, seg->target_speed);
  }
  v = std::max(0.0, v);
  return {v, v * dt};
}

WorldState init_run(ScenarioId id, const SimConfig& cfg) {
  const LeadProfile& profile = cfg.profile(id);
  WorldState w;
  w.t = 0.0;
  w.host_pos = 0.0;
  w.host_speed = cfg.sim.cruise_mps();
  w.host_accel = 0.0;
  w.lat_offset = 0.0;
  w.heading = 0.0;
  w.steer_angle = 0.0;
  w.lead_present = true;
  w.lead_pos = cfg.sim.init_gap;
  w.lead_speed = profile.initial_speed;
  w.lane_half_width = cfg.sim.lane_half_width;
  return w;
}

}  // namespace fisim
