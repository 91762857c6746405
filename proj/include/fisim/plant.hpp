#pragma once

#include "fisim/config.hpp"
#include "fisim/world.hpp"

namespace fisim {

// One 100 Hz step of the host vehicle. Longitudinal: commanded accel clamped
// to [a_min, a_max], speed floored at 0. Lateral: torque drives steer rate,
// steer drives heading (counterclockwise-positive), heading moves lat_offset
// along the camera's rightward axis, so lat_offset -= speed*sin(heading)*dt.
// Throws std::invalid_argument on non-finite inputs.
WorldState step_host(const WorldState& state, double accel_cmd, double steer_torque,
                     const PlantParams& p, double dt);

// Advances the scripted lead: move toward the active segment's target at its
// accel magnitude without overshoot. Returns {new_speed, pos_delta}.
struct LeadStep {
  double speed;
  double pos_delta;
};
LeadStep step_lead(const LeadProfile& profile, double lead_speed, double t, double dt);

// Initial state for a scenario: host at cruise speed, centered, lead ahead by
// the configured gap at the profile's initial speed.
WorldState init_run(ScenarioId id, const SimConfig& cfg);

}  // namespace fisim
