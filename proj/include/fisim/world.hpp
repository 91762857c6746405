#pragma once

#include <string>
#include <vector>

namespace fisim {

enum class ScenarioId { S1, S2, S3, S4, S5 };

const char* to_string(ScenarioId id);
ScenarioId scenario_from_string(const std::string& s);

// Ground-truth kinematic state. lat_offset is measured along the camera's
// rightward axis; heading is counterclockwise-positive yaw, so a positive
// heading moves the vehicle toward negative lat_offset.
struct WorldState {
  double t = 0.0;
  double host_pos = 0.0;       // m along lane
  double host_speed = 0.0;     // m/s
  double host_accel = 0.0;     // m/s^2, last applied
  double lat_offset = 0.0;     // m, 0 = lane center
  double heading = 0.0;        // rad
  double steer_angle = 0.0;    // rad
  bool lead_present = false;
  double lead_pos = 0.0;       // m
  double lead_speed = 0.0;     // m/s
  double lane_half_width = 1.85;  // m

  double d_rel() const { return lead_pos - host_pos; }
  double v_rel() const { return lead_speed - host_speed; }  // negative = closing
};

// One leg of the lead's piecewise speed schedule: from start_t, move toward
// target_speed at |accel|.
struct SpeedSegment {
  double start_t = 0.0;      // s
  double target_speed = 0.0; // m/s
  double accel = 0.0;        // m/s^2, magnitude
};

struct LeadProfile {
  ScenarioId scenario_id = ScenarioId::S1;
  double initial_speed = 0.0;         // m/s
  std::vector<SpeedSegment> segments; // time-ordered
};

}  // namespace fisim
