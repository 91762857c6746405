#pragma once

#include <cstdint>
#include <vector>

#include "fisim/config.hpp"
#include "fisim/sensors.hpp"

namespace fisim {

enum class AlertKind : uint8_t { SteerSaturated = 0, FCW = 1, CanError = 2, ModelError = 3 };
inline constexpr int kAlertKinds = 4;

const char* to_string(AlertKind k);

struct Alert {
  AlertKind kind;
  double t;
};

struct ControlOutput {
  double accel_cmd = 0.0;    // m/s^2
  double steer_torque = 0.0; // normalized [-1, 1]
  bool engaged = true;       // false => both outputs are exactly zero
};

// Longitudinal law: min(cruise term, gap term), clamped to [a_min, a_max].
// Uses the nearest radar track. Caller guarantees radar.valid.
double acc_step(const RadarReading& radar, const CarReading& car,
                const ControllerParams& cp, const PlantParams& pp);

struct LkasResult {
  double torque = 0.0;   // clamped to [-1, 1]
  bool saturated = false;
};

// Lateral law: drive the lane-center error e = -(left+right)/2 to zero with
// steer-angle feedback. Caller guarantees vision.valid.
LkasResult lkas_step(const VisionReading& vision, const CarReading& car,
                     const ControllerParams& cp);

// Forward-collision warning on the nearest track: required deceleration
// v_rel^2 / (2 d_rel) above the threshold while closing.
bool fcw_check(const RadarReading& radar, const CarReading& car, const ControllerParams& cp);

// Alert manager and output assembly. Latches disengage on radar/vision loss,
// records first-occurrence alert times, and applies the standstill hold.
class Controller {
 public:
  Controller(const ControllerParams& cp, const PlantParams& pp);

  // active_mask: bit per AlertKind raised this tick.
  ControlOutput step(const SensorFrame& frame, double t, uint8_t* active_mask = nullptr);

  bool engaged() const { return !disengaged_; }
  bool ever_disengaged() const { return disengaged_; }
  // First-occurrence alerts in the order they first fired.
  const std::vector<Alert>& alerts() const { return alerts_; }

 private:
  void raise(AlertKind k, double t, uint8_t* mask);

  ControllerParams cp_;
  PlantParams pp_;
  bool disengaged_ = false;
  bool hold_ = false;
  bool seen_[kAlertKinds] = {false, false, false, false};
  std::vector<Alert> alerts_;
};

}  // namespace fisim
