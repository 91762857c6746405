#include "fisim/controller.hpp"

#include <algorithm>
#include <cmath>

namespace fisim {

const char* to_string(AlertKind k) {
  switch (k) {
    case AlertKind::SteerSaturated: return "SteerSaturated";
    case AlertKind::FCW: return "FCW";
    case AlertKind::CanError: return "CanError";
    case AlertKind::ModelError: return "ModelError";
  }
  return "?";
}

double acc_step(const RadarReading& radar, const CarReading& car,
                const ControllerParams& cp, const PlantParams& pp) {
  const double a_c =
      std::clamp(cp.k_v * (car.cruise_set - car.speed), pp.a_min, pp.a_max);
  const RadarTrack* lead = radar.nearest();
  if (lead == nullptr) return a_c;
  const double d_desired = cp.safe_hwt * car.speed;
  const double a_g = cp.k_d * (lead->d_rel - d_desired) + cp.k_s * lead->v_rel;
  return std::clamp(std::min(a_c, a_g), pp.a_min, pp.a_max);
}

LkasResult lkas_step(const VisionReading& vision, const CarReading& car,
                     const ControllerParams& cp) {
  const double e = -(vision.left_lane_x + vision.right_lane_x) / 2.0;
  const double u = cp.k_p * e + cp.k_h * (0.0 - car.steer_angle);
  LkasResult r;
  r.saturated = std::abs(u) > cp.tau_sat;
  r.torque = std::clamp(u, -1.0, 1.0);
  return r;
}

bool fcw_check(const RadarReading& radar, const CarReading& car, const ControllerParams& cp) {
  (void)car;
  const RadarTrack* lead = radar.nearest();
  if (lead == nullptr) return false;
  if (lead->v_rel >= 0.0 || lead->d_rel <= 0.0) return false;
  const double a_req = lead->v_rel * lead->v_rel / (2.0 * lead->d_rel);
  return a_req > cp.a_fcw;
}

Controller::Controller(const ControllerParams& cp, const PlantParams& pp)
    : cp_(cp), pp_(pp) {}

void Controller::raise(AlertKind k, double t, uint8_t* mask) {
  if (mask != nullptr) *mask |= static_cast<uint8_t>(1u << static_cast<int>(k));
  const int idx = static_cast<int>(k);
  if (!seen_[idx]) {
    seen_[idx] = true;
    alerts_.push_back({k, t});
  }
}

ControlOutput Controller::step(const SensorFrame& frame, double t, uint8_t* active_mask) {
  if (active_mask != nullptr) *active_mask = 0;
  // Sensor-loss alerts fire even after disengage; the latch itself is final.
  if (!frame.radar.valid) {
    raise(AlertKind::CanError, t, active_mask);
    disengaged_ = true;
  }
  if (!frame.vision.valid) {
    raise(AlertKind::ModelError, t, active_mask);
    disengaged_ = true;
  }
  if (disengaged_) return {0.0, 0.0, false};

  double accel = acc_step(frame.radar, frame.car, cp_, pp_);

  // Standstill hold: latch full brake when crawling close behind a lead;
  // release once the gap opens. Prevents creeping into a stopped lead, which
  // the proportional gap law alone would do.
  const RadarTrack* lead = frame.radar.nearest();
  if (hold_) {
    if (lead == nullptr || lead->d_rel > cp_.hold_release) hold_ = false;
  } else if (lead != nullptr && lead->d_rel <= cp_.hold_gap &&
             frame.car.speed <= cp_.hold_speed) {
    hold_ = true;
  }
  if (hold_) accel = pp_.a_min;

  const LkasResult lkas = lkas_step(frame.vision, frame.car, cp_);
  if (lkas.saturated) raise(AlertKind::SteerSaturated, t, active_mask);
  if (fcw_check(frame.radar, frame.car, cp_)) raise(AlertKind::FCW, t, active_mask);

  return {accel, lkas.torque, true};
}

}  // namespace fisim
