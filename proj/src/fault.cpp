#include "fisim/fault.hpp"

#include <algorithm>
#include <stdexcept>

#include "fisim/units.hpp"

namespace fisim {

const char* to_string(TriggerMode m) {
  return m == TriggerMode::Guided ? "guided" : "random";
}

TriggerMode trigger_mode_from_string(const std::string& s) {
  if (s == "guided") return TriggerMode::Guided;
  if (s == "random") return TriggerMode::Random;
  throw std::runtime_error("unknown trigger mode: " + s);
}

ContextObservables observe_context(const WorldState& w, double eps_v) {
  ContextObservables obs;
  if (!w.lead_present || w.host_speed <= eps_v) return obs;
  obs.defined = true;
  obs.hwt = w.d_rel() / w.host_speed;
  obs.rs = w.host_speed - w.lead_speed;
  return obs;
}

bool eval_trigger(const TriggerSpec& spec, const ContextObservables& obs, double t) {
  if (spec.mode == TriggerMode::Random) return t >= spec.t_start;
  if (!obs.defined) return false;
  const GuidedContext& g = spec.guided;
  const bool hwt_ok = g.hwt_rel == HwtRel::LE ? obs.hwt <= g.hwt_bound : obs.hwt > g.hwt_bound;
  const bool rs_ok = g.rs_rel == RsRel::GT0 ? obs.rs > 0.0 : obs.rs <= 0.0;
  return hwt_ok && rs_ok;
}

HazardLabel classify_context(ControlAction action, bool provided,
                             const ContextObservables& obs, double safe_hwt) {
  if (!obs.defined) return HazardLabel::None;
  const bool closing = obs.rs > 0.0;
  const bool far = obs.hwt > safe_hwt;
  if (action == ControlAction::Accelerate) {
    if (provided) return closing ? HazardLabel::H1 : HazardLabel::None;
    return (far && !closing) ? HazardLabel::H2 : HazardLabel::None;
  }
  if (provided) return (far && !closing) ? HazardLabel::H2 : HazardLabel::None;
  return closing ? HazardLabel::H1 : HazardLabel::None;
}

FaultEngine::FaultEngine(const FaultSpec& spec, const SimConfig& cfg, int ticks_per_vision)
    : spec_(spec),
      cruise_set_(cfg.sim.cruise_mps()),
      rng_(mix_seed(spec.seed, 3)),
      ticks_per_vision_(std::max(1, ticks_per_vision)) {
  if (spec_.target == FaultTarget::CarSteer) {
    const double d = deg_to_rad(spec_.params.steer_delta_deg);
    steer_offset_ = rng_.uniform(-d, d);
  }
}

bool FaultEngine::update(const ContextObservables& obs, double t) {
  const bool active = eval_trigger(spec_.trigger, obs, t);
  if (active && !t_activate_) t_activate_ = t;
  return active;
}

void FaultEngine::refresh_vision_draws(int tick) {
  const int vt = tick / ticks_per_vision_;
  if (vt == vision_draw_tick_) return;
  vision_draw_tick_ = vt;
  switch (spec_.target) {
    case FaultTarget::VisionPathModel: {
      const double d = spec_.params.path_delta;
      path_left_ = rng_.uniform(-d, d);
      path_right_ = rng_.uniform(-d, d);
      break;
    }
    case FaultTarget::VisionDRel:
    case FaultTarget::RadarAndVisionDRel: {
      const double d = spec_.params.drel_delta;
      vision_d_off_ = rng_.uniform(-d, d);
      break;
    }
    default:
      break;
  }
}

SensorFrame FaultEngine::apply(const SensorFrame& frame, bool active, int tick) {
  if (!active) return frame;
  SensorFrame f = frame;
  switch (spec_.target) {
    case FaultTarget::RadarChaff: {
      const double dd = spec_.params.chaff_delta_d;
      const double dv = spec_.params.chaff_delta_v;
      for (int i = 0; i < f.radar.track_count; ++i) {
        RadarTrack& t = f.radar.tracks[static_cast<size_t>(i)];
        t.d_rel = std::max(0.1, t.d_rel + rng_.uniform(-dd, dd));
        t.v_rel += rng_.uniform(-dv, dv);
      }
      break;
    }
    case FaultTarget::RadarInvisible:
      f.radar.track_count = 0;
      break;
    case FaultTarget::RadarGhost:
      f.radar.push({spec_.params.ghost_d, spec_.params.ghost_v});
      break;
    case FaultTarget::RadarJam:
      f.radar.valid = false;
      break;
    case FaultTarget::CarSpeed: {
      const double d = spec_.params.speed_delta;
      f.car.speed = std::clamp(f.car.speed + rng_.uniform(-d, d), 0.0,
                               2.0 * f.car.cruise_set);
      break;
    }
    case FaultTarget::CarSteer:
      f.car.steer_angle += steer_offset_;
      break;
    case FaultTarget::VisionPathModel:
      refresh_vision_draws(tick);
      f.vision.left_lane_x += path_left_;
      f.vision.right_lane_x += path_right_;
      f.vision.path_poly[0] = -(f.vision.left_lane_x + f.vision.right_lane_x) / 2.0;
      break;
    case FaultTarget::VisionCameraUnavailable:
      f.vision.valid = false;
      break;
    case FaultTarget::VisionDRel:
      if (f.vision.d_rel_vision) {
        refresh_vision_draws(tick);
        f.vision.d_rel_vision = *f.vision.d_rel_vision + vision_d_off_;
      }
      break;
    case FaultTarget::RadarAndVisionDRel: {
      const double dd = spec_.params.drel_delta;
      for (int i = 0; i < f.radar.track_count; ++i) {
        RadarTrack& t = f.radar.tracks[static_cast<size_t>(i)];
        t.d_rel = std::max(0.1, t.d_rel + rng_.uniform(-dd, dd));
      }
      if (f.vision.d_rel_vision) {
        refresh_vision_draws(tick);
        f.vision.d_rel_vision = *f.vision.d_rel_vision + vision_d_off_;
      }
      break;
    }
    case FaultTarget::VisionImageEffect:
      // Applied at render time inside the sensor rig.
      break;
  }
  return f;
}

}  // namespace fisim
