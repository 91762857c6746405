#include "fisim/sensors.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "fisim/vision/effects.hpp"

namespace fisim {

RadarReading sense_radar(const WorldState& w, double sigma_d, double sigma_v, Rng* noise) {
  RadarReading r;
  r.valid = true;
  if (w.lead_present) {
    RadarTrack t{w.d_rel(), w.v_rel()};
    if (noise != nullptr && sigma_d > 0.0) t.d_rel += noise->gaussian(0.0, sigma_d);
    if (noise != nullptr && sigma_v > 0.0) t.v_rel += noise->gaussian(0.0, sigma_v);
    r.push(t);
  }
  return r;
}

VisionReading sense_vision_analytic(const WorldState& w, double preview) {
  VisionReading v;
  v.valid = true;
  const double shift = preview * std::sin(w.heading);
  v.left_lane_x = -w.lane_half_width - w.lat_offset + shift;
  v.right_lane_x = w.lane_half_width - w.lat_offset + shift;
  v.path_poly = {-(v.left_lane_x + v.right_lane_x) / 2.0, 0.0, 0.0, 0.0};
  return v;
}

CarReading sense_car(const WorldState& w, double cruise_set) {
  return {w.host_speed, w.steer_angle, cruise_set};
}

RenderParams make_render_params(const SimConfig& cfg) {
  RenderParams p;
  p.width = cfg.vision.width;
  p.height = cfg.vision.height;
  p.px_per_m = cfg.vision.px_per_m;
  p.road_intensity = cfg.vision.road_intensity;
  p.marker_intensity = cfg.vision.marker_intensity;
  p.marker_width_px = cfg.vision.marker_width_px;
  p.lane_half_width = cfg.sim.lane_half_width;
  p.preview = cfg.sensors.preview;
  return p;
}

DetectParams make_detect_params(const SimConfig& cfg) {
  DetectParams p;
  p.sobel_threshold = cfg.vision.sobel_threshold;
  p.dbscan_eps = cfg.vision.dbscan_eps;
  p.dbscan_min_pts = cfg.vision.dbscan_min_pts;
  p.px_per_m = cfg.vision.px_per_m;
  p.max_edge_points = cfg.vision.max_edge_points;
  return p;
}

SensorRig::SensorRig(const SimConfig& cfg, VisionMode mode, uint64_t noise_seed)
    : cfg_(cfg),
      mode_(mode),
      ticks_per_vision_(std::max(1, static_cast<int>(std::lround(1.0 / (cfg.sensors.vision_hz * cfg.sim.dt))))),
      radar_noise_(mix_seed(noise_seed, 1)),
      vision_noise_(mix_seed(noise_seed, 2)),
      render_params_(make_render_params(cfg)),
      detect_params_(make_detect_params(cfg)),
      dump_dir_(cfg.vision.dump_dir) {}

VisionReading SensorRig::sense_vision_pipeline(const WorldState& w,
                                               const EffectParams* effect,
                                               uint64_t effect_seed) {
  render_scene(render_params_, w.lat_offset, w.heading, frame_);
  if (effect != nullptr) frame_ = perturb(frame_, *effect, effect_seed);
  if (!dump_dir_.empty() && dumped_ < cfg_.vision.dump_max) {
    std::filesystem::create_directories(dump_dir_);
    char name[64];
    std::snprintf(name, sizeof(name), "/frame_%06.2fs.raw", w.t);
    save_raw(frame_, dump_dir_ + name);
    ++dumped_;
  }
  const LaneDetection det = detect_lanes(frame_, detect_params_);
  VisionReading v;
  v.valid = det.ok;
  if (det.ok) {
    v.left_lane_x = det.left_m;
    v.right_lane_x = det.right_m;
    v.path_poly = {-(det.left_m + det.right_m) / 2.0, 0.0, 0.0, 0.0};
  }
  return v;
}

SensorFrame SensorRig::sense(const WorldState& w, int tick, const EffectParams* effect,
                             uint64_t effect_seed) {
  SensorFrame f;
  f.radar = sense_radar(w, cfg_.sensors.radar_sigma_d, cfg_.sensors.radar_sigma_v,
                        &radar_noise_);
  f.car = sense_car(w, cfg_.sim.cruise_mps());

  if (!have_held_ || is_vision_tick(tick)) {
    VisionReading v = mode_ == VisionMode::Analytic
                          ? sense_vision_analytic(w, cfg_.sensors.preview)
                          : sense_vision_pipeline(w, effect, effect_seed);
    if (w.lead_present) {
      double d = w.d_rel();
      if (cfg_.sensors.vision_sigma_d > 0.0)
        d += vision_noise_.gaussian(0.0, cfg_.sensors.vision_sigma_d);
      v.d_rel_vision = d;
    }
    held_ = v;
    have_held_ = true;
  }
  f.vision = held_;
  return f;
}

}  // namespace fisim
