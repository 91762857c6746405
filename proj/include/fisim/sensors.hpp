#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "fisim/config.hpp"
#include "fisim/rng.hpp"
#include "fisim/vision/image.hpp"
#include "fisim/vision/lane_detect.hpp"
#include "fisim/vision/render.hpp"
#include "fisim/world.hpp"

namespace fisim {

struct RadarTrack {
  double d_rel = 0.0;  // m
  double v_rel = 0.0;  // m/s, lead minus host (negative = closing)
};

struct RadarReading {
  bool valid = true;
  int track_count = 0;
  std::array<RadarTrack, 2> tracks{};

  const RadarTrack* nearest() const {
    if (track_count == 0) return nullptr;
    if (track_count == 1) return &tracks[0];
    return tracks[0].d_rel <= tracks[1].d_rel ? &tracks[0] : &tracks[1];
  }
  void push(RadarTrack t) {
    if (track_count < 2) tracks[static_cast<size_t>(track_count++)] = t;
  }
};

struct VisionReading {
  bool valid = true;
  double left_lane_x = 0.0;   // m, signed offset of left marker at the preview point
  double right_lane_x = 0.0;  // m
  std::array<double, 4> path_poly{};  // predicted path polynomial, logged only
  std::optional<double> d_rel_vision; // camera distance channel, logged only
};

struct CarReading {
  double speed = 0.0;        // m/s
  double steer_angle = 0.0;  // rad
  double cruise_set = 0.0;   // m/s
};

struct SensorFrame {
  RadarReading radar;
  VisionReading vision;
  CarReading car;
};

enum class VisionMode { Analytic, Pipeline };

// Stateless projections, exposed for direct testing. Lane positions are
// sensed at the preview distance ahead, so heading shifts both markers.
RadarReading sense_radar(const WorldState& w, double sigma_d, double sigma_v, Rng* noise);
VisionReading sense_vision_analytic(const WorldState& w, double preview);
CarReading sense_car(const WorldState& w, double cruise_set);

// Per-run sensor stack: radar and car at the control rate, vision recomputed
// at vision_hz and held between vision ticks (both modes).
class SensorRig {
 public:
  SensorRig(const SimConfig& cfg, VisionMode mode, uint64_t noise_seed);

  // effect: image perturbation to apply at this tick's render, or nullptr.
  // effect_seed must be stable per vision tick.
  SensorFrame sense(const WorldState& w, int tick, const EffectParams* effect,
                    uint64_t effect_seed);

  bool is_vision_tick(int tick) const { return tick % ticks_per_vision_ == 0; }
  int ticks_per_vision() const { return ticks_per_vision_; }
  VisionMode mode() const { return mode_; }

  void set_dump_dir(const std::string& dir) { dump_dir_ = dir; }

 private:
  VisionReading sense_vision_pipeline(const WorldState& w, const EffectParams* effect,
                                      uint64_t effect_seed);

  SimConfig cfg_;
  VisionMode mode_;
  int ticks_per_vision_;
  Rng radar_noise_;
  Rng vision_noise_;
  VisionReading held_;
  bool have_held_ = false;
  RenderParams render_params_;
  DetectParams detect_params_;
  Image frame_;
  std::string dump_dir_;
  int dumped_ = 0;
};

RenderParams make_render_params(const SimConfig& cfg);
DetectParams make_detect_params(const SimConfig& cfg);

}  // namespace fisim
