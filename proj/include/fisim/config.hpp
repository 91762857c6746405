#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fisim/units.hpp"
#include "fisim/vision/effects.hpp"
#include "fisim/world.hpp"

namespace fisim {

struct SimParams {
  double dt = 0.01;            // s, 100 Hz control loop
  double duration = 30.0;      // s per run
  double init_gap = 50.0;      // m, initial relative distance
  double cruise_mph = 60.0;    // host cruise set-point at the config boundary
  double lane_half_width = 1.85;  // m

  double cruise_mps() const { return mph_to_mps(cruise_mph); }
};

struct PlantParams {
  double a_min = -8.0;           // m/s^2
  double a_max = 3.0;            // m/s^2
  double steer_rate_gain = 0.5;  // rad/s at full torque
  double steer_limit_deg = 45.0;
  double wheelbase = 2.7;        // m
};

struct ControllerParams {
  double k_v = 0.5;       // /s, cruise term
  double k_d = 0.2;       // /s^2, gap term
  double k_s = 0.8;       // /s, relative-speed term
  double safe_hwt = 2.5;  // s, desired headway
  double k_p = 0.8;       // /m, lane-center term
  double k_h = 8.0;       // /rad, steer-feedback term
  double tau_sat = 1.0;   // steer-saturation alert threshold
  double a_fcw = 3.0;     // m/s^2, forward-collision-warning threshold
  // Standstill hold: once nearly stopped behind a close lead, command full
  // brake until the gap opens again; without it the gap law creeps forward
  // into a stopped lead.
  double hold_speed = 1.0;    // m/s
  double hold_gap = 15.0;     // m, engage below
  double hold_release = 20.0; // m, release above
};

struct SensorParams {
  double radar_sigma_d = 0.0;   // m
  double radar_sigma_v = 0.0;   // m/s
  double vision_sigma_d = 0.0;  // m, on the camera distance channel
  double vision_hz = 20.0;      // vision update rate; readings held between ticks
  double preview = 20.0;        // m, look-ahead distance of the lane sensing
  std::string mode = "auto";    // auto | analytic | pipeline
};

struct HazardParams {
  double d_min = 2.0;               // m, safety-distance floor (H1)
  double v_stop = 0.5;              // m/s (H2)
  double d_far = 100.0;             // m (H2)
  double warmup = 1.0;              // s (H2)
  double vehicle_half_width = 0.9;  // m (H3)
  double lane_half_width = 1.85;    // m (H3)
};

struct VisionParams {
  int width = 640;
  int height = 480;
  double px_per_m = 100.0;
  int road_intensity = 40;
  int marker_intensity = 220;
  int marker_width_px = 8;
  int sobel_threshold = 60;     // edge if |g| exceeds this
  double dbscan_eps = 6.0;      // px
  int dbscan_min_pts = 12;
  int max_edge_points = 40000;  // deterministic subsample cap before clustering
  std::string dump_dir;         // when set, runs export frames here
  int dump_max = 50;            // frames per experiment
};

// Guided trigger context: a (headway-time bucket, relative-speed bucket) cell.
enum class HwtRel { LE, GT };
enum class RsRel { LE0, GT0 };

struct GuidedContext {
  HwtRel hwt_rel = HwtRel::LE;
  double hwt_bound = 2.5;  // s
  RsRel rs_rel = RsRel::GT0;
};

enum class FaultTarget {
  RadarChaff,
  RadarInvisible,
  RadarGhost,
  RadarJam,
  CarSpeed,
  CarSteer,
  VisionPathModel,
  VisionCameraUnavailable,
  VisionDRel,
  RadarAndVisionDRel,
  VisionImageEffect,
};

const char* to_string(FaultTarget t);
FaultTarget fault_target_from_string(const std::string& s);

struct FaultParams {
  double chaff_delta_d = 20.0;   // m
  double chaff_delta_v = 10.0;   // m/s
  double ghost_d = 10.0;         // m
  double ghost_v = -5.0;         // m/s
  double speed_delta = 30.0;     // m/s, per-tick uniform half-range
  double steer_delta_deg = 45.0; // per-run uniform half-range
  double path_delta = 10.0;      // m, per-vision-tick uniform half-range
  double drel_delta = 20.0;      // m, distance-channel half-range
  EffectParams effect;           // VisionImageEffect only
};

struct FaultLibraryEntry {
  std::string name;  // unique report key
  FaultTarget target = FaultTarget::RadarChaff;
  FaultParams params;
  GuidedContext guided;
  int reps = 3;              // repetitions per scenario
  std::string stpa_action;   // informational: accelerate | decelerate | (empty)
  bool stpa_provided = true; // informational
};

struct CampaignParams {
  uint64_t seed = 20260823;
  std::vector<ScenarioId> scenarios = {ScenarioId::S1, ScenarioId::S2, ScenarioId::S3,
                                       ScenarioId::S4, ScenarioId::S5};
};

struct SimConfig {
  SimParams sim;
  PlantParams plant;
  ControllerParams controller;
  SensorParams sensors;
  HazardParams hazard;
  VisionParams vision;
  std::map<std::string, LeadProfile> scenarios;  // keyed "S1".."S5"
  CampaignParams campaign;
  std::vector<FaultLibraryEntry> faults;

  const LeadProfile& profile(ScenarioId id) const;
};

// Built-in defaults: five lead profiles and the standard fault library.
SimConfig default_config();

// Loads a JSON document over the defaults; absent keys keep default values.
SimConfig load_config(const std::string& path);
SimConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const SimConfig& cfg);

// Rejects inconsistent configs (bad ranges, duplicate fault names, malformed
// lead profiles); load_config/config_from_json_text run this automatically.
void check_config(const SimConfig& c);

}  // namespace fisim
