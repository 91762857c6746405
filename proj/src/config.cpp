#include "fisim/config.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fisim {

using nlohmann::ordered_json;

const char* to_string(FaultTarget t) {
  switch (t) {
    case FaultTarget::RadarChaff: return "radar_chaff";
    case FaultTarget::RadarInvisible: return "radar_invisible";
    case FaultTarget::RadarGhost: return "radar_ghost";
    case FaultTarget::RadarJam: return "radar_jam";
    case FaultTarget::CarSpeed: return "car_speed";
    case FaultTarget::CarSteer: return "car_steer";
    case FaultTarget::VisionPathModel: return "vision_path_model";
    case FaultTarget::VisionCameraUnavailable: return "vision_camera_unavailable";
    case FaultTarget::VisionDRel: return "vision_d_rel";
    case FaultTarget::RadarAndVisionDRel: return "radar_and_vision_d_rel";
    case FaultTarget::VisionImageEffect: return "vision_image_effect";
  }
  return "?";
}

FaultTarget fault_target_from_string(const std::string& s) {
  static const std::map<std::string, FaultTarget> m = {
      {"radar_chaff", FaultTarget::RadarChaff},
      {"radar_invisible", FaultTarget::RadarInvisible},
      {"radar_ghost", FaultTarget::RadarGhost},
      {"radar_jam", FaultTarget::RadarJam},
      {"car_speed", FaultTarget::CarSpeed},
      {"car_steer", FaultTarget::CarSteer},
      {"vision_path_model", FaultTarget::VisionPathModel},
      {"vision_camera_unavailable", FaultTarget::VisionCameraUnavailable},
      {"vision_d_rel", FaultTarget::VisionDRel},
      {"radar_and_vision_d_rel", FaultTarget::RadarAndVisionDRel},
      {"vision_image_effect", FaultTarget::VisionImageEffect}};
  auto it = m.find(s);
  if (it == m.end()) throw std::runtime_error("unknown fault target: " + s);
  return it->second;
}

const LeadProfile& SimConfig::profile(ScenarioId id) const {
  auto it = scenarios.find(to_string(id));
  if (it == scenarios.end())
    throw std::runtime_error(std::string("no lead profile for ") + to_string(id));
  return it->second;
}

namespace {

LeadProfile make_profile(ScenarioId id, double initial_mph,
                         std::vector<std::array<double, 3>> segs_mph) {
  LeadProfile p;
  p.scenario_id = id;
  p.initial_speed = mph_to_mps(initial_mph);
  for (const auto& s : segs_mph)
    p.segments.push_back({s[0], mph_to_mps(s[1]), s[2]});
  return p;
}

FaultLibraryEntry entry(std::string name, FaultTarget target, GuidedContext ctx, int reps,
                        std::string action, bool provided) {
  FaultLibraryEntry e;
  e.name = std::move(name);
  e.target = target;
  e.guided = ctx;
  e.reps = reps;
  e.stpa_action = std::move(action);
  e.stpa_provided = provided;
  return e;
}

std::vector<FaultLibraryEntry> default_fault_library() {
  const GuidedContext closing_near{HwtRel::LE, 2.5, RsRel::GT0};
  const GuidedContext closing_wide{HwtRel::LE, 3.5, RsRel::GT0};
  const GuidedContext opening_far{HwtRel::GT, 2.5, RsRel::LE0};
  const GuidedContext imminent{HwtRel::LE, 1.0, RsRel::GT0};

  std::vector<FaultLibraryEntry> lib;
  lib.push_back(entry("radar_chaff", FaultTarget::RadarChaff, closing_near, 3, "accelerate", true));
  lib.push_back(entry("radar_invisible", FaultTarget::RadarInvisible, closing_near, 3, "decelerate", false));
  lib.push_back(entry("radar_ghost", FaultTarget::RadarGhost, opening_far, 3, "decelerate", true));
  lib.push_back(entry("radar_jam", FaultTarget::RadarJam, closing_near, 3, "decelerate", false));
  lib.push_back(entry("car_speed", FaultTarget::CarSpeed, imminent, 3, "accelerate", true));
  lib.push_back(entry("car_steer", FaultTarget::CarSteer, closing_near, 3, "", true));
  lib.push_back(entry("vision_path_model", FaultTarget::VisionPathModel, closing_wide, 3, "", true));
  lib.push_back(entry("vision_camera_off", FaultTarget::VisionCameraUnavailable, closing_near, 3, "decelerate", false));
  lib.push_back(entry("vision_d_rel", FaultTarget::VisionDRel, closing_near, 3, "accelerate", true));
  lib.push_back(entry("radar_vision_d_rel", FaultTarget::RadarAndVisionDRel, closing_near, 3, "accelerate", true));

  auto image_entry = [&](std::string name, EffectKind kind) {
    FaultLibraryEntry e = entry(std::move(name), FaultTarget::VisionImageEffect,
                                closing_wide, 2, "", true);
    e.params.effect.effect = kind;
    return e;
  };
  lib.push_back(image_entry("img_rain", EffectKind::Rain));
  lib.push_back(image_entry("img_fog", EffectKind::Fog));
  lib.push_back(image_entry("img_snow", EffectKind::Snow));
  lib.push_back(image_entry("img_occlusion", EffectKind::Occlusion));
  lib.push_back(image_entry("img_contrast", EffectKind::Contrast));
  lib.push_back(image_entry("img_brightness", EffectKind::Brightness));
  lib.push_back(image_entry("img_blur", EffectKind::Blur));
  return lib;
}

void check_profile(const LeadProfile& p) {
  double prev = -1.0;
  for (const auto& s : p.segments) {
    if (s.start_t <= prev)
      throw std::runtime_error("lead profile segments must be strictly time-ordered");
    if (s.accel <= 0.0) throw std::runtime_error("segment accel must be positive");
    if (s.target_speed < 0.0) throw std::runtime_error("segment target must be >= 0");
    prev = s.start_t;
  }
}

// ---- JSON helpers -------------------------------------------------------

template <typename T>
void opt(const ordered_json& j, const char* key, T& out) {
  if (j.contains(key)) j.at(key).get_to(out);
}

GuidedContext guided_from_json(const ordered_json& j) {
  GuidedContext g;
  std::string hwt = "le", rs = "gt0";
  opt(j, "hwt", hwt);
  opt(j, "rs", rs);
  opt(j, "bound", g.hwt_bound);
  if (hwt == "le") g.hwt_rel = HwtRel::LE;
  else if (hwt == "gt") g.hwt_rel = HwtRel::GT;
  else throw std::runtime_error("guided.hwt must be le|gt");
  if (rs == "gt0") g.rs_rel = RsRel::GT0;
  else if (rs == "le0") g.rs_rel = RsRel::LE0;
  else throw std::runtime_error("guided.rs must be gt0|le0");
  return g;
}

ordered_json guided_to_json(const GuidedContext& g) {
  return {{"hwt", g.hwt_rel == HwtRel::LE ? "le" : "gt"},
          {"bound", g.hwt_bound},
          {"rs", g.rs_rel == RsRel::GT0 ? "gt0" : "le0"}};
}

EffectParams effect_from_json(const ordered_json& j, EffectParams base) {
  if (j.contains("effect")) {
    std::string name;
    j.at("effect").get_to(name);
    base.effect = effect_from_string(name.c_str());
  }
  opt(j, "thickness", base.thickness);
  opt(j, "blob_count", base.blob_count);
  opt(j, "rain_angle_deg", base.rain_angle_deg);
  opt(j, "rain_streak_len", base.rain_streak_len);
  opt(j, "snow_block_rate", base.snow_block_rate);
  if (j.contains("kernel")) {
    std::string k;
    j.at("kernel").get_to(k);
    base.blur_kind = kernel_from_string(k);
  }
  opt(j, "kernel_size", base.blur_size);
  return base;
}

ordered_json effect_to_json(const EffectParams& p) {
  ordered_json j{{"effect", to_string(p.effect)}};
  switch (p.effect) {
    case EffectKind::Rain:
      j["thickness"] = p.thickness;
      j["rain_angle_deg"] = p.rain_angle_deg;
      j["rain_streak_len"] = p.rain_streak_len;
      break;
    case EffectKind::Fog:
      j["thickness"] = p.thickness;
      break;
    case EffectKind::Snow:
      j["thickness"] = p.thickness;
      j["snow_block_rate"] = p.snow_block_rate;
      break;
    case EffectKind::Occlusion:
      j["blob_count"] = p.blob_count;
      break;
    case EffectKind::Blur:
      j["kernel"] = to_string_kernel(p.blur_kind);
      if (p.blur_kind != BlurKind::Auto) j["kernel_size"] = p.blur_size;
      break;
    default:
      break;
  }
  return j;
}

FaultParams fault_params_from_json(const ordered_json& j, FaultParams base) {
  opt(j, "chaff_delta_d", base.chaff_delta_d);
  opt(j, "chaff_delta_v", base.chaff_delta_v);
  opt(j, "ghost_d", base.ghost_d);
  opt(j, "ghost_v", base.ghost_v);
  opt(j, "speed_delta", base.speed_delta);
  opt(j, "steer_delta_deg", base.steer_delta_deg);
  opt(j, "path_delta", base.path_delta);
  opt(j, "drel_delta", base.drel_delta);
  if (j.contains("effect_params"))
    base.effect = effect_from_json(j.at("effect_params"), base.effect);
  return base;
}

ordered_json fault_params_to_json(FaultTarget t, const FaultParams& p) {
  ordered_json j = ordered_json::object();
  switch (t) {
    case FaultTarget::RadarChaff:
      j["chaff_delta_d"] = p.chaff_delta_d;
      j["chaff_delta_v"] = p.chaff_delta_v;
      break;
    case FaultTarget::RadarGhost:
      j["ghost_d"] = p.ghost_d;
      j["ghost_v"] = p.ghost_v;
      break;
    case FaultTarget::CarSpeed:
      j["speed_delta"] = p.speed_delta;
      break;
    case FaultTarget::CarSteer:
      j["steer_delta_deg"] = p.steer_delta_deg;
      break;
    case FaultTarget::VisionPathModel:
      j["path_delta"] = p.path_delta;
      break;
    case FaultTarget::VisionDRel:
    case FaultTarget::RadarAndVisionDRel:
      j["drel_delta"] = p.drel_delta;
      break;
    case FaultTarget::VisionImageEffect:
      j["effect_params"] = effect_to_json(p.effect);
      break;
    default:
      break;
  }
  return j;
}

LeadProfile profile_from_json(ScenarioId id, const ordered_json& j) {
  LeadProfile p;
  p.scenario_id = id;
  double initial_mph = 40.0;
  opt(j, "initial_mph", initial_mph);
  p.initial_speed = mph_to_mps(initial_mph);
  if (j.contains("segments")) {
    for (const auto& s : j.at("segments")) {
      SpeedSegment seg;
      seg.start_t = s.at("t").get<double>();
      seg.target_speed = mph_to_mps(s.at("target_mph").get<double>());
      seg.accel = s.at("accel").get<double>();
      p.segments.push_back(seg);
    }
  }
  return p;
}

ordered_json profile_to_json(const LeadProfile& p) {
  ordered_json j{{"initial_mph", mps_to_mph(p.initial_speed)}};
  ordered_json segs = ordered_json::array();
  for (const auto& s : p.segments)
    segs.push_back({{"t", s.start_t}, {"target_mph", mps_to_mph(s.target_speed)}, {"accel", s.accel}});
  j["segments"] = segs;
  return j;
}

}  // namespace

void check_config(const SimConfig& c) {
  if (c.sim.dt <= 0.0 || c.sim.duration <= 0.0)
    throw std::runtime_error("sim.dt and sim.duration must be positive");
  if (c.sim.init_gap <= 0.0) throw std::runtime_error("sim.init_gap must be positive");
  if (c.plant.a_min >= c.plant.a_max) throw std::runtime_error("plant.a_min must be < a_max");
  if (c.sensors.vision_hz <= 0.0) throw std::runtime_error("sensors.vision_hz must be positive");
  if (c.sensors.mode != "auto" && c.sensors.mode != "analytic" && c.sensors.mode != "pipeline")
    throw std::runtime_error("sensors.mode must be auto|analytic|pipeline");
  if (c.vision.width <= 2 || c.vision.height <= 2)
    throw std::runtime_error("vision raster too small");
  std::map<std::string, int> names;
  for (const auto& e : c.faults) {
    if (e.name.empty()) throw std::runtime_error("fault entry needs a name");
    if (++names[e.name] > 1) throw std::runtime_error("duplicate fault entry name: " + e.name);
    if (e.reps < 0) throw std::runtime_error("fault reps must be >= 0");
  }
  for (const auto& [key, p] : c.scenarios) {
    scenario_from_string(key);
    check_profile(p);
  }
}

SimConfig default_config() {
  SimConfig c;
  c.scenarios["S1"] = make_profile(ScenarioId::S1, 40.0, {});
  c.scenarios["S2"] = make_profile(ScenarioId::S2, 25.0, {});
  c.scenarios["S3"] = make_profile(ScenarioId::S3, 40.0, {{3.0, 55.0, 1.5}, {15.0, 30.0, 2.0}});
  c.scenarios["S4"] = make_profile(ScenarioId::S4, 40.0, {{3.0, 22.0, 2.0}, {15.0, 50.0, 1.5}});
  c.scenarios["S5"] = make_profile(ScenarioId::S5, 40.0, {{4.0, 0.0, 2.2}});
  c.faults = default_fault_library();
  check_config(c);
  return c;
}

SimConfig config_from_json_text(const std::string& text) {
  SimConfig c = default_config();
  ordered_json j = ordered_json::parse(text);

  if (j.contains("sim")) {
    const auto& s = j.at("sim");
    opt(s, "dt", c.sim.dt);
    opt(s, "duration", c.sim.duration);
    opt(s, "init_gap", c.sim.init_gap);
    opt(s, "cruise_mph", c.sim.cruise_mph);
    opt(s, "lane_half_width", c.sim.lane_half_width);
    c.hazard.lane_half_width = c.sim.lane_half_width;
  }
  if (j.contains("plant")) {
    const auto& s = j.at("plant");
    opt(s, "a_min", c.plant.a_min);
    opt(s, "a_max", c.plant.a_max);
    opt(s, "steer_rate_gain", c.plant.steer_rate_gain);
    opt(s, "steer_limit_deg", c.plant.steer_limit_deg);
    opt(s, "wheelbase", c.plant.wheelbase);
  }
  if (j.contains("controller")) {
    const auto& s = j.at("controller");
    opt(s, "k_v", c.controller.k_v);
    opt(s, "k_d", c.controller.k_d);
    opt(s, "k_s", c.controller.k_s);
    opt(s, "safe_hwt", c.controller.safe_hwt);
    opt(s, "k_p", c.controller.k_p);
    opt(s, "k_h", c.controller.k_h);
    opt(s, "tau_sat", c.controller.tau_sat);
    opt(s, "a_fcw", c.controller.a_fcw);
    opt(s, "hold_speed", c.controller.hold_speed);
    opt(s, "hold_gap", c.controller.hold_gap);
    opt(s, "hold_release", c.controller.hold_release);
  }
  if (j.contains("sensors")) {
    const auto& s = j.at("sensors");
    opt(s, "radar_sigma_d", c.sensors.radar_sigma_d);
    opt(s, "radar_sigma_v", c.sensors.radar_sigma_v);
    opt(s, "vision_sigma_d", c.sensors.vision_sigma_d);
    opt(s, "vision_hz", c.sensors.vision_hz);
    opt(s, "preview", c.sensors.preview);
    opt(s, "mode", c.sensors.mode);
  }
  if (j.contains("hazard")) {
    const auto& s = j.at("hazard");
    opt(s, "d_min", c.hazard.d_min);
    opt(s, "v_stop", c.hazard.v_stop);
    opt(s, "d_far", c.hazard.d_far);
    opt(s, "warmup", c.hazard.warmup);
    opt(s, "vehicle_half_width", c.hazard.vehicle_half_width);
  }
  if (j.contains("vision")) {
    const auto& s = j.at("vision");
    opt(s, "width", c.vision.width);
    opt(s, "height", c.vision.height);
    opt(s, "px_per_m", c.vision.px_per_m);
    opt(s, "road_intensity", c.vision.road_intensity);
    opt(s, "marker_intensity", c.vision.marker_intensity);
    opt(s, "marker_width_px", c.vision.marker_width_px);
    opt(s, "sobel_threshold", c.vision.sobel_threshold);
    opt(s, "dbscan_eps", c.vision.dbscan_eps);
    opt(s, "dbscan_min_pts", c.vision.dbscan_min_pts);
    opt(s, "max_edge_points", c.vision.max_edge_points);
    opt(s, "dump_dir", c.vision.dump_dir);
    opt(s, "dump_max", c.vision.dump_max);
  }
  if (j.contains("scenarios")) {
    for (const auto& [key, val] : j.at("scenarios").items())
      c.scenarios[key] = profile_from_json(scenario_from_string(key), val);
  }
  if (j.contains("campaign")) {
    const auto& s = j.at("campaign");
    opt(s, "seed", c.campaign.seed);
    if (s.contains("scenarios")) {
      c.campaign.scenarios.clear();
      for (const auto& v : s.at("scenarios"))
        c.campaign.scenarios.push_back(scenario_from_string(v.get<std::string>()));
    }
  }
  if (j.contains("faults")) {
    c.faults.clear();
    for (const auto& f : j.at("faults")) {
      FaultLibraryEntry e;
      f.at("name").get_to(e.name);
      std::string target;
      f.at("target").get_to(target);
      e.target = fault_target_from_string(target);
      if (f.contains("guided")) e.guided = guided_from_json(f.at("guided"));
      opt(f, "reps", e.reps);
      if (f.contains("params")) e.params = fault_params_from_json(f.at("params"), e.params);
      if (f.contains("stpa")) {
        opt(f.at("stpa"), "action", e.stpa_action);
        opt(f.at("stpa"), "provided", e.stpa_provided);
      }
      c.faults.push_back(std::move(e));
    }
  }
  check_config(c);
  return c;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json_text(ss.str());
}

std::string config_to_json_text(const SimConfig& c) {
  ordered_json j;
  j["sim"] = {{"dt", c.sim.dt},
              {"duration", c.sim.duration},
              {"init_gap", c.sim.init_gap},
              {"cruise_mph", c.sim.cruise_mph},
              {"lane_half_width", c.sim.lane_half_width}};
  j["plant"] = {{"a_min", c.plant.a_min},
                {"a_max", c.plant.a_max},
                {"steer_rate_gain", c.plant.steer_rate_gain},
                {"steer_limit_deg", c.plant.steer_limit_deg},
                {"wheelbase", c.plant.wheelbase}};
  j["controller"] = {{"k_v", c.controller.k_v},       {"k_d", c.controller.k_d},
                     {"k_s", c.controller.k_s},       {"safe_hwt", c.controller.safe_hwt},
                     {"k_p", c.controller.k_p},       {"k_h", c.controller.k_h},
                     {"tau_sat", c.controller.tau_sat}, {"a_fcw", c.controller.a_fcw},
                     {"hold_speed", c.controller.hold_speed},
                     {"hold_gap", c.controller.hold_gap},
                     {"hold_release", c.controller.hold_release}};
  j["sensors"] = {{"radar_sigma_d", c.sensors.radar_sigma_d},
                  {"radar_sigma_v", c.sensors.radar_sigma_v},
                  {"vision_sigma_d", c.sensors.vision_sigma_d},
                  {"vision_hz", c.sensors.vision_hz},
                  {"preview", c.sensors.preview},
                  {"mode", c.sensors.mode}};
  j["hazard"] = {{"d_min", c.hazard.d_min},
                 {"v_stop", c.hazard.v_stop},
                 {"d_far", c.hazard.d_far},
                 {"warmup", c.hazard.warmup},
                 {"vehicle_half_width", c.hazard.vehicle_half_width}};
  j["vision"] = {{"width", c.vision.width},
                 {"height", c.vision.height},
                 {"px_per_m", c.vision.px_per_m},
                 {"road_intensity", c.vision.road_intensity},
                 {"marker_intensity", c.vision.marker_intensity},
                 {"marker_width_px", c.vision.marker_width_px},
                 {"sobel_threshold", c.vision.sobel_threshold},
                 {"dbscan_eps", c.vision.dbscan_eps},
                 {"dbscan_min_pts", c.vision.dbscan_min_pts},
                 {"max_edge_points", c.vision.max_edge_points},
                 {"dump_dir", c.vision.dump_dir},
                 {"dump_max", c.vision.dump_max}};
  ordered_json scen = ordered_json::object();
  for (const auto& [key, p] : c.scenarios) scen[key] = profile_to_json(p);
  j["scenarios"] = scen;
  ordered_json cam;
  cam["seed"] = c.campaign.seed;
  ordered_json cs = ordered_json::array();
  for (auto s : c.campaign.scenarios) cs.push_back(to_string(s));
  cam["scenarios"] = cs;
  j["campaign"] = cam;
  ordered_json faults = ordered_json::array();
  for (const auto& e : c.faults) {
    ordered_json f{{"name", e.name}, {"target", to_string(e.target)}, {"reps", e.reps}};
    f["guided"] = guided_to_json(e.guided);
    f["params"] = fault_params_to_json(e.target, e.params);
    if (!e.stpa_action.empty())
      f["stpa"] = {{"action", e.stpa_action}, {"provided", e.stpa_provided}};
    faults.push_back(f);
  }
  j["faults"] = faults;
  return j.dump(2) + "\n";
}

}  // namespace fisim
