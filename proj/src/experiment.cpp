#include "fisim/experiment.hpp"

#include <cmath>
#include <stdexcept>

#include "fisim/plant.hpp"

namespace fisim {

namespace {

constexpr double kManifestEps = 1e-6;  // output-deviation threshold vs the twin

bool finite_state(const WorldState& w) {
  return std::isfinite(w.host_pos) && std::isfinite(w.host_speed) &&
         std::isfinite(w.lat_offset) && std::isfinite(w.heading) &&
         std::isfinite(w.steer_angle) && std::isfinite(w.lead_pos) &&
         std::isfinite(w.lead_speed);
}

// One closed-loop run. fault == nullptr runs the clean loop. twin enables
// manifestation detection; trace_out records the output trace.
void run_loop(const SimConfig& cfg, ScenarioId scenario, VisionMode mode, uint64_t seed,
              const FaultSpec* fault, const TwinTrace* twin, TwinTrace* trace_out,
              RunSummary& summary, std::vector<RunTick>* ticks,
              const std::string& dump_dir) {
  const double dt = cfg.sim.dt;
  const int n_ticks = static_cast<int>(std::lround(cfg.sim.duration / dt));
  const LeadProfile& profile = cfg.profile(scenario);

  WorldState world = init_run(scenario, cfg);
  SensorRig rig(cfg, mode, seed);
  rig.set_dump_dir(dump_dir);
  Controller ctl(cfg.controller, cfg.plant);
  HazardMonitor monitor(cfg.hazard);
  std::optional<FaultEngine> engine;
  if (fault != nullptr) engine.emplace(*fault, cfg, rig.ticks_per_vision());
  const uint64_t effect_base = mix_seed(seed, 4);

  if (trace_out != nullptr) {
    trace_out->clear();
    trace_out->reserve(static_cast<size_t>(n_ticks));
  }

  bool collided = false;
  for (int k = 0; k < n_ticks; ++k) {
    const double t = k * dt;
    world.t = t;
    if (!finite_state(world)) {
      summary.valid = false;
      summary.error = "non-finite state";
      summary.t_end = t;
      return;
    }
    monitor.update(world);

    const ContextObservables obs = observe_context(world);
    const bool active = engine ? engine->update(obs, t) : false;

    // Once the controller has latched disengaged and the deviation is
    // recorded, outputs stay (0,0) and no new alert kind can fire under a
    // single-sensor fault, so sensing is skipped unless a per-tick log or
    // frame dump needs real frames.
    const bool skip_sensing = engine && ctl.ever_disengaged() && summary.t_manifest &&
                              ticks == nullptr && dump_dir.empty();
    SensorFrame frame;
    uint8_t mask = 0;
    ControlOutput out{0.0, 0.0, false};
    if (!skip_sensing) {
      const EffectParams* effect =
          (engine && active && engine->is_image_effect()) ? engine->effect() : nullptr;
      frame = rig.sense(world, k, effect,
                        mix_seed(effect_base, static_cast<uint64_t>(k / rig.ticks_per_vision())));
      if (engine) frame = engine->apply(frame, active, k);
      out = ctl.step(frame, t, &mask);
    }
    if (trace_out != nullptr) trace_out->emplace_back(out.accel_cmd, out.steer_torque);

    if (twin != nullptr && engine && engine->activation_time() && !summary.t_manifest &&
        k < static_cast<int>(twin->size())) {
      const auto& [ta, tu] = (*twin)[static_cast<size_t>(k)];
      if (std::abs(out.accel_cmd - ta) > kManifestEps ||
          std::abs(out.steer_torque - tu) > kManifestEps)
        summary.t_manifest = t;
    }
    if (ticks != nullptr) ticks->push_back({t, world, frame, out, mask, active});

    try {
      world = step_host(world, out.accel_cmd, out.steer_torque, cfg.plant, dt);
    } catch (const std::exception& e) {
      summary.valid = false;
      summary.error = e.what();
      summary.t_end = t;
      return;
    }
    const LeadStep ls = step_lead(profile, world.lead_speed, t, dt);
    world.lead_speed = ls.speed;
    world.lead_pos += ls.pos_delta;
    world.t = (k + 1) * dt;

    if (world.lead_present && world.d_rel() <= 0.0) {
      world.lead_pos = world.host_pos;  // contact; post-collision physics is meaningless
      summary.t_collision = world.t;
      monitor.update(world);
      collided = true;
      break;
    }
  }
  if (!collided) monitor.update(world);
  summary.t_end = world.t;
  if (engine) summary.t_activate = engine->activation_time();
  summary.hazards = monitor.events();
  summary.alerts = ctl.alerts();
  summary.disengaged = ctl.ever_disengaged();
}

}  // namespace

const TwinTrace* TwinCache::find(ScenarioId id, VisionMode mode) const {
  auto it = traces_.find({static_cast<int>(id), static_cast<int>(mode)});
  return it == traces_.end() ? nullptr : &it->second;
}

void TwinCache::put(ScenarioId id, VisionMode mode, TwinTrace trace) {
  traces_[{static_cast<int>(id), static_cast<int>(mode)}] = std::move(trace);
}

bool TwinCache::cacheable(const SimConfig& cfg) {
  return cfg.sensors.radar_sigma_d == 0.0 && cfg.sensors.radar_sigma_v == 0.0 &&
         cfg.sensors.vision_sigma_d == 0.0;
}

VisionMode resolve_vision_mode(const SimConfig& cfg, const Experiment& exp) {
  if (cfg.sensors.mode == "analytic") return VisionMode::Analytic;
  if (cfg.sensors.mode == "pipeline") return VisionMode::Pipeline;
  // auto: raster path only where the fault needs an image to corrupt
  const bool image = exp.has_fault && exp.fault.target == FaultTarget::VisionImageEffect;
  return image ? VisionMode::Pipeline : VisionMode::Analytic;
}

TwinTrace run_twin(const SimConfig& cfg, ScenarioId scenario, VisionMode mode,
                   uint64_t noise_seed, RunSummary* summary_out) {
  TwinTrace trace;
  RunSummary summary;
  summary.scenario = scenario;
  summary.fault_name = "none";
  summary.has_fault = false;
  run_loop(cfg, scenario, mode, noise_seed, nullptr, nullptr, &trace, summary, nullptr, "");
  if (summary_out != nullptr) *summary_out = summary;
  return trace;
}

RunLog run_experiment(const Experiment& exp, const SimConfig& cfg, const TwinTrace* twin,
                      bool keep_ticks) {
  const VisionMode mode = resolve_vision_mode(cfg, exp);

  RunLog log;
  RunSummary& s = log.summary;
  s.id = exp.id;
  s.scenario = exp.scenario;
  s.has_fault = exp.has_fault;
  s.fault_name = exp.has_fault ? exp.fault.name : "none";
  if (exp.has_fault) s.target = exp.fault.target;
  s.mode = exp.fault.trigger.mode;
  s.seed = exp.seed;

  TwinTrace private_twin;
  if (exp.has_fault && twin == nullptr) {
    private_twin = run_twin(cfg, exp.scenario, mode, exp.seed);
    twin = &private_twin;
  }

  std::string dump_dir;
  if (!cfg.vision.dump_dir.empty() && mode == VisionMode::Pipeline)
    dump_dir = cfg.vision.dump_dir + "/exp_" + std::to_string(exp.id);

  run_loop(cfg, exp.scenario, mode, exp.seed, exp.has_fault ? &exp.fault : nullptr,
           exp.has_fault ? twin : nullptr, nullptr, s,
           keep_ticks ? &log.ticks : nullptr, dump_dir);
  return log;
}

}  // namespace fisim
