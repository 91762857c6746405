#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fisim/config.hpp"
#include "fisim/controller.hpp"
#include "fisim/fault.hpp"
#include "fisim/hazard.hpp"
#include "fisim/sensors.hpp"
#include "fisim/world.hpp"

namespace fisim {

struct Experiment {
  int id = 0;
  ScenarioId scenario = ScenarioId::S1;
  bool has_fault = true;
  FaultSpec fault;
  uint64_t seed = 0;  // fixed at generation time
};

// Per-run outcome record; the unit the campaign aggregates and serializes.
struct RunSummary {
  int id = 0;
  ScenarioId scenario = ScenarioId::S1;
  std::string fault_name;  // "none" for fault-free runs
  FaultTarget target = FaultTarget::RadarChaff;
  bool has_fault = true;
  TriggerMode mode = TriggerMode::Guided;
  uint64_t seed = 0;
  bool valid = true;
  std::string error;  // diagnostics when valid == false
  std::optional<double> t_activate;
  std::optional<double> t_manifest;  // absolute time of first output deviation
  std::vector<HazardEvent> hazards;  // first occurrence per kind
  std::optional<double> t_collision;
  std::vector<Alert> alerts;  // first occurrence per kind, in firing order
  bool disengaged = false;
  double t_end = 0.0;

  bool activated() const { return t_activate.has_value(); }
  bool manifested() const { return t_manifest.has_value(); }
  bool hazardous() const { return !hazards.empty(); }
  std::optional<double> first_hazard_t() const {
    if (hazards.empty()) return std::nullopt;
    double t = hazards.front().t;
    for (const auto& h : hazards) t = std::min(t, h.t);
    return t;
  }
  std::optional<double> first_alert_t() const {
    if (alerts.empty()) return std::nullopt;
    return alerts.front().t;
  }
  // Reaction time exists only when the first alert strictly precedes the
  // first hazard.
  std::optional<double> reaction_time() const {
    auto th = first_hazard_t();
    auto ta = first_alert_t();
    if (!th || !ta || !(*ta < *th)) return std::nullopt;
    return *th - *ta;
  }
};

struct RunTick {
  double t;
  WorldState world;
  SensorFrame frame;
  ControlOutput out;
  uint8_t alert_mask;
  bool fault_active;
};

struct RunLog {
  RunSummary summary;
  std::vector<RunTick> ticks;  // filled only when requested
};

// Per-tick (accel_cmd, steer_torque) trace of a fault-free run; the ground
// truth that manifestation detection compares against.
using TwinTrace = std::vector<std::pair<double, double>>;

// Fault-free traces are identical for every experiment of a scenario when
// sensor noise is zero, so the campaign shares one trace per (scenario,
// sensing mode). Build is not thread-safe; warm the cache before fanning out.
class TwinCache {
 public:
  const TwinTrace* find(ScenarioId id, VisionMode mode) const;
  void put(ScenarioId id, VisionMode mode, TwinTrace trace);
  static bool cacheable(const SimConfig& cfg);

 private:
  std::map<std::pair<int, int>, TwinTrace> traces_;
};

VisionMode resolve_vision_mode(const SimConfig& cfg, const Experiment& exp);

// Fault-free closed-loop run; returns the output trace (and optionally the
// summary of the clean run, used by fault-free acceptance checks).
TwinTrace run_twin(const SimConfig& cfg, ScenarioId scenario, VisionMode mode,
                   uint64_t noise_seed, RunSummary* summary_out = nullptr);

// Executes the faulted run against its twin. When `twin` is null a private
// twin is computed first (always the case when noise sigma > 0).
RunLog run_experiment(const Experiment& exp, const SimConfig& cfg,
                      const TwinTrace* twin = nullptr, bool keep_ticks = false);

}  // namespace fisim
