#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fisim/config.hpp"
#include "fisim/rng.hpp"
#include "fisim/sensors.hpp"
#include "fisim/world.hpp"

namespace fisim {

enum class TriggerMode { Guided, Random };

const char* to_string(TriggerMode m);
TriggerMode trigger_mode_from_string(const std::string& s);

struct TriggerSpec {
  TriggerMode mode = TriggerMode::Guided;
  GuidedContext guided;   // used when mode == Guided
  double t_start = 0.0;   // used when mode == Random; fixed at generation time
};

// Context observables on ground truth. Headway time is undefined below the
// speed floor or without a lead; an undefined context never triggers.
struct ContextObservables {
  bool defined = false;
  double hwt = 0.0;  // s
  double rs = 0.0;   // m/s, host minus lead (positive = closing)
};

ContextObservables observe_context(const WorldState& w, double eps_v = 0.5);

// Guided: the context cell holds this tick (re-evaluated every tick, no
// latch). Random: t >= t_start (monotone in t, so latched by construction).
bool eval_trigger(const TriggerSpec& spec, const ContextObservables& obs, double t);

enum class ControlAction { Accelerate, Decelerate };
enum class HazardLabel { None, H1, H2 };

// Hazardous-control-action table over (HWT bucket, RS bucket) cells:
//   Accelerate provided      -> H1 when RS > 0 (either HWT bucket)
//   Accelerate not provided  -> H2 when HWT > bound and RS <= 0
//   Decelerate provided      -> H2 when HWT > bound and RS <= 0
//   Decelerate not provided  -> H1 when RS > 0 (either HWT bucket)
//   all other cells          -> None
// Undefined observables classify as None.
HazardLabel classify_context(ControlAction action, bool provided,
                             const ContextObservables& obs, double safe_hwt);

struct FaultSpec {
  std::string name;
  FaultTarget target = FaultTarget::RadarChaff;
  FaultParams params;
  TriggerSpec trigger;
  uint64_t seed = 0;
};

// Per-run fault state: trigger bookkeeping, per-run draws, and frame
// corruption. Vision-channel draws are refreshed per vision tick; radar and
// car draws per control tick.
class FaultEngine {
 public:
  FaultEngine(const FaultSpec& spec, const SimConfig& cfg, int ticks_per_vision);

  // Evaluates the trigger for this tick and records the first activation.
  bool update(const ContextObservables& obs, double t);

  // Corrupts the frame when active; bit-identical pass-through otherwise.
  SensorFrame apply(const SensorFrame& frame, bool active, int tick);

  // Image-effect faults perturb the rendered frame inside the sensor rig
  // instead of the reading.
  bool is_image_effect() const { return spec_.target == FaultTarget::VisionImageEffect; }
  const EffectParams* effect() const { return is_image_effect() ? &spec_.params.effect : nullptr; }

  std::optional<double> activation_time() const { return t_activate_; }
  const FaultSpec& spec() const { return spec_; }

 private:
  void refresh_vision_draws(int tick);

  FaultSpec spec_;
  double cruise_set_;
  Rng rng_;
  int ticks_per_vision_;
  std::optional<double> t_activate_;
  double steer_offset_ = 0.0;  // CarSteer: drawn once per run
  // Cached per-vision-tick draws (path model, vision distance).
  int vision_draw_tick_ = -1;
  double path_left_ = 0.0;
  double path_right_ = 0.0;
  double vision_d_off_ = 0.0;
};

}  // namespace fisim
