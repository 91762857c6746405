#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fisim/config.hpp"
#include "fisim/experiment.hpp"

namespace fisim {

// Filters narrow a campaign to matching scenarios / fault entries. Empty = all.
struct CampaignFilter {
  std::vector<ScenarioId> scenarios;
  std::vector<std::string> faults;  // matches entry name or target name
};

// Expands the fault library into the experiment list for one trigger mode.
// Random start times (and auto blur kernels) are drawn here, in list order,
// from a generator stream derived from the campaign seed, so the list is a
// pure function of (config, seed, mode, filter).
std::vector<Experiment> generate_campaign(const SimConfig& cfg, TriggerMode mode,
                                          std::optional<uint64_t> seed_override = {},
                                          const CampaignFilter& filter = {});

using ProgressFn = std::function<void(size_t done, size_t total)>;

// Runs every experiment and returns summaries in experiment order regardless
// of worker count or scheduling. cache, when non-null, is warmed serially
// with the clean twin trace per (scenario, vision mode) before workers start.
std::vector<RunSummary> run_campaign(const SimConfig& cfg,
                                     const std::vector<Experiment>& experiments,
                                     int workers, TwinCache* cache,
                                     const ProgressFn& progress = nullptr);

struct Counts {
  long injected = 0;
  long invalid = 0;
  long activated = 0;
  long manifested = 0;
  long hazard_runs = 0;   // runs with >= 1 hazard
  long sdc = 0;           // manifested but hazard-free
  long h1 = 0, h2 = 0, h3 = 0;
  long collisions = 0;
  long alert_runs = 0;
  long hazards_no_alert = 0;   // hazardous runs with no strictly earlier alert
  long alerts_no_hazard = 0;
  std::vector<double> reaction_times;          // first hazard minus first alert
  std::vector<double> manifestation_latencies; // first deviation minus activation

  void add(const RunSummary& s);
  void merge(const Counts& o);
  long valid_runs() const { return injected - invalid; }
  // 0/0 rates are reported as 0.
  double activation_rate() const;    // activated / valid
  double manifestation_rate() const; // manifested / activated
  double hazard_coverage() const;    // hazard_runs / activated
  double sdc_rate() const;           // sdc / activated
  double alert_rate() const;         // alert_runs / valid
  double mean_reaction() const;
  double mean_latency() const;
};

struct CampaignMetrics {
  Counts total;
  std::map<std::string, Counts> by_scenario;
  std::map<std::string, Counts> by_fault;
};

// Folds summaries into counts and checks the count lattice
// (activated >= manifested >= hazard_runs, sdc + hazard_runs == manifested);
// throws on violation since that indicates a runner bug.
CampaignMetrics compute_metrics(const std::vector<RunSummary>& runs);

struct ModeRates {
  long injected = 0;
  long activated = 0;
  long hazard_runs = 0;
  double activation = 0.0;
  double manifestation = 0.0;
  double coverage = 0.0;
  double alert_rate = 0.0;
  double mean_reaction = 0.0;
  long reaction_count = 0;
  long hazards_no_alert = 0;
};

struct ComparisonReport {
  ModeRates guided;
  ModeRates random;
  bool guided_coverage_ge_random = false;
};

ComparisonReport compare_guided_random(const CampaignMetrics& guided,
                                       const CampaignMetrics& random);

ModeRates summarize_rates(const Counts& c);

}  // namespace fisim
