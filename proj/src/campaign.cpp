#include "fisim/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

#include "fisim/vision/effects.hpp"

namespace fisim {

namespace {

bool scenario_selected(const CampaignFilter& f, ScenarioId id) {
  if (f.scenarios.empty()) return true;
  return std::find(f.scenarios.begin(), f.scenarios.end(), id) != f.scenarios.end();
}

bool fault_selected(const CampaignFilter& f, const FaultLibraryEntry& e) {
  if (f.faults.empty()) return true;
  const std::string target = to_string(e.target);
  for (const auto& pat : f.faults)
    if (pat == e.name || pat == target) return true;
  return false;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

std::vector<Experiment> generate_campaign(const SimConfig& cfg, TriggerMode mode,
                                          std::optional<uint64_t> seed_override,
                                          const CampaignFilter& filter) {
  const uint64_t campaign_seed = seed_override.value_or(cfg.campaign.seed);
  Rng gen(mix_seed(campaign_seed, 0x67656eu));  // generation stream

  std::vector<Experiment> out;
  int id = 0;
  for (const auto& entry : cfg.faults) {
    if (!fault_selected(filter, entry)) continue;
    for (ScenarioId sc : cfg.campaign.scenarios) {
      if (!scenario_selected(filter, sc)) continue;
      for (int rep = 0; rep < entry.reps; ++rep) {
        Experiment e;
        e.id = id;
        e.scenario = sc;
        e.has_fault = true;
        e.seed = mix_seed(campaign_seed, static_cast<uint64_t>(id));
        e.fault.name = entry.name;
        e.fault.target = entry.target;
        e.fault.params = entry.params;
        e.fault.seed = e.seed;
        e.fault.trigger.mode = mode;
        e.fault.trigger.guided = entry.guided;
        e.fault.trigger.t_start =
            mode == TriggerMode::Random ? gen.uniform(0.0, cfg.sim.duration) : 0.0;
        if (entry.target == FaultTarget::VisionImageEffect &&
            e.fault.params.effect.effect == EffectKind::Blur &&
            e.fault.params.effect.blur_kind == BlurKind::Auto)
          e.fault.params.effect = resolve_blur(e.fault.params.effect, gen);
        out.push_back(std::move(e));
        ++id;
      }
    }
  }
  return out;
}

std::vector<RunSummary> run_campaign(const SimConfig& cfg,
                                     const std::vector<Experiment>& experiments,
                                     int workers, TwinCache* cache,
                                     const ProgressFn& progress) {
  if (cache != nullptr && TwinCache::cacheable(cfg)) {
    std::set<std::pair<int, int>> needed;
    for (const auto& exp : experiments) {
      const VisionMode mode = resolve_vision_mode(cfg, exp);
      const auto key = std::make_pair(static_cast<int>(exp.scenario), static_cast<int>(mode));
      if (!needed.insert(key).second) continue;
      if (cache->find(exp.scenario, mode) == nullptr)
        cache->put(exp.scenario, mode, run_twin(cfg, exp.scenario, mode, exp.seed));
    }
  }

  std::vector<RunSummary> results(experiments.size());
  const auto run_one = [&](size_t i) {
    const Experiment& exp = experiments[i];
    const TwinTrace* twin = nullptr;
    if (cache != nullptr && TwinCache::cacheable(cfg))
      twin = cache->find(exp.scenario, resolve_vision_mode(cfg, exp));
    results[i] = run_experiment(exp, cfg, twin).summary;
  };

  if (workers <= 1 || experiments.size() <= 1) {
    for (size_t i = 0; i < experiments.size(); ++i) {
      run_one(i);
      if (progress) progress(i + 1, experiments.size());
    }
    return results;
  }

  std::atomic<size_t> next{0};
  std::atomic<size_t> done{0};
  std::mutex progress_mu;
  const size_t n_workers =
      std::min<size_t>(static_cast<size_t>(workers), experiments.size());
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (size_t w = 0; w < n_workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const size_t i = next.fetch_add(1);
        if (i >= results.size()) return;
        run_one(i);
        const size_t d = done.fetch_add(1) + 1;
        if (progress) {
          std::lock_guard<std::mutex> lock(progress_mu);
          progress(d, results.size());
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  return results;
}

void Counts::add(const RunSummary& s) {
  ++injected;
  if (!s.valid) {
    ++invalid;
    return;
  }
  if (s.activated()) ++activated;
  if (s.manifested()) {
    ++manifested;
    if (s.t_activate)
      manifestation_latencies.push_back(*s.t_manifest - *s.t_activate);
  }
  const bool hazardous = s.hazardous();
  if (hazardous) ++hazard_runs;
  if (s.manifested() && !hazardous) ++sdc;
  for (const auto& h : s.hazards) {
    if (h.kind == HazardKind::H1) ++h1;
    if (h.kind == HazardKind::H2) ++h2;
    if (h.kind == HazardKind::H3) ++h3;
  }
  if (s.t_collision) ++collisions;
  if (!s.alerts.empty()) ++alert_runs;
  if (hazardous) {
    if (auto rt = s.reaction_time())
      reaction_times.push_back(*rt);
    else
      ++hazards_no_alert;
  } else if (!s.alerts.empty()) {
    ++alerts_no_hazard;
  }
}

void Counts::merge(const Counts& o) {
  injected += o.injected;
  invalid += o.invalid;
  activated += o.activated;
  manifested += o.manifested;
  hazard_runs += o.hazard_runs;
  sdc += o.sdc;
  h1 += o.h1;
  h2 += o.h2;
  h3 += o.h3;
  collisions += o.collisions;
  alert_runs += o.alert_runs;
  hazards_no_alert += o.hazards_no_alert;
  alerts_no_hazard += o.alerts_no_hazard;
  reaction_times.insert(reaction_times.end(), o.reaction_times.begin(),
                        o.reaction_times.end());
  manifestation_latencies.insert(manifestation_latencies.end(),
                                 o.manifestation_latencies.begin(),
                                 o.manifestation_latencies.end());
}

double Counts::activation_rate() const {
  return valid_runs() == 0 ? 0.0
                           : static_cast<double>(activated) / static_cast<double>(valid_runs());
}
double Counts::manifestation_rate() const {
  return activated == 0 ? 0.0
                        : static_cast<double>(manifested) / static_cast<double>(activated);
}
double Counts::hazard_coverage() const {
  return activated == 0 ? 0.0
                        : static_cast<double>(hazard_runs) / static_cast<double>(activated);
}
double Counts::sdc_rate() const {
  return activated == 0 ? 0.0 : static_cast<double>(sdc) / static_cast<double>(activated);
}
double Counts::alert_rate() const {
  return valid_runs() == 0 ? 0.0
                           : static_cast<double>(alert_runs) / static_cast<double>(valid_runs());
}
double Counts::mean_reaction() const { return mean_of(reaction_times); }
double Counts::mean_latency() const { return mean_of(manifestation_latencies); }

namespace {

void check_lattice(const Counts& c, const std::string& key) {
  const bool ok = c.activated <= c.valid_runs() && c.manifested <= c.activated &&
                  c.hazard_runs <= c.manifested && c.sdc + c.hazard_runs == c.manifested;
  if (!ok)
    throw std::logic_error("count lattice violated for " + key +
                           ": activated=" + std::to_string(c.activated) +
                           " manifested=" + std::to_string(c.manifested) +
                           " hazard_runs=" + std::to_string(c.hazard_runs) +
                           " sdc=" + std::to_string(c.sdc));
}

}  // namespace

CampaignMetrics compute_metrics(const std::vector<RunSummary>& runs) {
  CampaignMetrics m;
  for (const auto& s : runs) {
    m.total.add(s);
    m.by_scenario[to_string(s.scenario)].add(s);
    m.by_fault[s.fault_name].add(s);
  }
  check_lattice(m.total, "total");
  for (const auto& [key, c] : m.by_scenario) check_lattice(c, key);
  for (const auto& [key, c] : m.by_fault) check_lattice(c, key);
  return m;
}

ModeRates summarize_rates(const Counts& c) {
  ModeRates r;
  r.injected = c.injected;
  r.activated = c.activated;
  r.hazard_runs = c.hazard_runs;
  r.activation = c.activation_rate();
  r.manifestation = c.manifestation_rate();
  r.coverage = c.hazard_coverage();
  r.alert_rate = c.alert_rate();
  r.mean_reaction = c.mean_reaction();
  r.reaction_count = static_cast<long>(c.reaction_times.size());
  r.hazards_no_alert = c.hazards_no_alert;
  return r;
}

ComparisonReport compare_guided_random(const CampaignMetrics& guided,
                                       const CampaignMetrics& random) {
  ComparisonReport rep;
  rep.guided = summarize_rates(guided.total);
  rep.random = summarize_rates(random.total);
  rep.guided_coverage_ge_random = rep.guided.coverage >= rep.random.coverage;
  return rep;
}

}  // namespace fisim
