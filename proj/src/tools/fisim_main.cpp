#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fisim/campaign.hpp"
#include "fisim/config.hpp"
#include "fisim/report.hpp"
#include "fisim/vision/effects.hpp"

namespace {

using fisim::CampaignFilter;
using fisim::Experiment;
using fisim::SimConfig;
using ordered_json = nlohmann::ordered_json;

struct CommonOpts {
  std::string config_path;
  std::string mode = "guided";
  std::optional<uint64_t> seed;
  std::vector<std::string> scenarios;
  std::vector<std::string> faults;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "config file (defaults built in when omitted)");
  cmd->add_option("--mode", o.mode, "trigger mode: guided or random")
      ->check(CLI::IsMember({"guided", "random"}));
  cmd->add_option("--seed", o.seed, "campaign seed override");
  cmd->add_option("--scenario", o.scenarios, "restrict to scenario (repeatable)");
  cmd->add_option("--fault", o.faults, "restrict to fault entry or target name (repeatable)");
}

SimConfig load_or_default(const CommonOpts& o) {
  SimConfig cfg =
      o.config_path.empty() ? fisim::default_config() : fisim::load_config(o.config_path);
  fisim::check_config(cfg);
  return cfg;
}

CampaignFilter make_filter(const CommonOpts& o) {
  CampaignFilter f;
  for (const auto& s : o.scenarios) f.scenarios.push_back(fisim::scenario_from_string(s));
  f.faults = o.faults;
  return f;
}

std::string plan_text(const SimConfig& cfg, fisim::TriggerMode mode, uint64_t seed,
                      const std::vector<Experiment>& exps) {
  ordered_json j;
  j["format"] = "fisim-plan";
  j["version"] = 1;
  j["campaign_seed"] = seed;
  j["mode"] = fisim::to_string(mode);
  ordered_json list = ordered_json::array();
  for (const auto& e : exps) {
    ordered_json je;
    je["id"] = e.id;
    je["scenario"] = fisim::to_string(e.scenario);
    je["fault"] = e.fault.name;
    je["target"] = fisim::to_string(e.fault.target);
    je["seed"] = e.seed;
    if (e.fault.trigger.mode == fisim::TriggerMode::Random)
      je["t_start"] = e.fault.trigger.t_start;
    if (e.fault.target == fisim::FaultTarget::VisionImageEffect &&
        e.fault.params.effect.effect == fisim::EffectKind::Blur) {
      je["kernel"] = fisim::to_string_kernel(e.fault.params.effect.blur_kind);
      je["kernel_size"] = e.fault.params.effect.blur_size;
    }
    list.push_back(std::move(je));
  }
  j["experiments"] = std::move(list);
  (void)cfg;
  return j.dump(2) + "\n";
}

std::vector<Experiment> plan_from_text(const SimConfig& cfg, const std::string& text) {
  const auto j = ordered_json::parse(text);
  if (j.value("format", "") != "fisim-plan" || j.value("version", 0) != 1)
    throw std::runtime_error("unrecognized plan file");
  const auto mode = fisim::trigger_mode_from_string(j.at("mode").get<std::string>());

  std::vector<Experiment> out;
  for (const auto& je : j.at("experiments")) {
    const std::string name = je.at("fault").get<std::string>();
    const fisim::FaultLibraryEntry* entry = nullptr;
    for (const auto& cand : cfg.faults)
      if (cand.name == name) entry = &cand;
    if (entry == nullptr)
      throw std::runtime_error("plan names fault '" + name + "' missing from config");
    Experiment e;
    e.id = je.at("id").get<int>();
    e.scenario = fisim::scenario_from_string(je.at("scenario").get<std::string>());
    e.has_fault = true;
    e.seed = je.at("seed").get<uint64_t>();
    e.fault.name = entry->name;
    e.fault.target = entry->target;
    e.fault.params = entry->params;
    e.fault.seed = e.seed;
    e.fault.trigger.mode = mode;
    e.fault.trigger.guided = entry->guided;
    if (je.contains("t_start")) e.fault.trigger.t_start = je.at("t_start").get<double>();
    if (je.contains("kernel")) {
      e.fault.params.effect.blur_kind =
          fisim::kernel_from_string(je.at("kernel").get<std::string>());
      e.fault.params.effect.blur_size = je.at("kernel_size").get<int>();
    }
    out.push_back(std::move(e));
  }
  return out;
}

int cmd_generate(const CommonOpts& o, const std::string& out_path,
                 const std::string& emit_config) {
  const SimConfig cfg = load_or_default(o);
  if (!emit_config.empty())
    fisim::write_text_file(emit_config, fisim::config_to_json_text(cfg));
  const auto mode = fisim::trigger_mode_from_string(o.mode);
  const auto exps = fisim::generate_campaign(cfg, mode, o.seed, make_filter(o));
  const uint64_t seed = o.seed.value_or(cfg.campaign.seed);
  const std::string text = plan_text(cfg, mode, seed, exps);
  if (out_path.empty())
    std::fwrite(text.data(), 1, text.size(), stdout);
  else
    fisim::write_text_file(out_path, text);
  std::fprintf(stderr, "generated %zu experiments (%s)\n", exps.size(), o.mode.c_str());
  return 0;
}

int cmd_run(const CommonOpts& o, const std::string& out_dir, int workers,
            const std::string& plan_path, const std::string& dump_dir, bool quiet) {
  SimConfig cfg = load_or_default(o);
  if (!dump_dir.empty()) cfg.vision.dump_dir = dump_dir;

  std::vector<Experiment> exps;
  if (plan_path.empty())
    exps = fisim::generate_campaign(cfg, fisim::trigger_mode_from_string(o.mode), o.seed,
                                    make_filter(o));
  else
    exps = plan_from_text(cfg, fisim::read_text_file(plan_path));

  std::filesystem::create_directories(out_dir);
  if (!dump_dir.empty()) std::filesystem::create_directories(dump_dir);

  fisim::TwinCache cache;
  fisim::ProgressFn progress = nullptr;
  if (!quiet)
    progress = [](size_t done, size_t total) {
      if (done % 20 == 0 || done == total)
        std::fprintf(stderr, "  %zu/%zu runs\n", done, total);
    };
  const auto runs = fisim::run_campaign(cfg, exps, workers, &cache, progress);
  const auto metrics = fisim::compute_metrics(runs);

  fisim::write_events(out_dir + "/events.jsonl", runs);
  fisim::write_summary_csv(out_dir + "/summary.csv", runs);
  fisim::write_aggregate_csv(out_dir + "/aggregate.csv", metrics);

  const auto& t = metrics.total;
  std::printf(
      "%ld runs: activated %ld, manifested %ld, hazardous %ld, sdc %ld, invalid %ld\n",
      t.injected, t.activated, t.manifested, t.hazard_runs, t.sdc, t.invalid);
  std::printf("artifacts in %s\n", out_dir.c_str());
  return 0;
}

int cmd_report(const std::string& events_path, const std::string& out_dir) {
  const auto runs = fisim::parse_events(events_path);
  const auto metrics = fisim::compute_metrics(runs);
  const std::string agg = fisim::aggregate_csv_text(metrics);
  if (out_dir.empty()) {
    std::fwrite(agg.data(), 1, agg.size(), stdout);
  } else {
    std::filesystem::create_directories(out_dir);
    fisim::write_text_file(out_dir + "/aggregate.csv", agg);
    fisim::write_summary_csv(out_dir + "/summary.csv", runs);
    std::printf("artifacts in %s\n", out_dir.c_str());
  }
  return 0;
}

int cmd_compare(const std::string& guided_path, const std::string& random_path,
                const std::string& out_path) {
  const auto guided = fisim::compute_metrics(fisim::parse_events(guided_path));
  const auto random = fisim::compute_metrics(fisim::parse_events(random_path));
  const auto rep = fisim::compare_guided_random(guided, random);
  const std::string text = fisim::comparison_text(rep);
  if (out_path.empty())
    std::fwrite(text.data(), 1, text.size(), stdout);
  else
    fisim::write_text_file(out_path, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic fault-injection lab for an ACC+LKAS loop"};
  app.require_subcommand(1);

  CommonOpts gen_opts;
  std::string gen_out, gen_emit_config;
  auto* gen = app.add_subcommand("generate", "expand the fault library into an experiment plan");
  add_common(gen, gen_opts);
  gen->add_option("--out", gen_out, "plan file (stdout when omitted)");
  gen->add_option("--emit-config", gen_emit_config, "also write the effective config here");

  CommonOpts run_opts;
  std::string run_out = "out", run_plan, run_dump;
  int run_workers = 1;
  bool run_quiet = false;
  auto* run = app.add_subcommand("run", "execute a campaign and write artifacts");
  add_common(run, run_opts);
  run->add_option("--out", run_out, "artifact directory");
  run->add_option("--workers", run_workers, "worker threads (results are identical for any count)")
      ->check(CLI::PositiveNumber);
  run->add_option("--plan", run_plan, "run a previously generated plan instead of expanding");
  run->add_option("--dump-frames", run_dump, "dump rendered camera frames under this directory");
  run->add_flag("--quiet", run_quiet, "suppress progress output");

  std::string rep_events, rep_out;
  auto* rep = app.add_subcommand("report", "recompute aggregates from an event log");
  rep->add_option("--events", rep_events, "events.jsonl path")->required();
  rep->add_option("--out", rep_out, "artifact directory (stdout when omitted)");

  std::string cmp_guided, cmp_random, cmp_out;
  auto* cmp = app.add_subcommand("compare", "guided-vs-random rate table from two event logs");
  cmp->add_option("--guided", cmp_guided, "guided events.jsonl")->required();
  cmp->add_option("--random", cmp_random, "random events.jsonl")->required();
  cmp->add_option("--out", cmp_out, "output file (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_generate(gen_opts, gen_out, gen_emit_config);
    if (run->parsed())
      return cmd_run(run_opts, run_out, run_workers, run_plan, run_dump, run_quiet);
    if (rep->parsed()) return cmd_report(rep_events, rep_out);
    if (cmp->parsed()) return cmd_compare(cmp_guided, cmp_random, cmp_out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
