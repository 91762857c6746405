#include "fisim/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fisim {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", t);
  return buf;
}

std::string fmt_rate(double r) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", r);
  return buf;
}

std::string opt_time(const std::optional<double>& t) {
  return t ? fmt_time(*t) : std::string();
}

AlertKind alert_kind_from_string(const std::string& s) {
  for (int i = 0; i < kAlertKinds; ++i) {
    const auto k = static_cast<AlertKind>(i);
    if (s == to_string(k)) return k;
  }
  throw std::runtime_error("unknown alert kind: " + s);
}

HazardKind hazard_kind_from_string(const std::string& s) {
  for (HazardKind k : {HazardKind::H1, HazardKind::H2, HazardKind::H3})
    if (s == to_string(k)) return k;
  throw std::runtime_error("unknown hazard kind: " + s);
}

void put_opt(ordered_json& j, const char* key, const std::optional<double>& v) {
  if (v)
    j[key] = *v;
  else
    j[key] = nullptr;
}

}  // namespace

std::string events_text(const std::vector<RunSummary>& runs) {
  std::string out;
  out += R"({"format":"fisim-events","version":1})";
  out += '\n';
  for (const auto& s : runs) {
    ordered_json j;
    j["id"] = s.id;
    j["scenario"] = to_string(s.scenario);
    j["fault"] = s.fault_name;
    j["target"] = s.has_fault ? to_string(s.target) : "none";
    j["mode"] = to_string(s.mode);
    j["seed"] = s.seed;
    j["valid"] = s.valid;
    if (!s.valid) j["error"] = s.error;
    put_opt(j, "t_activate", s.t_activate);
    put_opt(j, "t_manifest", s.t_manifest);
    ordered_json hz = ordered_json::array();
    for (const auto& h : s.hazards)
      hz.push_back(ordered_json{{"kind", to_string(h.kind)}, {"t", h.t}});
    j["hazards"] = hz;
    put_opt(j, "t_collision", s.t_collision);
    ordered_json al = ordered_json::array();
    for (const auto& a : s.alerts)
      al.push_back(ordered_json{{"kind", to_string(a.kind)}, {"t", a.t}});
    j["alerts"] = al;
    j["disengaged"] = s.disengaged;
    j["t_end"] = s.t_end;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<RunSummary> parse_events_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty event log");
  const auto tag = ordered_json::parse(line);
  if (tag.value("format", "") != "fisim-events" || tag.value("version", 0) != 1)
    throw std::runtime_error("unrecognized event log tag: " + line);

  std::vector<RunSummary> runs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = ordered_json::parse(line);
    RunSummary s;
    s.id = j.at("id").get<int>();
    s.scenario = scenario_from_string(j.at("scenario").get<std::string>());
    s.fault_name = j.at("fault").get<std::string>();
    const std::string target = j.at("target").get<std::string>();
    s.has_fault = target != "none";
    if (s.has_fault) s.target = fault_target_from_string(target);
    s.mode = trigger_mode_from_string(j.at("mode").get<std::string>());
    s.seed = j.at("seed").get<uint64_t>();
    s.valid = j.at("valid").get<bool>();
    if (j.contains("error")) s.error = j.at("error").get<std::string>();
    if (!j.at("t_activate").is_null()) s.t_activate = j.at("t_activate").get<double>();
    if (!j.at("t_manifest").is_null()) s.t_manifest = j.at("t_manifest").get<double>();
    for (const auto& h : j.at("hazards"))
      s.hazards.push_back({hazard_kind_from_string(h.at("kind").get<std::string>()),
                           h.at("t").get<double>()});
    if (!j.at("t_collision").is_null()) s.t_collision = j.at("t_collision").get<double>();
    for (const auto& a : j.at("alerts"))
      s.alerts.push_back({alert_kind_from_string(a.at("kind").get<std::string>()),
                          a.at("t").get<double>()});
    s.disengaged = j.at("disengaged").get<bool>();
    s.t_end = j.at("t_end").get<double>();
    runs.push_back(std::move(s));
  }
  return runs;
}

std::string summary_csv_text(const std::vector<RunSummary>& runs) {
  std::string out = "# fisim-summary v1\n";
  out +=
      "id,scenario,fault,target,mode,seed,valid,t_activate,t_manifest,"
      "t_first_hazard,hazard_kinds,t_collision,t_first_alert,first_alert,"
      "reaction_time,disengaged,t_end,error\n";
  for (const auto& s : runs) {
    std::string hz;
    for (const auto& h : s.hazards) {
      if (!hz.empty()) hz += '|';
      hz += to_string(h.kind);
    }
    out += std::to_string(s.id);
    out += ',';
    out += to_string(s.scenario);
    out += ',';
    out += s.fault_name;
    out += ',';
    out += s.has_fault ? to_string(s.target) : "none";
    out += ',';
    out += to_string(s.mode);
    out += ',';
    out += std::to_string(s.seed);
    out += ',';
    out += s.valid ? '1' : '0';
    out += ',';
    out += opt_time(s.t_activate);
    out += ',';
    out += opt_time(s.t_manifest);
    out += ',';
    out += opt_time(s.first_hazard_t());
    out += ',';
    out += hz;
    out += ',';
    out += opt_time(s.t_collision);
    out += ',';
    out += opt_time(s.first_alert_t());
    out += ',';
    out += s.alerts.empty() ? "" : to_string(s.alerts.front().kind);
    out += ',';
    out += opt_time(s.reaction_time());
    out += ',';
    out += s.disengaged ? '1' : '0';
    out += ',';
    out += fmt_time(s.t_end);
    out += ',';
    out += s.error;  // error strings carry no commas
    out += '\n';
  }
  return out;
}

namespace {

void aggregate_row(std::string& out, const std::string& group, const std::string& key,
                   const Counts& c) {
  out += group;
  out += ',';
  out += key;
  for (long v : {c.injected, c.invalid, c.activated, c.manifested, c.hazard_runs, c.sdc,
                 c.h1, c.h2, c.h3, c.collisions, c.alert_runs, c.hazards_no_alert,
                 c.alerts_no_hazard}) {
    out += ',';
    out += std::to_string(v);
  }
  for (double r : {c.activation_rate(), c.manifestation_rate(), c.hazard_coverage(),
                   c.sdc_rate(), c.alert_rate(), c.mean_reaction(), c.mean_latency()}) {
    out += ',';
    out += fmt_rate(r);
  }
  out += ',';
  out += std::to_string(c.reaction_times.size());
  out += '\n';
}

}  // namespace

std::string aggregate_csv_text(const CampaignMetrics& m) {
  std::string out = "# fisim-aggregate v1\n";
  out +=
      "group,key,injected,invalid,activated,manifested,hazard_runs,sdc,h1,h2,h3,"
      "collisions,alert_runs,hazards_no_alert,alerts_no_hazard,activation_rate,"
      "manifestation_rate,hazard_coverage,sdc_rate,alert_rate,mean_reaction,"
      "mean_manifest_latency,reaction_count\n";
  for (const auto& [key, c] : m.by_scenario) aggregate_row(out, "scenario", key, c);
  for (const auto& [key, c] : m.by_fault) aggregate_row(out, "fault", key, c);
  aggregate_row(out, "total", "all", m.total);
  return out;
}

std::string comparison_text(const ComparisonReport& rep) {
  const auto& g = rep.guided;
  const auto& r = rep.random;
  std::string out = "# fisim-compare v1\n";
  out += "metric,guided,random\n";
  const auto row = [&out](const char* name, const std::string& gv, const std::string& rv) {
    out += name;
    out += ',';
    out += gv;
    out += ',';
    out += rv;
    out += '\n';
  };
  row("injected", std::to_string(g.injected), std::to_string(r.injected));
  row("activated", std::to_string(g.activated), std::to_string(r.activated));
  row("hazard_runs", std::to_string(g.hazard_runs), std::to_string(r.hazard_runs));
  row("activation_rate", fmt_rate(g.activation), fmt_rate(r.activation));
  row("manifestation_rate", fmt_rate(g.manifestation), fmt_rate(r.manifestation));
  row("hazard_coverage", fmt_rate(g.coverage), fmt_rate(r.coverage));
  row("alert_rate", fmt_rate(g.alert_rate), fmt_rate(r.alert_rate));
  row("mean_reaction", fmt_rate(g.mean_reaction), fmt_rate(r.mean_reaction));
  row("reaction_count", std::to_string(g.reaction_count), std::to_string(r.reaction_count));
  row("hazards_no_alert", std::to_string(g.hazards_no_alert),
      std::to_string(r.hazards_no_alert));
  out += "guided_coverage_ge_random,";
  out += rep.guided_coverage_ge_random ? "true" : "false";
  out += '\n';
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void write_events(const std::string& path, const std::vector<RunSummary>& runs) {
  write_text_file(path, events_text(runs));
}

std::vector<RunSummary> parse_events(const std::string& path) {
  return parse_events_text(read_text_file(path));
}

void write_summary_csv(const std::string& path, const std::vector<RunSummary>& runs) {
  write_text_file(path, summary_csv_text(runs));
}

void write_aggregate_csv(const std::string& path, const CampaignMetrics& m) {
  write_text_file(path, aggregate_csv_text(m));
}

}  // namespace fisim
