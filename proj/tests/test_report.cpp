#include "fisim/report.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

namespace fisim {
namespace {

std::vector<RunSummary> sample_runs() {
  RunSummary a;
  a.id = 0;
  a.scenario = ScenarioId::S1;
  a.fault_name = "radar_jam";
  a.target = FaultTarget::RadarJam;
  a.mode = TriggerMode::Guided;
  a.seed = 1234567890123ull;
  a.t_activate = 0.0;
  a.t_manifest = 0.01;
  a.hazards.push_back({HazardKind::H1, 4.97});
  a.hazards.push_back({HazardKind::H3, 6.25});
  a.t_collision = 4.98;
  a.alerts.push_back({AlertKind::CanError, 0.0});
  a.disengaged = true;
  a.t_end = 4.98;

  RunSummary b;
  b.id = 1;
  b.scenario = ScenarioId::S4;
  b.fault_name = "vision_d_rel";
  b.target = FaultTarget::VisionDRel;
  b.mode = TriggerMode::Guided;
  b.seed = 42;
  b.t_activate = 1.24;
  b.t_end = 30.0;

  RunSummary c;
  c.id = 2;
  c.scenario = ScenarioId::S2;
  c.fault_name = "car_speed";
  c.target = FaultTarget::CarSpeed;
  c.mode = TriggerMode::Guided;
  c.seed = 7;
  c.valid = false;
  c.error = "non-finite state";
  c.t_end = 12.5;
  return {a, b, c};
}

TEST(EventsLog, TagLineAndOneObjectPerRun) {
  std::vector<RunSummary> runs = sample_runs();
  std::string text = events_text(runs);
  std::istringstream in(text);
  std::string line;
  ASSERT_TRUE(std::getline(in, line));
  EXPECT_EQ(line, R"({"format":"fisim-events","version":1})");
  int body_lines = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) ++body_lines;
  }
  EXPECT_EQ(body_lines, 3);
}

TEST(EventsLog, ParseRoundTripPreservesEverything) {
  std::vector<RunSummary> runs = sample_runs();
  std::string text = events_text(runs);
  std::vector<RunSummary> parsed = parse_events_text(text);
  ASSERT_EQ(parsed.size(), runs.size());

  const RunSummary& a = parsed[0];
  EXPECT_EQ(a.id, 0);
  EXPECT_EQ(a.scenario, ScenarioId::S1);
  EXPECT_EQ(a.fault_name, "radar_jam");
  EXPECT_EQ(a.target, FaultTarget::RadarJam);
  EXPECT_EQ(a.mode, TriggerMode::Guided);
  EXPECT_EQ(a.seed, 1234567890123ull);
  EXPECT_TRUE(a.valid);
  ASSERT_TRUE(a.t_activate.has_value());
  EXPECT_DOUBLE_EQ(*a.t_activate, 0.0);
  ASSERT_TRUE(a.t_manifest.has_value());
  ASSERT_EQ(a.hazards.size(), 2u);
  EXPECT_EQ(a.hazards[0].kind, HazardKind::H1);
  EXPECT_DOUBLE_EQ(a.hazards[0].t, 4.97);
  EXPECT_EQ(a.hazards[1].kind, HazardKind::H3);
  ASSERT_TRUE(a.t_collision.has_value());
  ASSERT_EQ(a.alerts.size(), 1u);
  EXPECT_EQ(a.alerts[0].kind, AlertKind::CanError);
  EXPECT_TRUE(a.disengaged);

  const RunSummary& b = parsed[1];
  EXPECT_FALSE(b.manifested());
  EXPECT_FALSE(b.hazardous());
  EXPECT_FALSE(b.t_collision.has_value());
  EXPECT_TRUE(b.alerts.empty());

  const RunSummary& c = parsed[2];
  EXPECT_FALSE(c.valid);
  EXPECT_EQ(c.error, "non-finite state");

  // Re-serialization is byte-identical: the log is a faithful fixed point.
  EXPECT_EQ(events_text(parsed), text);
}

TEST(EventsLog, RejectsForeignDocuments) {
  EXPECT_THROW(parse_events_text(""), std::runtime_error);
  EXPECT_THROW(parse_events_text("{\"format\":\"other\",\"version\":1}\n"), std::runtime_error);
  EXPECT_THROW(parse_events_text("not json\n"), std::exception);
}

TEST(EventsLog, FileRoundTrip) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "fisim_report_test";
  fs::create_directories(dir);
  const std::string path = (dir / "events.jsonl").string();
  std::vector<RunSummary> runs = sample_runs();
  write_events(path, runs);
  std::vector<RunSummary> parsed = parse_events(path);
  EXPECT_EQ(events_text(parsed), events_text(runs));
  fs::remove_all(dir);
}

TEST(SummaryCsv, TagHeaderAndRows) {
  std::string text = summary_csv_text(sample_runs());
  std::istringstream in(text);
  std::string line;
  ASSERT_TRUE(std::getline(in, line));
  EXPECT_EQ(line, "# fisim-summary v1");
  ASSERT_TRUE(std::getline(in, line));
  EXPECT_EQ(line,
            "id,scenario,fault,target,mode,seed,valid,t_activate,t_manifest,"
            "t_first_hazard,hazard_kinds,t_collision,t_first_alert,first_alert,"
            "reaction_time,disengaged,t_end,error");
  ASSERT_TRUE(std::getline(in, line));
  // Hazardous jam run: fixed 4-decimal times, pipe-joined hazard kinds,
  // reaction time = first hazard minus first alert.
  EXPECT_EQ(line,
            "0,S1,radar_jam,radar_jam,guided,1234567890123,1,0.0000,0.0100,"
            "4.9700,H1|H3,4.9800,0.0000,CanError,4.9700,1,4.9800,");
  ASSERT_TRUE(std::getline(in, line));
  EXPECT_EQ(line, "1,S4,vision_d_rel,vision_d_rel,guided,42,1,1.2400,,,,,,,,0,30.0000,");
  ASSERT_TRUE(std::getline(in, line));
  EXPECT_EQ(line, "2,S2,car_speed,car_speed,guided,7,0,,,,,,,,,0,12.5000,non-finite state");
}

TEST(SummaryCsv, EmptyCampaignIsHeaderOnly) {
  std::string text = summary_csv_text({});
  std::istringstream in(text);
  std::string line;
  int lines = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++lines;
  EXPECT_EQ(lines, 2);  // tag + column header
}

TEST(AggregateCsv, RowsAndPinnedRates) {
  CampaignMetrics m = compute_metrics(sample_runs());
  std::string text = aggregate_csv_text(m);
  std::istringstream in(text);
  std::string line;
  ASSERT_TRUE(std::getline(in, line));
  EXPECT_EQ(line, "# fisim-aggregate v1");
  ASSERT_TRUE(std::getline(in, line));
  EXPECT_EQ(line,
            "group,key,injected,invalid,activated,manifested,hazard_runs,sdc,"
            "h1,h2,h3,collisions,alert_runs,hazards_no_alert,alerts_no_hazard,"
            "activation_rate,manifestation_rate,hazard_coverage,sdc_rate,alert_rate,"
            "mean_reaction,mean_manifest_latency,reaction_count");
  bool saw_total = false, saw_s1 = false, saw_jam = false;
  while (std::getline(in, line)) {
    if (line.rfind("scenario,S1,", 0) == 0) saw_s1 = true;
    if (line.rfind("fault,radar_jam,", 0) == 0) saw_jam = true;
    if (line.rfind("total,all,", 0) == 0) {
      saw_total = true;
      // injected 3, invalid 1, activated 2, manifested 1, hazard_runs 1,
      // sdc 0, h1 1, h2 0, h3 1, collisions 1, alert_runs 1, and no
      // unalerted hazards or hazard-free alerts.
      EXPECT_EQ(line.substr(0, line.find(",1.000000")),
                "total,all,3,1,2,1,1,0,1,0,1,1,1,0,0");
    }
  }
  EXPECT_TRUE(saw_total);
  EXPECT_TRUE(saw_s1);
  EXPECT_TRUE(saw_jam);
}

TEST(AggregateCsv, CoverageMatchesLongDivision) {
  // 1316 hazardous of 3678 activated: the fold must agree with the division
  // to machine precision when rendered and when recomputed.
  Counts c;
  c.injected = 3678;
  c.activated = 3678;
  c.manifested = 3678;
  c.hazard_runs = 1316;
  c.sdc = 3678 - 1316;
  EXPECT_NEAR(c.hazard_coverage(), 1316.0 / 3678.0, 1e-12);
  EXPECT_NEAR(c.hazard_coverage(), 0.357803, 5e-7);

  CampaignMetrics m;
  m.total = c;
  std::string text = aggregate_csv_text(m);
  EXPECT_NE(text.find(",0.357803,"), std::string::npos);
}

TEST(ComparisonReportText, StructuredRateTable) {
  std::vector<RunSummary> guided_runs = {sample_runs()[0]};
  std::vector<RunSummary> random_runs = {sample_runs()[0], sample_runs()[1]};
  ComparisonReport rep = compare_guided_random(compute_metrics(guided_runs),
                                               compute_metrics(random_runs));
  std::string text = comparison_text(rep);
  std::istringstream in(text);
  std::string line;
  ASSERT_TRUE(std::getline(in, line));
  EXPECT_EQ(line, "# fisim-compare v1");
  ASSERT_TRUE(std::getline(in, line));
  EXPECT_EQ(line, "metric,guided,random");
  bool saw_injected = false, saw_coverage = false, saw_verdict = false;
  while (std::getline(in, line)) {
    if (line == "injected,1,2") saw_injected = true;
    if (line.rfind("hazard_coverage,1.000000,0.500000", 0) == 0) saw_coverage = true;
    if (line == "guided_coverage_ge_random,true") saw_verdict = true;
  }
  EXPECT_TRUE(saw_injected);
  EXPECT_TRUE(saw_coverage);
  EXPECT_TRUE(saw_verdict);
}

TEST(TextFileIo, RoundTrip) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "fisim_textio_test";
  fs::create_directories(dir);
  const std::string path = (dir / "blob.txt").string();
  const std::string payload = "line1\nline2\n";
  write_text_file(path, payload);
  EXPECT_EQ(read_text_file(path), payload);
  EXPECT_THROW(read_text_file((dir / "missing.txt").string()), std::runtime_error);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace fisim
