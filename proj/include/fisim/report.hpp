#pragma once

#include <string>
#include <vector>

#include "fisim/campaign.hpp"
#include "fisim/experiment.hpp"

namespace fisim {

// Serialized artifact formats. Every emitter is a pure function of its
// inputs with fixed key order and fixed numeric formatting, so identical
// campaigns produce byte-identical files.

// JSON-lines event log; first line is a format/version tag object.
std::string events_text(const std::vector<RunSummary>& runs);
void write_events(const std::string& path, const std::vector<RunSummary>& runs);
std::vector<RunSummary> parse_events_text(const std::string& text);
std::vector<RunSummary> parse_events(const std::string& path);

// Per-run CSV; first line is a "# fisim-summary v1" tag comment.
std::string summary_csv_text(const std::vector<RunSummary>& runs);
void write_summary_csv(const std::string& path, const std::vector<RunSummary>& runs);

// Aggregated counts/rates CSV; rows per scenario, per fault entry, and total.
std::string aggregate_csv_text(const CampaignMetrics& m);
void write_aggregate_csv(const std::string& path, const CampaignMetrics& m);

// Side-by-side guided/random rate table (CSV-shaped for easy machine checks).
std::string comparison_text(const ComparisonReport& rep);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace fisim
