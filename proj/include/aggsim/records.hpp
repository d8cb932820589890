#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "aggsim/engine.hpp"
#include "aggsim/harness.hpp"

namespace aggsim {

// Raw trial records, one CSV row per trial:
//   cell,trial,swarm_size,rho_informed,rho_black,variant,seed,status,black,white,elsewhere
// `cell` is the hex content id of (swarm_size, rho_informed, rho_black, variant).

std::string raw_csv_header();
std::string raw_csv_row(const TrialRecord& r);
std::string raw_json_line(const TrialRecord& r);

/// Throws DataError naming the 1-based line of the first malformed record, or when
/// the file holds no records at all.
std::vector<TrialRecord> read_raw_csv(std::istream& in);
std::vector<TrialRecord> read_raw_csv(const std::filesystem::path& path);

void write_raw_csv(const std::filesystem::path& path, const std::vector<TrialRecord>& records);
void write_raw_jsonl(const std::filesystem::path& path, const std::vector<TrialRecord>& records);

/// One row per cell with medians, IQRs and trial/failure counts.
void write_summary_csv(std::ostream& out, const SummaryTable& table);

/// Failed trials as a JSON array of {cell, trial, seed, error}.
void write_failures_json(std::ostream& out, const std::vector<TrialRecord>& records);

enum class HeatmapStat { Median, Iqr };

/// Grid for one (variant, N, site, statistic): header row of rho_black values,
/// leading column of rho_informed values; absent cells are left empty.
void write_heatmap_csv(std::ostream& out, const SummaryTable& table, Variant variant, int swarm_size, Site site,
                       HeatmapStat stat);

/// Writes every heatmap for every (variant, N) in the table into `dir`; returns the paths.
std::vector<std::filesystem::path> write_heatmaps(const std::filesystem::path& dir, const SummaryTable& table);

/// Long-format histogram: site,robots,frequency.
void write_histogram_csv(std::ostream& out, const SymmetryReport& report);

/// Stable JSON document for one trial (config echo, counts, per-robot final state).
std::string trial_result_json(const TrialConfig& config, const TrialResult& result);

}  // namespace aggsim
