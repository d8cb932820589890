#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "aggsim/engine.hpp"

namespace aggsim {

/// One grid cell of a sweep.
struct CellKey {
    int swarm_size = 50;
    double rho_informed = 0.0;
    double rho_black = 0.5;
    Variant variant = Variant::Simplified;

    /// Stable content hash. Seeds derive from it, so a cell's trials do not depend on
    /// which other cells share the sweep.
    std::uint64_t id() const;

    friend bool operator==(const CellKey& a, const CellKey& b) { return a.id() == b.id(); }
};

/// Display / file order: variant, then N, rho_I, rho_black.
bool cell_order(const CellKey& a, const CellKey& b);

struct SweepSpec {
    std::vector<int> swarm_sizes{50, 100};
    std::vector<double> rho_informed_values{0.1, 0.2, 0.3, 0.4, 0.5};
    std::vector<double> rho_black_values{0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    std::vector<Variant> variants{Variant::Baseline, Variant::Simplified};
    int trials_per_cell = 20;
    std::uint64_t base_seed = 1;

    /// The standard grid: 2 x 5 x 6 x 2 cells of 20 trials.
    static SweepSpec table1() { return {}; }

    /// Throws ConfigError on empty axes or non-positive trial count.
    void validate() const;
    std::vector<CellKey> cells() const;
};

std::uint64_t trial_seed(std::uint64_t base_seed, const CellKey& cell, int trial);

/// Base config specialised to a cell: size, proportions, variant, seed, and the
/// preset arena for the size unless `keep_arena`.
TrialConfig cell_config(const TrialConfig& base, const CellKey& cell, std::uint64_t seed, bool keep_arena = false);

struct TrialRecord {
    CellKey cell;
    int trial = 0;
    std::uint64_t seed = 0;
    bool ok = true;
    int black = 0;
    int white = 0;
    int elsewhere = 0;
    std::string error;
};

struct Quartiles {
    double median = 0.0;
    double iqr = 0.0;
};

/// Linear-interpolation quantile of sorted data: position (n - 1) p between order statistics.
double quantile_sorted(std::span<const double> sorted, double p);

/// Median and Q3 - Q1 with the linear-interpolation convention. Throws
/// std::invalid_argument on an empty sample.
Quartiles median_and_iqr(std::span<const double> samples);
Quartiles median_and_iqr(std::span<const int> samples);

struct CellSummary {
    CellKey cell;
    int trials = 0;
    int failed = 0;
    double median_black = 0.0;
    double median_white = 0.0;
    double iqr_black = 0.0;
    double iqr_white = 0.0;
    double median_elsewhere = 0.0;
    std::vector<int> raw_black;
    std::vector<int> raw_white;
    std::vector<int> raw_elsewhere;
};

struct SummaryTable {
    std::vector<CellSummary> cells;

    const CellSummary* find(const CellKey& key) const;
    int failed_trials() const;
};

/// Groups records by cell (in `cell_order`) and aggregates the successful trials of
/// each. Failed trials are counted per cell; a cell with no successful trial keeps
/// zero aggregates and a non-zero `failed`.
SummaryTable summarize(std::span<const TrialRecord> records);

struct SweepOptions {
    /// OpenMP worker count; 0 uses the runtime default.
    int workers = 0;
    bool keep_arena = false;
    /// Previously completed trials; matching (cell, trial, seed) entries are reused.
    std::vector<TrialRecord> completed;
    /// Invoked (serialized) as each newly simulated trial finishes.
    std::function<void(const TrialRecord&)> on_record;
};

struct SweepOutcome {
    std::vector<TrialRecord> records;  // sorted by cell order then trial
    SummaryTable summary;
    int simulated = 0;
    int reused = 0;
};

/// Runs every trial of every cell; trials run concurrently and results do not depend
/// on scheduling.
SweepOutcome run_sweep(const SweepSpec& spec, const TrialConfig& base, const SweepOptions& options = {});

struct SymmetryReport {
    std::vector<TrialRecord> runs;
    /// robots-on-site -> number of runs, per site.
    std::map<int, int> black_histogram;
    std::map<int, int> white_histogram;
    Quartiles off_site;
    int black_wins = 0;
    int white_wins = 0;
    int ties = 0;
};

/// Simplified controller, no informed robots: how often the swarm settles on one site.
SymmetryReport symmetry_breaking_experiment(int swarm_size, int runs, std::uint64_t base_seed,
                                            const TrialConfig& base, const SweepOptions& options = {});

}  // namespace aggsim
