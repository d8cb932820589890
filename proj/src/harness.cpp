#include "aggsim/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "aggsim/errors.hpp"

namespace aggsim {

namespace {

std::uint64_t fixed_point(double v) { return static_cast<std::uint64_t>(std::llround(v * 1e6)); }

}  // namespace

std::uint64_t CellKey::id() const {
    std::uint64_t h = mix64(static_cast<std::uint64_t>(swarm_size));
    h = mix_seed(h, fixed_point(rho_informed));
    h = mix_seed(h, fixed_point(rho_black));
    return mix_seed(h, static_cast<std::uint64_t>(variant));
}

bool cell_order(const CellKey& a, const CellKey& b) {
    return std::tuple(a.variant, a.swarm_size, fixed_point(a.rho_informed), fixed_point(a.rho_black)) <
           std::tuple(b.variant, b.swarm_size, fixed_point(b.rho_informed), fixed_point(b.rho_black));
}

void SweepSpec::validate() const {
    if (swarm_sizes.empty()) throw ConfigError("sweep.swarm_sizes is empty");
    if (rho_informed_values.empty()) throw ConfigError("sweep.rho_informed is empty");
    if (rho_black_values.empty()) throw ConfigError("sweep.rho_black is empty");
    if (variants.empty()) throw ConfigError("sweep.variants is empty");
    if (trials_per_cell <= 0) throw ConfigError("sweep.trials_per_cell must be positive");
}

std::vector<CellKey> SweepSpec::cells() const {
    std::vector<CellKey> out;
    for (Variant v : variants)
        for (int n : swarm_sizes)
            for (double ri : rho_informed_values)
                for (double rb : rho_black_values) out.push_back({n, ri, rb, v});
    std::sort(out.begin(), out.end(), cell_order);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::uint64_t trial_seed(std::uint64_t base_seed, const CellKey& cell, int trial) {
    return mix_seed(base_seed, cell.id(), static_cast<std::uint64_t>(trial));
}

TrialConfig cell_config(const TrialConfig& base, const CellKey& cell, std::uint64_t seed, bool keep_arena) {
    TrialConfig c = base;
    c.swarm_size = cell.swarm_size;
    c.rho_informed = cell.rho_informed;
    c.rho_black = cell.rho_black;
    c.variant = cell.variant;
    c.seed = seed;
    if (!keep_arena) c.arena = make_arena(cell.swarm_size);
    return c;
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw std::invalid_argument("quantile of an empty sample");
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Quartiles median_and_iqr(std::span<const double> samples) {
    if (samples.empty()) throw std::invalid_argument("median_and_iqr: empty sample");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    return {quantile_sorted(sorted, 0.5), quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25)};
}

Quartiles median_and_iqr(std::span<const int> samples) {
    const std::vector<double> values(samples.begin(), samples.end());
    return median_and_iqr(std::span<const double>(values));
}

const CellSummary* SummaryTable::find(const CellKey& key) const {
    for (const auto& c : cells)
        if (c.cell == key) return &c;
    return nullptr;
}

int SummaryTable::failed_trials() const {
    int total = 0;
    for (const auto& c : cells) total += c.failed;
    return total;
}

SummaryTable summarize(std::span<const TrialRecord> records) {
    std::vector<const TrialRecord*> sorted;
    sorted.reserve(records.size());
    for (const auto& r : records) sorted.push_back(&r);
    std::stable_sort(sorted.begin(), sorted.end(), [](const TrialRecord* a, const TrialRecord* b) {
        if (a->cell == b->cell) return a->trial < b->trial;
        return cell_order(a->cell, b->cell);
    });

    SummaryTable table;
    for (const TrialRecord* r : sorted) {
        if (table.cells.empty() || !(table.cells.back().cell == r->cell)) {
            table.cells.emplace_back();
            table.cells.back().cell = r->cell;
        }
        CellSummary& c = table.cells.back();
        ++c.trials;
        if (!r->ok) {
            ++c.failed;
            continue;
        }
        c.raw_black.push_back(r->black);
        c.raw_white.push_back(r->white);
        c.raw_elsewhere.push_back(r->elsewhere);
    }
    for (auto& c : table.cells) {
        if (c.raw_black.empty()) continue;
        const Quartiles b = median_and_iqr(std::span<const int>(c.raw_black));
        const Quartiles w = median_and_iqr(std::span<const int>(c.raw_white));
        c.median_black = b.median;
        c.iqr_black = b.iqr;
        c.median_white = w.median;
        c.iqr_white = w.iqr;
        c.median_elsewhere = median_and_iqr(std::span<const int>(c.raw_elsewhere)).median;
    }
    return table;
}

namespace {

struct PendingTrial {
    CellKey cell;
    int trial;
    std::uint64_t seed;
};

TrialRecord execute(const TrialConfig& base, const PendingTrial& job, bool keep_arena) {
    TrialRecord rec;
    rec.cell = job.cell;
    rec.trial = job.trial;
    rec.seed = job.seed;
    try {
        const TrialResult result = run_trial(cell_config(base, job.cell, job.seed, keep_arena));
        rec.black = result.robots_on_black;
        rec.white = result.robots_on_white;
        rec.elsewhere = result.robots_elsewhere;
    } catch (const std::exception& e) {
        rec.ok = false;
        rec.error = e.what();
    }
    return rec;
}

}  // namespace

SweepOutcome run_sweep(const SweepSpec& spec, const TrialConfig& base, const SweepOptions& options) {
    spec.validate();
    SweepOutcome outcome;

    std::vector<PendingTrial> jobs;
    for (const CellKey& cell : spec.cells()) {
        for (int t = 0; t < spec.trials_per_cell; ++t) {
            const std::uint64_t seed = trial_seed(spec.base_seed, cell, t);
            const auto done = std::find_if(options.completed.begin(), options.completed.end(), [&](const TrialRecord& r) {
                return r.ok && r.cell == cell && r.trial == t && r.seed == seed;
            });
            if (done != options.completed.end()) {
                outcome.records.push_back(*done);
                ++outcome.reused;
            } else {
                jobs.push_back({cell, t, seed});
            }
        }
    }

    std::vector<TrialRecord> fresh(jobs.size());
    const long count = static_cast<long>(jobs.size());
    const int workers = options.workers;
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers) if (workers != 1)
    for (long j = 0; j < count; ++j) {
        fresh[static_cast<std::size_t>(j)] = execute(base, jobs[static_cast<std::size_t>(j)], options.keep_arena);
        if (options.on_record) {
#pragma omp critical(aggsim_sweep_record)
            options.on_record(fresh[static_cast<std::size_t>(j)]);
        }
    }
    outcome.simulated = static_cast<int>(fresh.size());
    outcome.records.insert(outcome.records.end(), fresh.begin(), fresh.end());
    std::sort(outcome.records.begin(), outcome.records.end(), [](const TrialRecord& a, const TrialRecord& b) {
        if (a.cell == b.cell) return a.trial < b.trial;
        return cell_order(a.cell, b.cell);
    });
    outcome.summary = summarize(outcome.records);
    return outcome;
}

SymmetryReport symmetry_breaking_experiment(int swarm_size, int runs, std::uint64_t base_seed,
                                            const TrialConfig& base, const SweepOptions& options) {
    SweepSpec spec;
    spec.swarm_sizes = {swarm_size};
    spec.rho_informed_values = {0.0};
    spec.rho_black_values = {0.5};
    spec.variants = {Variant::Simplified};
    spec.trials_per_cell = runs;
    spec.base_seed = base_seed;

    SymmetryReport report;
    report.runs = run_sweep(spec, base, options).records;
    std::vector<int> off_site;
    for (const auto& r : report.runs) {
        if (!r.ok) continue;
        ++report.black_histogram[r.black];
        ++report.white_histogram[r.white];
        off_site.push_back(r.elsewhere);
        if (r.black > r.white)
            ++report.black_wins;
        else if (r.white > r.black)
            ++report.white_wins;
        else
            ++report.ties;
    }
    if (!off_site.empty()) report.off_site = median_and_iqr(std::span<const int>(off_site));
    return report;
}

}  // namespace aggsim
