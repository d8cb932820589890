#include "aggsim/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <tuple>

#include <CLI11.hpp>

#include "aggsim/config.hpp"
#include "aggsim/errors.hpp"
#include "aggsim/records.hpp"

namespace aggsim {

namespace fs = std::filesystem;

namespace {

struct Overrides {
    std::string config;
    std::optional<std::string> seed, variant, swarm_size, rho_informed, rho_black, duration, tick_dt, workers;
};

void add_override_flags(CLI::App& cmd, Overrides& o) {
    cmd.add_option("-c,--config", o.config, "Key/value config file (defaults give the reference setup)");
    cmd.add_option("--seed", o.seed, "Trial seed");
    cmd.add_option("--variant", o.variant, "baseline | simplified");
    cmd.add_option("-N,--swarm-size", o.swarm_size, "Swarm size");
    cmd.add_option("--rho-informed", o.rho_informed, "Proportion of informed robots");
    cmd.add_option("--rho-black", o.rho_black, "Proportion of informed robots preferring black");
    cmd.add_option("--duration", o.duration, "Trial duration (s)");
    cmd.add_option("--tick-dt", o.tick_dt, "Simulation timestep (s)");
    cmd.add_option("-j,--workers", o.workers, "Parallel workers (0 = all cores)");
}

RunSettings load_settings(const Overrides& o) {
    RunSettings s = o.config.empty() ? RunSettings{} : load_config(o.config);
    const std::pair<const char*, const std::optional<std::string>*> flags[] = {
        {"seed", &o.seed},         {"variant", &o.variant},   {"swarm_size", &o.swarm_size},
        {"rho_informed", &o.rho_informed}, {"rho_black", &o.rho_black}, {"duration", &o.duration},
        {"tick_dt", &o.tick_dt},   {"workers", &o.workers},
    };
    for (const auto& [key, value] : flags)
        if (*value) apply_setting(s, key, **value);
    return s;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    out << text;
}

void write_summaries(const fs::path& dir, const SummaryTable& table) {
    std::ofstream summary(dir / "summary.csv", std::ios::binary);
    if (!summary) throw DataError("cannot write '" + (dir / "summary.csv").string() + "'");
    write_summary_csv(summary, table);
    write_heatmaps(dir / "heatmaps", table);
}

using RecordKey = std::tuple<std::uint64_t, int, std::uint64_t>;

RecordKey key_of(const TrialRecord& r) { return {r.cell.id(), r.trial, r.seed}; }

std::vector<TrialRecord> existing_records(const fs::path& raw) {
    if (!fs::exists(raw)) return {};
    try {
        return read_raw_csv(raw);
    } catch (const DataError& e) {
        if (std::string(e.what()) == "no trial records found") return {};
        throw DataError(raw.string() + ": " + e.what());
    }
}

int cmd_run(const Overrides& o, const fs::path& out_dir, bool trajectory, std::ostream& out) {
    RunSettings s = load_settings(o);
    finalize(s);
    fs::create_directories(out_dir);
    write_text(out_dir / "config.ini", dump_config(s));

    RunOptions options;
    std::ofstream traj_file;
    std::optional<TrajectoryWriter> writer;
    if (trajectory) {
        traj_file.open(out_dir / "trajectory.csv", std::ios::binary);
        writer.emplace(traj_file, s.trajectory_interval);
        options.on_tick = [&](const Simulation& sim) { (*writer)(sim); };
    }
    const TrialResult result = run_trial(s.trial, options);
    write_text(out_dir / "result.json", trial_result_json(s.trial, result));
    out << "black=" << result.robots_on_black << " white=" << result.robots_on_white
        << " elsewhere=" << result.robots_elsewhere << '\n';
    return kExitOk;
}

int cmd_sweep(const Overrides& o, const fs::path& out_dir, const std::string& preset,
              const std::optional<std::string>& trials, const std::optional<std::string>& base_seed, bool dry_run,
              bool verbose, std::ostream& out) {
    RunSettings s = o.config.empty() ? RunSettings{} : load_config(o.config);
    if (!preset.empty()) {
        if (preset != "table1") throw ConfigError("preset: unknown preset '" + preset + "'");
        s.sweep = SweepSpec::table1();
    }
    RunSettings flags = load_settings(Overrides{.config = {}, .seed = o.seed, .variant = o.variant,
                                                .swarm_size = o.swarm_size, .rho_informed = o.rho_informed,
                                                .rho_black = o.rho_black, .duration = o.duration,
                                                .tick_dt = o.tick_dt, .workers = o.workers});
    // Grid-axis flags restrict the sweep to the given value; the rest override the base config.
    if (o.swarm_size) s.sweep.swarm_sizes = {flags.trial.swarm_size};
    if (o.rho_informed) s.sweep.rho_informed_values = {flags.trial.rho_informed};
    if (o.rho_black) s.sweep.rho_black_values = {flags.trial.rho_black};
    if (o.variant) s.sweep.variants = {flags.trial.variant};
    if (o.seed) s.sweep.base_seed = flags.trial.seed;
    if (o.duration) s.trial.duration = flags.trial.duration;
    if (o.tick_dt) s.trial.tick_dt = flags.trial.tick_dt;
    if (o.workers) s.workers = flags.workers;
    if (trials) apply_setting(s, "sweep.trials_per_cell", *trials);
    if (base_seed) apply_setting(s, "sweep.base_seed", *base_seed);
    s.sweep.validate();

    // Validate the base against the first grid cell so bad fields fail before any work.
    s.trial.swarm_size = s.sweep.swarm_sizes.front();
    finalize(s);
    for (const CellKey& cell : s.sweep.cells())
        validate(cell_config(s.trial, cell, 0, s.arena_explicit));

    const auto cells = s.sweep.cells();
    out << "sweep: " << s.sweep.swarm_sizes.size() << " sizes x " << s.sweep.rho_informed_values.size()
        << " rho_informed x " << s.sweep.rho_black_values.size() << " rho_black x " << s.sweep.variants.size()
        << " variants = " << cells.size() << " cells, " << s.sweep.trials_per_cell << " trials each ("
        << cells.size() * static_cast<std::size_t>(s.sweep.trials_per_cell) << " trials)\n";
    if (verbose)
        for (const auto& c : cells)
            out << "  cell N=" << c.swarm_size << " rho_informed=" << format_number(c.rho_informed)
                << " rho_black=" << format_number(c.rho_black) << " variant=" << to_string(c.variant) << '\n';
    if (dry_run) return kExitOk;

    fs::create_directories(out_dir);
    write_text(out_dir / "config.ini", dump_config(s));

    const fs::path raw_path = out_dir / "raw.csv";
    std::vector<TrialRecord> previous = existing_records(raw_path);

    SweepOptions options;
    options.workers = s.workers;
    options.keep_arena = s.arena_explicit;
    options.completed = previous;
    std::ofstream raw_append;
    if (previous.empty()) {
        raw_append.open(raw_path, std::ios::binary | std::ios::trunc);
        raw_append << raw_csv_header() << '\n';
    } else {
        raw_append.open(raw_path, std::ios::binary | std::ios::app);
    }
    raw_append.flush();
    options.on_record = [&](const TrialRecord& r) {
        raw_append << raw_csv_row(r) << '\n';
        raw_append.flush();
        if (verbose) out << "  done " << raw_csv_row(r) << '\n';
    };

    const SweepOutcome outcome = run_sweep(s.sweep, s.trial, options);
    raw_append.close();

    // Newly simulated records replace earlier ones with the same (cell, trial, seed).
    std::map<RecordKey, TrialRecord> merged;
    for (const auto& r : previous) merged[key_of(r)] = r;
    for (const auto& r : outcome.records) merged[key_of(r)] = r;
    std::vector<TrialRecord> all;
    for (auto& [key, r] : merged) all.push_back(r);
    std::sort(all.begin(), all.end(), [](const TrialRecord& a, const TrialRecord& b) {
        if (a.cell == b.cell) return a.trial < b.trial;
        return cell_order(a.cell, b.cell);
    });

    write_raw_csv(raw_path, all);
    write_raw_jsonl(out_dir / "raw.jsonl", all);
    write_summaries(out_dir, summarize(all));
    {
        std::ofstream failures(out_dir / "failures.json", std::ios::binary);
        write_failures_json(failures, outcome.records);
    }

    const int failed = outcome.summary.failed_trials();
    out << "simulated " << outcome.simulated << ", reused " << outcome.reused << ", failed " << failed << '\n';
    return failed > 0 ? kExitPartialFailure : kExitOk;
}

int cmd_stats(const fs::path& raw, std::optional<fs::path> out_dir, std::ostream& out) {
    const auto records = read_raw_csv(raw);
    const fs::path dir = out_dir ? *out_dir : raw.parent_path();
    if (!dir.empty()) fs::create_directories(dir);
    const SummaryTable table = summarize(records);
    write_summaries(dir.empty() ? fs::path(".") : dir, table);
    out << "summarized " << records.size() << " records into " << table.cells.size() << " cells\n";
    return table.failed_trials() > 0 ? kExitPartialFailure : kExitOk;
}

int cmd_symmetry(const Overrides& o, const fs::path& out_dir, int runs, std::ostream& out) {
    Overrides fixed = o;
    if (!fixed.swarm_size) fixed.swarm_size = "100";
    RunSettings s = load_settings(fixed);
    s.trial.variant = Variant::Simplified;
    s.trial.rho_informed = 0.0;
    finalize(s);
    if (runs <= 0) throw ConfigError("runs must be positive");
    fs::create_directories(out_dir);
    write_text(out_dir / "config.ini", dump_config(s));

    SweepOptions options;
    options.workers = s.workers;
    options.keep_arena = s.arena_explicit;
    const SymmetryReport report = symmetry_breaking_experiment(s.trial.swarm_size, runs, s.trial.seed, s.trial, options);
    write_raw_csv(out_dir / "raw.csv", report.runs);
    std::ofstream hist(out_dir / "histogram.csv", std::ios::binary);
    write_histogram_csv(hist, report);
    out << "runs=" << report.runs.size() << " black_wins=" << report.black_wins << " white_wins=" << report.white_wins
        << " ties=" << report.ties << " off_site_median=" << format_number(report.off_site.median)
        << " off_site_iqr=" << format_number(report.off_site.iqr) << '\n';
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Aggregation of a swarm with informed robots over two sites", "aggsim"};
    app.require_subcommand(1);
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "Verbose progress output");

    Overrides run_o;
    std::string run_out = "out/run";
    bool trajectory = false;
    auto* run = app.add_subcommand("run", "Run one trial");
    add_override_flags(*run, run_o);
    run->add_option("-o,--out", run_out, "Output directory");
    run->add_flag("--trajectory", trajectory, "Dump trajectory.csv");

    Overrides sweep_o;
    std::string sweep_out = "out/sweep";
    std::string preset;
    std::optional<std::string> trials, base_seed;
    bool dry_run = false;
    auto* sweep = app.add_subcommand("sweep", "Run a parameter grid (resumable)");
    add_override_flags(*sweep, sweep_o);
    sweep->add_option("-o,--out", sweep_out, "Output directory");
    sweep->add_option("--preset", preset, "Named grid: table1");
    sweep->add_option("--trials", trials, "Trials per cell");
    sweep->add_option("--base-seed", base_seed, "Base seed for per-trial seed derivation");
    sweep->add_flag("--dry-run", dry_run, "Print the sweep definition and exit");

    std::string stats_raw;
    std::optional<std::string> stats_out;
    auto* stats = app.add_subcommand("stats", "Recompute summaries and heatmaps from raw records");
    stats->add_option("raw", stats_raw, "raw.csv produced by sweep")->required();
    stats->add_option("-o,--out", stats_out, "Output directory (default: next to raw file)");

    Overrides sym_o;
    std::string sym_out = "out/symmetry";
    int runs = 50;
    auto* symmetry = app.add_subcommand("symmetry", "Symmetry-breaking experiment without informed robots");
    add_override_flags(*symmetry, sym_o);
    symmetry->add_option("-o,--out", sym_out, "Output directory");
    symmetry->add_option("--runs", runs, "Number of runs");

    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (*run) return cmd_run(run_o, run_out, trajectory, out);
        if (*sweep) return cmd_sweep(sweep_o, sweep_out, preset, trials, base_seed, dry_run, verbose, out);
        if (*stats) return cmd_stats(stats_raw, stats_out ? std::optional<fs::path>(*stats_out) : std::nullopt, out);
        if (*symmetry) return cmd_symmetry(sym_o, sym_out, runs, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const InitError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    }
    return kExitConfigError;
}

}  // namespace aggsim
