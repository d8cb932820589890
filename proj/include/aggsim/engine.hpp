#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "aggsim/arena.hpp"
#include "aggsim/controller.hpp"
#include "aggsim/kernels.hpp"
#include "aggsim/rng.hpp"
#include "aggsim/swarm.hpp"

namespace aggsim {

struct TrialConfig {
    int swarm_size = 50;
    double rho_informed = 0.0;
    double rho_black = 0.5;
    Variant variant = Variant::Simplified;
    ArenaSpec arena = make_arena(50);
    BodySpec body;
    ControllerParams controller;
    double duration = 30000.0;  // s
    double tick_dt = 0.1;       // s
    std::uint64_t seed = 1;
    /// Sampling period of the occupancy time series; 0 disables it.
    double occupancy_interval = 0.0;
};

/// Throws ConfigError naming the offending field.
void validate(const TrialConfig& config);

struct KindCounts {
    int informed_black = 0;
    int informed_white = 0;
    int non_informed = 0;
};

/// N_informed = round(N rho_I), N_black = round(N_informed rho_black), the rest white.
KindCounts kind_counts(int swarm_size, double rho_informed, double rho_black);

struct OccupancySample {
    double time = 0.0;
    int black = 0;
    int white = 0;
    int staying = 0;  // robots in Stay anywhere
};

struct RobotFinal {
    RobotKind kind = RobotKind::NonInformed;
    MacroState state = MacroState::RandomWalk;
    std::optional<Site> site;
};

struct TrialResult {
    int robots_on_black = 0;
    int robots_on_white = 0;
    int robots_elsewhere = 0;
    std::vector<RobotFinal> per_robot_final;
    std::vector<OccupancySample> occupancy;

    int total() const { return robots_on_black + robots_on_white + robots_elsewhere; }
};

/// Fixed-timestep executor for one trial.
///
/// Each tick snapshots the swarm, senses from the snapshot, steps every controller
/// in robot-index order (the only consumer of the trial's random stream), then
/// applies motor commands with move-cancellation collision handling.
class Simulation {
public:
    /// Places robots uniformly without overlap. Throws ConfigError or InitError.
    explicit Simulation(TrialConfig config, KernelBackend backend = KernelBackend::Parallel);

    /// Starts from a given swarm instead of random placement (kinds and states as given).
    /// Throws ConfigError if the record count differs from swarm_size.
    Simulation(TrialConfig config, std::vector<RobotRecord> robots, KernelBackend backend = KernelBackend::Parallel);

    void tick();

    const TrialConfig& config() const { return config_; }
    std::span<const RobotRecord> robots() const { return robots_; }
    long tick_index() const { return tick_index_; }
    double time() const { return static_cast<double>(tick_index_) * config_.tick_dt; }
    long total_ticks() const { return total_ticks_; }
    bool finished() const { return tick_index_ >= total_ticks_; }

    /// Number of ticks so far that fell on an FSM update boundary.
    long fsm_updates() const { return fsm_updates_; }
    /// Per-robot count of probabilistic leave draws taken so far.
    std::span<const long> leave_draws() const { return leave_draws_; }

    /// Site occupancy of the current positions.
    TrialResult result() const;

private:
    void prepare_buffers();
    void record_occupancy();

    TrialConfig config_;
    KernelBackend backend_;
    Rng rng_;
    std::vector<RobotRecord> robots_;
    long tick_index_ = 0;
    long total_ticks_ = 0;
    long ticks_per_update_ = 0;
    long ticks_per_sample_ = 0;
    long fsm_updates_ = 0;
    std::vector<long> leave_draws_;
    std::vector<OccupancySample> occupancy_;

    // Per-tick scratch, kept to avoid reallocating every tick.
    Scene scene_;
    std::vector<Sensors> sensors_;
    std::vector<Vec2> current_;
    std::vector<Vec2> proposed_;
    std::vector<std::uint8_t> accepted_;
};

struct RunOptions {
    KernelBackend backend = KernelBackend::Parallel;
    /// Called once on the initial state and after every tick; used for audits and trajectory dumps.
    std::function<void(const Simulation&)> on_tick;
};

TrialResult run_trial(const TrialConfig& config, const RunOptions& options = {});

/// Writes `robot,t,x,y,state` rows every `interval` seconds of simulated time.
class TrajectoryWriter {
public:
    TrajectoryWriter(std::ostream& out, double interval);
    void operator()(const Simulation& sim);

private:
    std::ostream* out_;
    double interval_;
    long ticks_per_row_ = 0;
};

}  // namespace aggsim
