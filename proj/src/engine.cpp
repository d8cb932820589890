#include "aggsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

#include "aggsim/errors.hpp"

namespace aggsim {

namespace {

constexpr int kPlacementAttemptsPerRobot = 10000;

bool divides(double dt, double duration) {
    const double ratio = duration / dt;
    return std::abs(ratio - std::round(ratio)) < 1e-9 * std::max(1.0, ratio);
}

long ticks_for(double duration, double dt) { return std::lround(duration / dt); }

}  // namespace

void validate(const TrialConfig& c) {
    if (c.swarm_size <= 0) throw ConfigError("swarm_size must be positive");
    if (!(c.rho_informed >= 0.0 && c.rho_informed <= 1.0)) throw ConfigError("rho_informed out of [0,1]");
    if (!(c.rho_black >= 0.0 && c.rho_black <= 1.0)) throw ConfigError("rho_black out of [0,1]");
    if (!(c.duration > 0.0)) throw ConfigError("duration must be positive");
    if (!(c.tick_dt > 0.0)) throw ConfigError("tick_dt must be positive");
    if (!(c.occupancy_interval >= 0.0)) throw ConfigError("occupancy_interval must be non-negative");
    if (!(c.body.body_radius > 0.0)) throw ConfigError("body_radius must be positive");
    if (!(c.body.proximity_range > 0.0)) throw ConfigError("proximity_range must be positive");
    if (!(c.body.comm_range > 0.0)) throw ConfigError("comm_range must be positive");
    validate(c.controller);
    // Re-derive to check the arena invariants when diameters came from a file.
    (void)make_arena(c.arena.arena_diameter, c.arena.site_diameter);
    if (!(c.body.body_radius < c.arena.arena_radius())) throw ConfigError("body_radius exceeds arena_radius");

    if (!divides(c.tick_dt, c.controller.fsm_update_period))
        throw ConfigError("tick_dt must divide fsm_update_period");
    if (!divides(c.tick_dt, c.controller.straight_duration))
        throw ConfigError("tick_dt must divide straight_duration");
    if (!divides(c.tick_dt, c.controller.entry_forward_duration))
        throw ConfigError("tick_dt must divide entry_forward_duration");
    if (c.occupancy_interval > 0.0 && !divides(c.tick_dt, c.occupancy_interval))
        throw ConfigError("tick_dt must divide occupancy_interval");
}

KindCounts kind_counts(int swarm_size, double rho_informed, double rho_black) {
    const int informed = static_cast<int>(std::lround(swarm_size * rho_informed));
    const int black = static_cast<int>(std::lround(informed * rho_black));
    return {black, informed - black, swarm_size - informed};
}

Simulation::Simulation(TrialConfig config, KernelBackend backend)
    : config_(std::move(config)), backend_(backend), rng_(config_.seed) {
    validate(config_);
    const int n = config_.swarm_size;
    const double dt = config_.tick_dt;
    const KindCounts kinds = kind_counts(n, config_.rho_informed, config_.rho_black);
    robots_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        RobotKind kind = RobotKind::NonInformed;
        if (i < kinds.informed_black)
            kind = RobotKind::InformedBlack;
        else if (i < kinds.informed_black + kinds.informed_white)
            kind = RobotKind::InformedWhite;
        robots_[static_cast<std::size_t>(i)].kind = kind;
    }

    // Uniform on the disc reachable by a robot center, rejecting overlaps.
    const double max_r = config_.arena.arena_radius() - config_.body.body_radius;
    const double contact2 = 4.0 * config_.body.body_radius * config_.body.body_radius;
    for (std::size_t i = 0; i < robots_.size(); ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < kPlacementAttemptsPerRobot && !placed; ++attempt) {
            const double r = max_r * std::sqrt(uniform01(rng_));
            const double phi = 2.0 * std::numbers::pi * uniform01(rng_);
            const Vec2 p{r * std::cos(phi), r * std::sin(phi)};
            placed = true;
            for (std::size_t j = 0; j < i && placed; ++j)
                placed = squared_distance(p, robots_[j].pose.position) > contact2;
            if (placed) robots_[i].pose.position = p;
        }
        if (!placed)
            throw InitError("could not place robot " + std::to_string(i) + " without overlap after " +
                            std::to_string(kPlacementAttemptsPerRobot) + " attempts");
        robots_[i].pose.heading = uniform_angle(rng_);
        robots_[i].state = start_random_walk(config_.controller, dt);
    }

    prepare_buffers();
}

Simulation::Simulation(TrialConfig config, std::vector<RobotRecord> robots, KernelBackend backend)
    : config_(std::move(config)), backend_(backend), rng_(config_.seed), robots_(std::move(robots)) {
    validate(config_);
    if (robots_.size() != static_cast<std::size_t>(config_.swarm_size))
        throw ConfigError("swarm_size does not match the number of robots supplied");
    prepare_buffers();
}

void Simulation::prepare_buffers() {
    const double dt = config_.tick_dt;
    total_ticks_ = ticks_for(config_.duration, dt);
    ticks_per_update_ = ticks_for(config_.controller.fsm_update_period, dt);
    ticks_per_sample_ = config_.occupancy_interval > 0.0 ? ticks_for(config_.occupancy_interval, dt) : 0;
    leave_draws_.assign(robots_.size(), 0);
    scene_.resize(robots_.size());
    sensors_.resize(robots_.size());
    current_.resize(robots_.size());
    proposed_.resize(robots_.size());
    accepted_.resize(robots_.size());
    if (ticks_per_sample_ > 0) record_occupancy();
}

void Simulation::tick() {
    const std::size_t n = robots_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& r = robots_[i];
        const MacroState macro = macro_state(r.state);
        scene_.positions[i] = r.pose.position;
        scene_.headings[i] = r.pose.heading;
        scene_.broadcasting[i] = is_broadcasting(r, config_.body.broadcast_during_entry);
        scene_.informed[i] = is_informed(r.kind);
        scene_.mobile[i] = macro != MacroState::Stay;
    }
    kernels::sense(backend_, scene_, config_.arena, config_.body, census_filter_for(config_.variant), sensors_);

    const StepTiming timing{config_.tick_dt, (tick_index_ + 1) % ticks_per_update_ == 0};
    if (timing.fsm_boundary) ++fsm_updates_;
    const double step = config_.controller.linear_speed * config_.tick_dt;
    for (std::size_t i = 0; i < n; ++i) {
        auto& r = robots_[i];
        StepResult out = step_controller(r.state, r.kind, config_.variant, sensors_[i], config_.controller, rng_,
                                         timing);
        r.state = std::move(out.state);
        if (out.leave_evaluated) ++leave_draws_[i];
        current_[i] = r.pose.position;
        proposed_[i] = r.pose.position;
        if (const auto* turn = std::get_if<TurnTo>(&out.command)) {
            r.pose.heading = turn->new_heading;
        } else if (std::holds_alternative<Forward>(out.command) && step > 0.0) {
            proposed_[i] = integrate_motion(r.pose, config_.controller.linear_speed, config_.tick_dt).position;
        }
    }

    kernels::resolve_motion(backend_, current_, proposed_, config_.arena, config_.body, accepted_);
    for (std::size_t i = 0; i < n; ++i)
        if (accepted_[i]) robots_[i].pose.position = proposed_[i];

    ++tick_index_;
    if (ticks_per_sample_ > 0 && tick_index_ % ticks_per_sample_ == 0) record_occupancy();
}

void Simulation::record_occupancy() {
    OccupancySample s;
    s.time = time();
    for (const auto& r : robots_) {
        const auto site = site_membership(config_.arena, r.pose.position);
        if (site == Site::Black) ++s.black;
        if (site == Site::White) ++s.white;
        if (macro_state(r.state) == MacroState::Stay) ++s.staying;
    }
    occupancy_.push_back(s);
}

TrialResult Simulation::result() const {
    TrialResult out;
    out.per_robot_final.reserve(robots_.size());
    for (const auto& r : robots_) {
        const auto site = site_membership(config_.arena, r.pose.position);
        if (site == Site::Black)
            ++out.robots_on_black;
        else if (site == Site::White)
            ++out.robots_on_white;
        else
            ++out.robots_elsewhere;
        out.per_robot_final.push_back({r.kind, macro_state(r.state), site});
    }
    out.occupancy = occupancy_;
    return out;
}

TrialResult run_trial(const TrialConfig& config, const RunOptions& options) {
    Simulation sim(config, options.backend);
    if (options.on_tick) options.on_tick(sim);
    while (!sim.finished()) {
        sim.tick();
        if (options.on_tick) options.on_tick(sim);
    }
    return sim.result();
}

TrajectoryWriter::TrajectoryWriter(std::ostream& out, double interval) : out_(&out), interval_(interval) {
    *out_ << "robot,t,x,y,state\n";
}

void TrajectoryWriter::operator()(const Simulation& sim) {
    if (ticks_per_row_ == 0) ticks_per_row_ = std::max(1L, std::lround(interval_ / sim.config().tick_dt));
    if (sim.tick_index() % ticks_per_row_ != 0) return;
    const auto robots = sim.robots();
    char line[128];
    for (std::size_t i = 0; i < robots.size(); ++i) {
        const auto& r = robots[i];
        std::snprintf(line, sizeof line, "%zu,%.1f,%.6f,%.6f,%s\n", i, sim.time(), r.pose.position.x,
                      r.pose.position.y, std::string(to_string(macro_state(r.state))).c_str());
        *out_ << line;
    }
}

}  // namespace aggsim
