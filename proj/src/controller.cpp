#include "aggsim/controller.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

#include "aggsim/errors.hpp"

namespace aggsim {

std::string_view to_string(Variant v) { return v == Variant::Baseline ? "baseline" : "simplified"; }

std::string_view to_string(MacroState s) {
    switch (s) {
        case MacroState::RandomWalk: return "RW";
        case MacroState::Stay: return "S";
        case MacroState::Leave: return "L";
    }
    return "?";
}

void validate(const ControllerParams& p) {
    if (!(p.cauchy_rho > 0.0 && p.cauchy_rho < 1.0)) throw ConfigError("cauchy_rho out of (0,1)");
    if (!(p.alpha > 0.0 && p.alpha <= 1.0)) throw ConfigError("alpha out of (0,1]");
    if (!(p.beta > 0.0)) throw ConfigError("beta must be positive");
    if (!(p.a > 0.0)) throw ConfigError("a must be positive");
    if (!(p.k >= 0.0)) throw ConfigError("k must be non-negative");
    if (!(p.straight_duration > 0.0)) throw ConfigError("straight_duration must be positive");
    if (!(p.entry_forward_duration > 0.0)) throw ConfigError("entry_forward_duration must be positive");
    if (!(p.fsm_update_period > 0.0)) throw ConfigError("fsm_update_period must be positive");
    if (!(p.linear_speed >= 0.0)) throw ConfigError("linear_speed must be non-negative");
}

namespace {

long ticks_for(double duration, double dt) { return std::lround(duration / dt); }

bool joins_site(RobotKind kind, Variant variant, const Sensors& sensors) {
    if (sensors.ground == GroundColor::Grey) return false;
    if (is_informed(kind)) return sensors.ground == preferred_color(kind);
    if (variant == Variant::Simplified) return true;
    return sensors.census >= 1;
}

StepResult step_random_walk(RandomWalkState rw, RobotKind kind, Variant variant, const Sensors& sensors,
                            const ControllerParams& params, Rng& rng, const StepTiming& timing) {
    if (joins_site(kind, variant, sensors)) {
        StayState stay;
        // The join tick is the first tick of the forward entry leg.
        stay.entry_ticks_left = ticks_for(params.entry_forward_duration, timing.dt) - 1;
        if (variant == Variant::Baseline && !is_informed(kind)) stay.joined_census_x = sensors.census;
        return {stay, Forward{}};
    }
    if (sensors.blocked) {
        rw.avoiding = true;
        return {rw, TurnTo{wrap_angle(sensors.heading + uniform_angle(rng))}};
    }
    if (rw.avoiding) {
        rw = start_random_walk(params, timing.dt);
    }
    if (rw.straight_ticks_left > 0) {
        --rw.straight_ticks_left;
        return {rw, Forward{}};
    }
    rw.straight_ticks_left = ticks_for(params.straight_duration, timing.dt);
    return {rw, TurnTo{wrap_angle(sensors.heading + sample_turn_angle(0.0, params.cauchy_rho, rng))}};
}

StepResult step_stay(StayState stay, RobotKind kind, Variant variant, const Sensors& sensors,
                     const ControllerParams& params, Rng& rng, const StepTiming& timing) {
    if (sensors.ground == GroundColor::Grey) {
        // Carried off the site by the entry leg (its last move included): resting only
        // happens on a site. A halted robot never moves, so this only fires right after entry.
        return step_random_walk(start_random_walk(params, timing.dt), kind, variant, sensors, params, rng,
                                timing);
    }
    if (stay.entry_ticks_left > 0) {
        --stay.entry_ticks_left;
        return {stay, Forward{}};
    }
    if (is_informed(kind) || !timing.fsm_boundary) return {stay, Halt{}};

    const double p = variant == Variant::Baseline
                         ? p_leave_baseline(sensors.census, stay.joined_census_x, params.a, params.k)
                         : p_leave_simplified(sensors.census, params.alpha, params.beta);
    const double u = uniform01(rng);
    if (u < p) return {LeaveState{}, Halt{}, true};
    return {stay, Halt{}, true};
}

StepResult step_leave(RobotKind kind, Variant variant, const Sensors& sensors, const ControllerParams& params,
                      Rng& rng, const StepTiming& timing) {
    if (sensors.ground == GroundColor::Grey) {
        return step_random_walk(start_random_walk(params, timing.dt), kind, variant, sensors, params, rng,
                                timing);
    }
    if (sensors.blocked) return {LeaveState{}, TurnTo{wrap_angle(sensors.heading + uniform_angle(rng))}};
    return {LeaveState{}, Forward{}};
}

}  // namespace

RandomWalkState start_random_walk(const ControllerParams& params, double dt) {
    return {ticks_for(params.straight_duration, dt), false};
}

double wrapped_cauchy_pdf(double theta, double mu, double rho) {
    if (!(rho >= 0.0 && rho < 1.0)) throw std::domain_error("wrapped_cauchy_pdf: rho outside [0, 1)");
    const double rho2 = rho * rho;
    return (1.0 - rho2) / (2.0 * std::numbers::pi * (1.0 + rho2 - 2.0 * rho * std::cos(theta - mu)));
}

double sample_turn_angle(double mu, double rho, Rng& rng) {
    // phi uniform on (-pi, pi) maps to a wrapped Cauchy angle via
    // theta = 2 atan(((1 - rho) / (1 + rho)) tan(phi / 2)).
    const double half_phi = std::numbers::pi * (uniform01(rng) - 0.5);
    const double theta = 2.0 * std::atan((1.0 - rho) / (1.0 + rho) * std::tan(half_phi));
    return wrap_angle(mu + theta);
}

double p_leave_baseline(int n, int x, double a, double k) {
    if (n == 0) return 1.0;
    const double exponent = -a * (k - std::abs(n - x));
    return std::clamp(std::exp(exponent), 0.0, 1.0);
}

double p_leave_simplified(int n, double alpha, double beta) {
    return alpha * std::exp(-beta * n);
}

StepResult step_controller(const ControllerState& state, RobotKind kind, Variant variant,
                           const Sensors& sensors, const ControllerParams& params, Rng& rng,
                           const StepTiming& timing) {
    if (const auto* rw = std::get_if<RandomWalkState>(&state))
        return step_random_walk(*rw, kind, variant, sensors, params, rng, timing);
    if (const auto* stay = std::get_if<StayState>(&state))
        return step_stay(*stay, kind, variant, sensors, params, rng, timing);
    return step_leave(kind, variant, sensors, params, rng, timing);
}

}  // namespace aggsim
