#pragma once

#include <string_view>
#include <variant>

#include "aggsim/arena.hpp"
#include "aggsim/rng.hpp"
#include "aggsim/robot.hpp"

namespace aggsim {

enum class Variant { Baseline, Simplified };

std::string_view to_string(Variant v);

/// Census filter each controller variant reads.
constexpr CensusFilter census_filter_for(Variant v) {
    return v == Variant::Baseline ? CensusFilter::RestingInformedOnly : CensusFilter::RestingAny;
}

struct ControllerParams {
    double a = 2.0;       // baseline leave exponent scale
    double k = 18.0;      // baseline leave offset
    double alpha = 0.5;   // simplified leave probability with nobody around
    double beta = 2.25;   // simplified decay per neighbor
    double cauchy_rho = 0.5;
    double straight_duration = 5.0;       // s
    double entry_forward_duration = 10.0; // s
    double fsm_update_period = 2.0;       // s
    double linear_speed = 0.1;            // m/s
};

/// Throws ConfigError naming the first out-of-range field.
void validate(const ControllerParams& params);

// Timers are kept in whole ticks; durations are validated to be tick multiples.
struct RandomWalkState {
    long straight_ticks_left = 0;
    bool avoiding = false;
};

struct StayState {
    long entry_ticks_left = 0;
    /// Informed-robot census at the join instant (baseline, non-informed only); -1 when unset.
    int joined_census_x = -1;
};

struct LeaveState {};

using ControllerState = std::variant<RandomWalkState, StayState, LeaveState>;

enum class MacroState { RandomWalk, Stay, Leave };

std::string_view to_string(MacroState s);

inline MacroState macro_state(const ControllerState& state) {
    return static_cast<MacroState>(state.index());
}

struct Forward {};
struct TurnTo {
    double new_heading = 0.0;
};
struct Halt {};

using MotorCommand = std::variant<Forward, TurnTo, Halt>;

struct Sensors {
    GroundColor ground = GroundColor::Grey;
    bool blocked = false;
    int census = 0;
    double heading = 0.0;
};

struct StepTiming {
    double dt = 0.1;
    /// Tick lands on an FSM update boundary; probabilistic leave draws happen only here.
    bool fsm_boundary = false;
};

struct StepResult {
    ControllerState state;
    MotorCommand command;
    /// A leave draw was consumed this tick.
    bool leave_evaluated = false;
};

/// Fresh random-walk state with a full straight leg ahead.
RandomWalkState start_random_walk(const ControllerParams& params, double dt);

/// Wrapped Cauchy density. Throws std::domain_error unless 0 <= rho < 1.
double wrapped_cauchy_pdf(double theta, double mu, double rho);

/// One wrapped-Cauchy draw in [-pi, pi), by inverse transform of the wrapped tangent map.
double sample_turn_angle(double mu, double rho, Rng& rng);

/// Leave probability from the baseline controller: 1 with no informed neighbors,
/// else exp(-a (k - |n - x|)) clamped to [0, 1].
double p_leave_baseline(int n, int x, double a, double k);

/// Memoryless leave probability alpha * exp(-beta n).
double p_leave_simplified(int n, double alpha, double beta);

/// One controller update. Pure apart from the draws it takes from rng.
StepResult step_controller(const ControllerState& state, RobotKind kind, Variant variant,
                           const Sensors& sensors, const ControllerParams& params, Rng& rng,
                           const StepTiming& timing);

}  // namespace aggsim
