#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "aggsim/engine.hpp"
#include "aggsim/errors.hpp"

using namespace aggsim;

namespace {

TrialConfig short_config(int n, double rho_i, double rho_b, Variant v, std::uint64_t seed, double duration) {
    TrialConfig c;
    c.swarm_size = n;
    c.arena = make_arena(n == 100 ? 100 : 50);
    c.rho_informed = rho_i;
    c.rho_black = rho_b;
    c.variant = v;
    c.seed = seed;
    c.duration = duration;
    return c;
}

RobotRecord robot(Vec2 p, double heading, RobotKind kind, ControllerState state) {
    RobotRecord r;
    r.pose = {p, heading};
    r.kind = kind;
    r.state = state;
    return r;
}

double min_separation(std::span<const RobotRecord> robots) {
    double best = 1e9;
    for (std::size_t i = 0; i < robots.size(); ++i)
        for (std::size_t j = i + 1; j < robots.size(); ++j)
            best = std::min(best, distance(robots[i].pose.position, robots[j].pose.position));
    return best;
}

}  // namespace

TEST_CASE("kind counts follow the rounding rule") {
    const KindCounts a = kind_counts(100, 0.3, 0.7);
    CHECK(a.informed_black == 21);
    CHECK(a.informed_white == 9);
    CHECK(a.non_informed == 70);

    const KindCounts none = kind_counts(100, 0.0, 0.7);
    CHECK(none.informed_black + none.informed_white == 0);
    CHECK(none.non_informed == 100);

    const KindCounts half = kind_counts(50, 0.3, 0.5);
    CHECK(half.informed_black == 8);
    CHECK(half.informed_white == 7);
    CHECK(half.non_informed == 35);
}

TEST_CASE("initialisation places a valid, reproducible swarm") {
    const TrialConfig c = short_config(100, 0.3, 0.7, Variant::Simplified, 9, 10);
    const Simulation a(c);
    const Simulation b(c);
    int black = 0, white = 0;
    for (std::size_t i = 0; i < a.robots().size(); ++i) {
        const auto& r = a.robots()[i];
        CHECK(r.pose.position == b.robots()[i].pose.position);
        CHECK(r.pose.heading == b.robots()[i].pose.heading);
        CHECK(macro_state(r.state) == MacroState::RandomWalk);
        CHECK(norm(r.pose.position) <= c.arena.arena_radius() - c.body.body_radius);
        CHECK(r.pose.heading >= -std::numbers::pi);
        CHECK(r.pose.heading < std::numbers::pi);
        black += r.kind == RobotKind::InformedBlack;
        white += r.kind == RobotKind::InformedWhite;
    }
    CHECK(black == 21);
    CHECK(white == 9);
    CHECK(min_separation(a.robots()) > 2 * c.body.body_radius);

    TrialConfig other = c;
    other.seed = 10;
    CHECK(Simulation(other).robots()[0].pose.position != a.robots()[0].pose.position);
}

TEST_CASE("trial config validation names the field") {
    TrialConfig c = short_config(50, 1.2, 0.5, Variant::Simplified, 1, 10);
    try {
        validate(c);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()) == "rho_informed out of [0,1]");
    }
    c.rho_informed = 0.3;
    c.tick_dt = 0.3;
    CHECK_THROWS_WITH_AS(validate(c), "tick_dt must divide fsm_update_period", ConfigError);
    c.tick_dt = 0.1;
    c.rho_black = -0.1;
    CHECK_THROWS_WITH_AS(validate(c), "rho_black out of [0,1]", ConfigError);
}

TEST_CASE("overcrowded custom arenas fail to initialise") {
    TrialConfig c = short_config(50, 0.0, 0.5, Variant::Simplified, 1, 10);
    c.swarm_size = 400;
    c.arena = make_arena(3.0, 1.0);
    CHECK_THROWS_AS(Simulation{c}, InitError);
}

TEST_CASE("tick examples") {
    const ArenaSpec arena = make_arena(50);
    TrialConfig c = short_config(50, 0.0, 0.5, Variant::Simplified, 1, 10);

    SUBCASE("halted robots do not move") {
        c.swarm_size = 2;
        std::vector<RobotRecord> robots{
            robot(arena.site_black_center, 0.4, RobotKind::InformedBlack, StayState{0, -1}),
            robot(arena.site_white_center, -1.0, RobotKind::InformedWhite, StayState{0, -1}),
        };
        Simulation sim(c, robots);
        for (int i = 0; i < 50; ++i) sim.tick();
        for (std::size_t i = 0; i < 2; ++i) {
            CHECK(sim.robots()[i].pose.position == robots[i].pose.position);
            CHECK(sim.robots()[i].pose.heading == robots[i].pose.heading);
        }
    }
    SUBCASE("a lone walker advances v*dt per tick") {
        c.swarm_size = 1;
        Simulation sim(c, {robot({0, 0}, 0.0, RobotKind::NonInformed, start_random_walk(c.controller, c.tick_dt))});
        sim.tick();
        CHECK(sim.robots()[0].pose.position.x == doctest::Approx(0.01));
        CHECK(sim.robots()[0].pose.position.y == 0.0);
        CHECK(sim.time() == doctest::Approx(0.1));
    }
    SUBCASE("robots driven into each other never overlap") {
        c.swarm_size = 2;
        const Vec2 s = arena.site_black_center;
        Simulation sim(c, {
            robot(s, 0.0, RobotKind::NonInformed, StayState{50, -1}),
            robot(s + Vec2{0.18, 0.0}, std::numbers::pi, RobotKind::NonInformed, StayState{50, -1}),
        });
        for (int i = 0; i < 20; ++i) {
            sim.tick();
            CHECK(min_separation(sim.robots()) >= 2 * c.body.body_radius - 1e-9);
        }
        CHECK(sim.robots()[0].pose.position == s);
    }
}

TEST_CASE("swarm invariants hold every tick of random micro-simulations") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        for (Variant v : {Variant::Baseline, Variant::Simplified}) {
            TrialConfig c = short_config(10, 0.4, 0.5, v, seed, 100);
            c.arena = make_arena(4.0, 1.6);
            std::vector<bool> informed_staying(10, false), entered(10, false);
            RunOptions options;
            options.on_tick = [&](const Simulation& sim) {
                const auto robots = sim.robots();
                REQUIRE(robots.size() == 10u);
                CHECK(min_separation(robots) >= 2 * c.body.body_radius - 1e-9);
                for (std::size_t i = 0; i < robots.size(); ++i) {
                    const auto& r = robots[i];
                    CHECK(norm(r.pose.position) <= c.arena.arena_radius() - c.body.body_radius + 1e-12);
                    if (!is_informed(r.kind)) continue;
                    const bool staying = std::holds_alternative<StayState>(r.state);
                    // Once an informed robot has halted on its site it never leaves.
                    if (informed_staying[i]) CHECK(staying);
                    const auto* stay = std::get_if<StayState>(&r.state);
                    const bool halted = stay && stay->entry_ticks_left == 0;
                    informed_staying[i] = halted && (informed_staying[i] || entered[i]);
                    entered[i] = halted;
                    if (staying) CHECK(ground_color(c.arena, r.pose.position) != site_color(r.kind == RobotKind::InformedBlack ? Site::White : Site::Black));
                }
            };
            run_trial(c, options);
        }
    }
}

TEST_CASE("baseline without informed robots never rests") {
    TrialConfig c = short_config(50, 0.0, 0.5, Variant::Baseline, 4, 300);
    c.occupancy_interval = 10;
    long stays = 0;
    RunOptions options;
    options.on_tick = [&](const Simulation& sim) {
        for (const auto& r : sim.robots()) stays += macro_state(r.state) == MacroState::Stay;
    };
    const TrialResult result = run_trial(c, options);
    CHECK(stays == 0);
    for (const auto& s : result.occupancy) CHECK(s.staying == 0);
}

TEST_CASE("FSM boundaries and leave draws are counted per period") {
    TrialConfig c = short_config(50, 0.2, 0.5, Variant::Simplified, 3, 301);
    Simulation sim(c);
    while (!sim.finished()) sim.tick();
    CHECK(sim.tick_index() == 3010);
    CHECK(sim.fsm_updates() == 150);
    for (long draws : sim.leave_draws()) CHECK(draws <= 150);
    CHECK(*std::max_element(sim.leave_draws().begin(), sim.leave_draws().end()) > 0);
}

TEST_CASE("results are a pure function of the config") {
    for (Variant v : {Variant::Baseline, Variant::Simplified}) {
        TrialConfig c = short_config(50, 0.3, 0.7, v, 12, 400);
        c.occupancy_interval = 20;
        const TrialResult a = run_trial(c);
        const TrialResult b = run_trial(c);
        RunOptions serial;
        serial.backend = KernelBackend::Serial;
        const TrialResult s = run_trial(c, serial);
        for (const TrialResult* other : {&b, &s}) {
            CHECK(a.robots_on_black == other->robots_on_black);
            CHECK(a.robots_on_white == other->robots_on_white);
            REQUIRE(a.occupancy.size() == other->occupancy.size());
            for (std::size_t i = 0; i < a.occupancy.size(); ++i) {
                CHECK(a.occupancy[i].black == other->occupancy[i].black);
                CHECK(a.occupancy[i].white == other->occupancy[i].white);
                CHECK(a.occupancy[i].staying == other->occupancy[i].staying);
            }
            for (std::size_t i = 0; i < a.per_robot_final.size(); ++i)
                CHECK(a.per_robot_final[i].state == other->per_robot_final[i].state);
        }
        CHECK(a.total() == 50);
        CHECK(a.occupancy.size() == 21u);
    }
}

TEST_CASE("trajectory writer emits one row per robot per interval") {
    TrialConfig c = short_config(50, 0.0, 0.5, Variant::Simplified, 2, 3);
    std::ostringstream out;
    TrajectoryWriter writer(out, 1.0);
    RunOptions options;
    options.on_tick = [&](const Simulation& sim) { writer(sim); };
    run_trial(c, options);
    const std::string text = out.str();
    CHECK(text.rfind("robot,t,x,y,state\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 50 * 4);  // t = 0, 1, 2, 3
}
