#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "aggsim/kernels.hpp"
#include "aggsim/rng.hpp"

using namespace aggsim;

namespace {

// Robots packed around a site so that censuses, proximity hits and contacts all occur.
Scene crowded_scene(Rng& rng, std::size_t n, const ArenaSpec& arena) {
    Scene scene;
    scene.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 center = (i % 2) ? arena.site_black_center : arena.site_white_center;
        const double r = 1.6 * arena.site_radius() * std::sqrt(uniform01(rng));
        const double phi = 2.0 * std::numbers::pi * uniform01(rng);
        scene.positions[i] = center + Vec2{r * std::cos(phi), r * std::sin(phi)};
        if (i % 17 == 0) scene.positions[i] = {0.97 * arena.arena_radius(), 0.0};
        scene.headings[i] = uniform_angle(rng);
        scene.broadcasting[i] = uniform01(rng) < 0.5;
        scene.informed[i] = uniform01(rng) < 0.3;
        scene.mobile[i] = !scene.broadcasting[i];
    }
    return scene;
}

bool same(const Sensors& a, const Sensors& b) {
    return a.ground == b.ground && a.blocked == b.blocked && a.census == b.census && a.heading == b.heading;
}

}  // namespace

TEST_CASE("parallel sensing matches the serial reference") {
    Rng rng(31);
    const ArenaSpec arena = make_arena(50);
    const BodySpec body;
    int blocked = 0;
    int counted = 0;
    for (std::size_t n : {1u, 10u, 50u, 200u}) {
        for (int rep = 0; rep < 20; ++rep) {
            const Scene scene = crowded_scene(rng, n, arena);
            for (CensusFilter filter : {CensusFilter::RestingAny, CensusFilter::RestingInformedOnly}) {
                std::vector<Sensors> serial(n), parallel(n);
                kernels::sense_serial(scene, arena, body, filter, serial);
                kernels::sense_parallel(scene, arena, body, filter, parallel);
                for (std::size_t i = 0; i < n; ++i) {
                    CHECK(same(serial[i], parallel[i]));
                    blocked += serial[i].blocked;
                    counted += serial[i].census > 0;
                }
            }
        }
    }
    // The scenes exercise both branches.
    CHECK(blocked > 100);
    CHECK(counted > 100);
}

TEST_CASE("sensors a controller cannot read are left at defaults") {
    const ArenaSpec arena = make_arena(50);
    Scene scene;
    scene.resize(2);
    scene.positions = {{0.0, 0.0}, {0.2, 0.0}};
    scene.headings = {0.0, std::numbers::pi};
    scene.broadcasting = {1, 1};
    scene.informed = {0, 0};
    scene.mobile = {0, 0};
    std::vector<Sensors> out(2);
    kernels::sense_parallel(scene, arena, BodySpec{}, CensusFilter::RestingAny, out);
    CHECK_FALSE(out[0].blocked);  // resting robots do not read proximity
    CHECK(out[0].census == 0);    // grey floor: census unused
}

TEST_CASE("parallel motion resolution matches the serial reference") {
    Rng rng(32);
    const ArenaSpec arena = make_arena(50);
    const BodySpec body;
    int rejected = 0;
    for (std::size_t n : {2u, 30u, 120u}) {
        for (int rep = 0; rep < 30; ++rep) {
            const Scene scene = crowded_scene(rng, n, arena);
            std::vector<Vec2> proposed(scene.positions);
            for (std::size_t i = 0; i < n; ++i)
                if (uniform01(rng) < 0.7) proposed[i] = proposed[i] + 0.05 * unit_vector(scene.headings[i]);
            std::vector<std::uint8_t> a(n), b(n);
            kernels::resolve_motion_serial(scene.positions, proposed, arena, body, a);
            kernels::resolve_motion_parallel(scene.positions, proposed, arena, body, b);
            CHECK(a == b);
            for (auto v : a) rejected += v == 0;
        }
    }
    CHECK(rejected > 50);
}

TEST_CASE("head-on movers are both cancelled") {
    const ArenaSpec arena = make_arena(50);
    const BodySpec body;
    // 0.18 apart, each stepping 0.01 toward the other: against snapshots both moves
    // look legal, against each other's proposals they collide.
    const std::vector<Vec2> current{{0.0, 0.0}, {0.18, 0.0}};
    const std::vector<Vec2> proposed{{0.01, 0.0}, {0.17, 0.0}};
    for (auto backend : {KernelBackend::Serial, KernelBackend::Parallel}) {
        std::vector<std::uint8_t> ok(2);
        kernels::resolve_motion(backend, current, proposed, arena, body, ok);
        CHECK(ok[0] == 0);
        CHECK(ok[1] == 0);
    }
}

TEST_CASE("moves through the wall are cancelled") {
    const ArenaSpec arena = make_arena(50);
    const BodySpec body;
    const double edge = arena.arena_radius() - body.body_radius;
    const std::vector<Vec2> current{{edge - 0.005, 0.0}};
    const std::vector<Vec2> proposed{{edge + 0.005, 0.0}};
    std::vector<std::uint8_t> ok(1);
    kernels::resolve_motion_parallel(current, proposed, arena, body, ok);
    CHECK(ok[0] == 0);
}
