#include <doctest.h>

#include <cmath>
#include <numbers>

#include "aggsim/arena.hpp"
#include "aggsim/errors.hpp"
#include "aggsim/rng.hpp"

using namespace aggsim;

TEST_CASE("arena presets") {
    const ArenaSpec small = make_arena(50);
    CHECK(small.arena_diameter == 12.9);
    CHECK(small.site_diameter == 2.8);
    CHECK(small.site_black_center.x == doctest::Approx(-3.225));
    CHECK(small.site_black_center.y == 0.0);
    CHECK(norm(small.site_black_center) == doctest::Approx(12.9 / 4));
    CHECK(small.site_white_center.x == doctest::Approx(3.225));

    const ArenaSpec large = make_arena(100);
    CHECK(large.arena_diameter == 19.2);
    CHECK(large.site_diameter == 4.0);
    CHECK(large.site_white_center.x == doctest::Approx(4.8));

    CHECK_THROWS_AS(make_arena(75), ConfigError);
    CHECK_NOTHROW(make_arena(20.0, 3.0));
}

TEST_CASE("explicit diameters must keep sites inside and apart") {
    CHECK_THROWS_AS(make_arena(10.0, 5.0), ConfigError);
    CHECK_THROWS_AS(make_arena(10.0, 6.0), ConfigError);
    CHECK_THROWS_AS(make_arena(-1.0, 1.0), ConfigError);
    CHECK_THROWS_AS(make_arena(10.0, 0.0), ConfigError);
}

TEST_CASE("ground color readings") {
    const ArenaSpec arena = make_arena(50);
    CHECK(ground_color(arena, arena.site_black_center) == GroundColor::Black);
    CHECK(ground_reading(ground_color(arena, arena.site_black_center)) == 0.0);
    CHECK(ground_color(arena, {0.0, 0.0}) == GroundColor::Grey);
    CHECK(ground_reading(GroundColor::Grey) == 0.5);
    CHECK(ground_color(arena, arena.site_white_center) == GroundColor::White);
    CHECK(ground_reading(GroundColor::White) == 1.0);
}

TEST_CASE("site membership uses the strict interior") {
    const ArenaSpec arena = make_arena(50);
    const double r = arena.site_radius();
    CHECK(site_membership(arena, arena.site_black_center + Vec2{0.5 * r, 0.0}) == Site::Black);
    CHECK_FALSE(site_membership(arena, {0.0, 1.0}).has_value());
    // Exactly representable boundary point: center.y = 0 and r = 1.4 along y.
    CHECK_FALSE(site_membership(arena, arena.site_black_center + Vec2{0.0, r}).has_value());
    CHECK(ground_color(arena, arena.site_black_center + Vec2{0.0, r}) == GroundColor::Grey);
    CHECK(site_membership(arena, arena.site_black_center + Vec2{0.0, std::nextafter(r, 0.0)}) == Site::Black);
}

TEST_CASE("membership agrees with ground color everywhere") {
    Rng rng(7);
    for (int n : {50, 100}) {
        const ArenaSpec arena = make_arena(n);
        for (int i = 0; i < 20000; ++i) {
            const double rr = arena.arena_radius() * std::sqrt(uniform01(rng));
            const double phi = 2.0 * std::numbers::pi * uniform01(rng);
            const Vec2 p{rr * std::cos(phi), rr * std::sin(phi)};
            const auto site = site_membership(arena, p);
            const GroundColor g = ground_color(arena, p);
            CHECK((site == Site::Black) == (g == GroundColor::Black));
            CHECK((site == Site::White) == (g == GroundColor::White));
        }
    }
}

TEST_CASE("preset sites are separated and inside the wall") {
    for (int n : {50, 100}) {
        const ArenaSpec a = make_arena(n);
        CHECK(distance(a.site_black_center, a.site_white_center) == doctest::Approx(a.arena_radius()));
        CHECK(distance(a.site_black_center, a.site_white_center) > a.site_diameter);
        CHECK(norm(a.site_white_center) + a.site_radius() < a.arena_radius());
    }
}

// The arena presets give 0.3826 robots/m^2 at N = 50 and 0.3454 at N = 100,
// a 10.8% gap, so the constant-density property only holds loosely.
TEST_CASE("presets keep swarm density within 1%" * doctest::should_fail()) {
    const auto density = [](int n) {
        const ArenaSpec a = make_arena(n);
        return n / (std::numbers::pi * a.arena_radius() * a.arena_radius());
    };
    CHECK(density(50) == doctest::Approx(density(100)).epsilon(0.01));
}

TEST_CASE("presets keep site area per robot within 3%") {
    const auto per_robot = [](int n) {
        const ArenaSpec a = make_arena(n);
        return std::numbers::pi * a.site_radius() * a.site_radius() / n;
    };
    CHECK(per_robot(50) == doctest::Approx(per_robot(100)).epsilon(0.03));
}
