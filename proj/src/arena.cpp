#include "aggsim/arena.hpp"

#include <string>

#include "aggsim/errors.hpp"

namespace aggsim {

std::string_view to_string(Site s) { return s == Site::Black ? "black" : "white"; }

ArenaSpec make_arena(int swarm_size) {
    switch (swarm_size) {
        case 50: return make_arena(12.9, 2.8);
        case 100: return make_arena(19.2, 4.0);
        default:
            throw ConfigError("arena_diameter: no preset for swarm_size " + std::to_string(swarm_size) +
                              "; set arena_diameter and site_diameter explicitly");
    }
}

ArenaSpec make_arena(double arena_diameter, double site_diameter) {
    if (!(arena_diameter > 0.0)) throw ConfigError("arena_diameter must be positive");
    if (!(site_diameter > 0.0)) throw ConfigError("site_diameter must be positive");
    // Sites sit halfway between center and wall, so both containment and
    // separation reduce to site_radius < arena_radius / 2.
    if (!(site_diameter < 0.5 * arena_diameter))
        throw ConfigError("site_diameter must be smaller than arena_diameter / 2");

    ArenaSpec arena;
    arena.arena_diameter = arena_diameter;
    arena.site_diameter = site_diameter;
    const double offset = 0.5 * arena.arena_radius();
    arena.site_black_center = {-offset, 0.0};
    arena.site_white_center = {offset, 0.0};
    return arena;
}

std::optional<Site> site_membership(const ArenaSpec& arena, Vec2 point) {
    const double r2 = arena.site_radius() * arena.site_radius();
    if (squared_distance(point, arena.site_black_center) < r2) return Site::Black;
    if (squared_distance(point, arena.site_white_center) < r2) return Site::White;
    return std::nullopt;
}

GroundColor ground_color(const ArenaSpec& arena, Vec2 point) {
    const auto site = site_membership(arena, point);
    return site ? site_color(*site) : GroundColor::Grey;
}

}  // namespace aggsim
