#pragma once

#include <optional>
#include <string_view>

#include "aggsim/geometry.hpp"

namespace aggsim {

enum class Site { Black, White };

/// Floor color under a point. The numeric reading is what the ground sensor returns.
enum class GroundColor { Black, Grey, White };

constexpr double ground_reading(GroundColor c) {
    switch (c) {
        case GroundColor::Black: return 0.0;
        case GroundColor::Grey: return 0.5;
        case GroundColor::White: return 1.0;
    }
    return 0.5;
}

constexpr GroundColor site_color(Site s) {
    return s == Site::Black ? GroundColor::Black : GroundColor::White;
}

std::string_view to_string(Site s);

/// Circular arena centered on the origin with two circular sites on the x-axis,
/// black at -radius/2 and white at +radius/2.
struct ArenaSpec {
    double arena_diameter = 0.0;
    double site_diameter = 0.0;
    Vec2 site_black_center;
    Vec2 site_white_center;

    double arena_radius() const { return 0.5 * arena_diameter; }
    double site_radius() const { return 0.5 * site_diameter; }
    Vec2 site_center(Site s) const { return s == Site::Black ? site_black_center : site_white_center; }
};

/// Preset arena for the canonical swarm sizes (50 and 100). Throws ConfigError otherwise.
ArenaSpec make_arena(int swarm_size);

/// Arena with explicit diameters. Throws ConfigError unless both sites fit inside
/// the arena without overlapping.
ArenaSpec make_arena(double arena_diameter, double site_diameter);

GroundColor ground_color(const ArenaSpec& arena, Vec2 point);

/// Site whose circle strictly contains the point; points on a boundary are outside.
std::optional<Site> site_membership(const ArenaSpec& arena, Vec2 point);

}  // namespace aggsim
