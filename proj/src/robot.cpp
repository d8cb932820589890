#include "aggsim/robot.hpp"

namespace aggsim {

std::string_view to_string(RobotKind kind) {
    switch (kind) {
        case RobotKind::NonInformed: return "non_informed";
        case RobotKind::InformedBlack: return "informed_black";
        case RobotKind::InformedWhite: return "informed_white";
    }
    return "unknown";
}

RobotPose integrate_motion(const RobotPose& pose, double linear_speed, double dt) {
    return {pose.position + (linear_speed * dt) * unit_vector(pose.heading), pose.heading};
}

bool wall_ahead(const RobotPose& pose, const ArenaSpec& arena, const BodySpec& body) {
    // |p + s*h|^2 is convex in s and below R^2 at s = 0, so the edge-to-wall gap is
    // under proximity_range exactly when this look-ahead point is past the wall.
    const Vec2 look = pose.position + (body.body_radius + body.proximity_range) * unit_vector(pose.heading);
    return squared_norm(look) > arena.arena_radius() * arena.arena_radius();
}

bool proximity_blocked(const RobotPose& self, std::span<const RobotPose> others,
                       const ArenaSpec& arena, const BodySpec& body) {
    if (wall_ahead(self, arena, body)) return true;
    const Vec2 probe = proximity_probe(self, body);
    const double reach = 2.0 * body.body_radius + body.proximity_range;
    for (const auto& other : others) {
        if (squared_distance(probe, other.position) < reach * reach) return true;
    }
    return false;
}

}  // namespace aggsim
