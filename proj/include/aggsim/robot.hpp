#pragma once

#include <span>
#include <string_view>

#include "aggsim/arena.hpp"
#include "aggsim/geometry.hpp"

namespace aggsim {

enum class RobotKind { NonInformed, InformedBlack, InformedWhite };

std::string_view to_string(RobotKind kind);

constexpr bool is_informed(RobotKind kind) { return kind != RobotKind::NonInformed; }

/// Ground color an informed robot is willing to rest on.
constexpr GroundColor preferred_color(RobotKind kind) {
    switch (kind) {
        case RobotKind::InformedBlack: return GroundColor::Black;
        case RobotKind::InformedWhite: return GroundColor::White;
        case RobotKind::NonInformed: break;
    }
    return GroundColor::Grey;
}

struct RobotPose {
    Vec2 position;
    double heading = 0.0;  // [-pi, pi)
};

struct BodySpec {
    double body_radius = 0.085;
    double proximity_range = 0.1;
    double comm_range = 0.8;
    // Robots signal once they rest, i.e. after the entry leg; set true to also signal during it.
    bool broadcast_during_entry = false;
};

/// Which broadcasters a census counts: informed ones only, or every resting robot.
enum class CensusFilter { RestingInformedOnly, RestingAny };

/// Straight-line advance along the heading. Wall and robot contacts are the engine's concern.
RobotPose integrate_motion(const RobotPose& pose, double linear_speed, double dt);

/// Point proximity_range ahead of the robot center.
inline Vec2 proximity_probe(const RobotPose& pose, const BodySpec& body) {
    return pose.position + body.proximity_range * unit_vector(pose.heading);
}

/// True when the wall lies within proximity_range of the body edge along the heading.
bool wall_ahead(const RobotPose& pose, const ArenaSpec& arena, const BodySpec& body);

/// Forward-looking obstacle test: the wall ahead, or another robot center closer than
/// 2*body_radius + proximity_range to the probe point.
bool proximity_blocked(const RobotPose& self, std::span<const RobotPose> others,
                       const ArenaSpec& arena, const BodySpec& body);

}  // namespace aggsim
