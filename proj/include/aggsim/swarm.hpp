#pragma once

#include <cstddef>
#include <span>

#include "aggsim/controller.hpp"
#include "aggsim/robot.hpp"

namespace aggsim {

struct RobotRecord {
    RobotPose pose;
    RobotKind kind = RobotKind::NonInformed;
    ControllerState state = RandomWalkState{};
};

/// Robots signal their presence while resting in Stay; the entry leg counts only if `during_entry`.
inline bool is_broadcasting(const RobotRecord& r, bool during_entry = false) {
    const auto* stay = std::get_if<StayState>(&r.state);
    return stay && (during_entry || stay->entry_ticks_left == 0);
}

/// Broadcasting robots other than `self` strictly within comm_range that pass the filter.
int neighbor_census(std::size_t self, std::span<const RobotRecord> all, CensusFilter filter, double comm_range,
                    bool during_entry = false);

}  // namespace aggsim
