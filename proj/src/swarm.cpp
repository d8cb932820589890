#include "aggsim/swarm.hpp"

namespace aggsim {

int neighbor_census(std::size_t self, std::span<const RobotRecord> all, CensusFilter filter, double comm_range,
                    bool during_entry) {
    int count = 0;
    const Vec2 here = all[self].pose.position;
    for (std::size_t j = 0; j < all.size(); ++j) {
        if (j == self || !is_broadcasting(all[j], during_entry)) continue;
        if (filter == CensusFilter::RestingInformedOnly && !is_informed(all[j].kind)) continue;
        if (distance(here, all[j].pose.position) < comm_range) ++count;
    }
    return count;
}

}  // namespace aggsim
