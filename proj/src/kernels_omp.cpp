#include "aggsim/kernels.hpp"

namespace aggsim::kernels {

namespace {
// Below this many robots the fork/join cost outweighs the per-robot work.
constexpr std::size_t kParallelThreshold = 32;
}  // namespace

void sense_parallel(const Scene& scene, const ArenaSpec& arena, const BodySpec& body, CensusFilter filter,
                    std::span<Sensors> out) {
    const std::size_t n = scene.size();

    std::vector<Vec2> broadcasters;
    broadcasters.reserve(n);
    std::vector<std::size_t> broadcaster_ids;
    broadcaster_ids.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (!scene.broadcasting[j]) continue;
        if (filter == CensusFilter::RestingInformedOnly && !scene.informed[j]) continue;
        broadcasters.push_back(scene.positions[j]);
        broadcaster_ids.push_back(j);
    }

    const double comm2 = body.comm_range * body.comm_range;
    const double reach = 2.0 * body.body_radius + body.proximity_range;
    const double reach2 = reach * reach;
    const long count = static_cast<long>(n);

#pragma omp parallel for schedule(static) if (n > kParallelThreshold)
    for (long ii = 0; ii < count; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        const Vec2 here = scene.positions[i];
        Sensors s;
        s.heading = scene.headings[i];
        s.ground = ground_color(arena, here);
        if (scene.mobile[i]) {
            const RobotPose pose{here, scene.headings[i]};
            bool blocked = wall_ahead(pose, arena, body);
            const Vec2 probe = proximity_probe(pose, body);
            for (std::size_t j = 0; !blocked && j < n; ++j)
                blocked = j != i && squared_distance(probe, scene.positions[j]) < reach2;
            s.blocked = blocked;
        }
        if (s.ground != GroundColor::Grey) {
            int census = 0;
            for (std::size_t b = 0; b < broadcasters.size(); ++b)
                census += (broadcaster_ids[b] != i && squared_distance(here, broadcasters[b]) < comm2) ? 1 : 0;
            s.census = census;
        }
        out[i] = s;
    }
}

void resolve_motion_parallel(std::span<const Vec2> current, std::span<const Vec2> proposed,
                             const ArenaSpec& arena, const BodySpec& body, std::span<std::uint8_t> accepted) {
    const std::size_t n = current.size();
    const double wall = arena.arena_radius() - body.body_radius;
    const double wall2 = wall * wall;
    const double contact2 = 4.0 * body.body_radius * body.body_radius;
    const long count = static_cast<long>(n);

#pragma omp parallel for schedule(static) if (n > kParallelThreshold)
    for (long ii = 0; ii < count; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        const Vec2 target = proposed[i];
        if (target == current[i]) {
            accepted[i] = 1;
            continue;
        }
        bool ok = squared_norm(target) <= wall2;
        for (std::size_t j = 0; ok && j < n; ++j) {
            if (j == i) continue;
            ok = squared_distance(target, current[j]) >= contact2 && squared_distance(target, proposed[j]) >= contact2;
        }
        accepted[i] = ok ? 1 : 0;
    }
}

}  // namespace aggsim::kernels
