#include "aggsim/kernels.hpp"

namespace aggsim {

void Scene::resize(std::size_t n) {
    positions.resize(n);
    headings.resize(n);
    broadcasting.resize(n);
    informed.resize(n);
    mobile.resize(n);
}

namespace kernels {

void sense_serial(const Scene& scene, const ArenaSpec& arena, const BodySpec& body, CensusFilter filter,
                  std::span<Sensors> out) {
    const std::size_t n = scene.size();
    std::vector<RobotPose> others;
    others.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Sensors s;
        s.heading = scene.headings[i];
        s.ground = ground_color(arena, scene.positions[i]);
        if (scene.mobile[i]) {
            others.clear();
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) others.push_back({scene.positions[j], scene.headings[j]});
            s.blocked = proximity_blocked({scene.positions[i], scene.headings[i]}, others, arena, body);
        }
        if (s.ground != GroundColor::Grey) {
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || !scene.broadcasting[j]) continue;
                if (filter == CensusFilter::RestingInformedOnly && !scene.informed[j]) continue;
                if (distance(scene.positions[i], scene.positions[j]) < body.comm_range) ++s.census;
            }
        }
        out[i] = s;
    }
}

void resolve_motion_serial(std::span<const Vec2> current, std::span<const Vec2> proposed,
                           const ArenaSpec& arena, const BodySpec& body, std::span<std::uint8_t> accepted) {
    const std::size_t n = current.size();
    const double wall = arena.arena_radius() - body.body_radius;
    const double contact = 2.0 * body.body_radius;
    for (std::size_t i = 0; i < n; ++i) {
        if (proposed[i] == current[i]) {
            accepted[i] = 1;
            continue;
        }
        bool ok = norm(proposed[i]) <= wall;
        for (std::size_t j = 0; ok && j < n; ++j) {
            if (j == i) continue;
            if (distance(proposed[i], current[j]) < contact || distance(proposed[i], proposed[j]) < contact)
                ok = false;
        }
        accepted[i] = ok ? 1 : 0;
    }
}

}  // namespace kernels
}  // namespace aggsim
