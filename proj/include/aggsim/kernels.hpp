#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aggsim/arena.hpp"
#include "aggsim/controller.hpp"
#include "aggsim/robot.hpp"

namespace aggsim {

/// Start-of-tick snapshot in structure-of-arrays form. Every per-tick kernel reads
/// only from a snapshot, so results do not depend on robot iteration order.
struct Scene {
    std::vector<Vec2> positions;
    std::vector<double> headings;
    std::vector<std::uint8_t> broadcasting;  // in Stay
    std::vector<std::uint8_t> informed;
    std::vector<std::uint8_t> mobile;  // RW or Leave: the controller reads the proximity flag

    std::size_t size() const { return positions.size(); }
    void resize(std::size_t n);
};

enum class KernelBackend { Serial, Parallel };

namespace kernels {

// Sensors a controller never reads are left at their defaults: `blocked` is only
// computed for mobile robots and `census` only for robots standing on a site.

/// Reference implementation built directly on the robot-module queries.
void sense_serial(const Scene& scene, const ArenaSpec& arena, const BodySpec& body, CensusFilter filter,
                  std::span<Sensors> out);

/// OpenMP implementation; must agree exactly with sense_serial.
void sense_parallel(const Scene& scene, const ArenaSpec& arena, const BodySpec& body, CensusFilter filter,
                    std::span<Sensors> out);

/// Move-cancellation: a proposed position is accepted iff it stays inside the wall
/// and keeps 2*body_radius clearance from every other robot's current and proposed
/// position. Rejected robots stay where they are.
void resolve_motion_serial(std::span<const Vec2> current, std::span<const Vec2> proposed,
                           const ArenaSpec& arena, const BodySpec& body, std::span<std::uint8_t> accepted);

void resolve_motion_parallel(std::span<const Vec2> current, std::span<const Vec2> proposed,
                             const ArenaSpec& arena, const BodySpec& body, std::span<std::uint8_t> accepted);

inline void sense(KernelBackend backend, const Scene& scene, const ArenaSpec& arena, const BodySpec& body,
                  CensusFilter filter, std::span<Sensors> out) {
    if (backend == KernelBackend::Serial)
        sense_serial(scene, arena, body, filter, out);
    else
        sense_parallel(scene, arena, body, filter, out);
}

inline void resolve_motion(KernelBackend backend, std::span<const Vec2> current, std::span<const Vec2> proposed,
                           const ArenaSpec& arena, const BodySpec& body, std::span<std::uint8_t> accepted) {
    if (backend == KernelBackend::Serial)
        resolve_motion_serial(current, proposed, arena, body, accepted);
    else
        resolve_motion_parallel(current, proposed, arena, body, accepted);
}

}  // namespace kernels
}  // namespace aggsim
