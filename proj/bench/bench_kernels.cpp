// Times the serial reference kernels against the OpenMP ones, and a whole trial with each.
// Usage: bench_kernels [iterations]
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>
#include <vector>

#include "aggsim/engine.hpp"
#include "aggsim/kernels.hpp"

using namespace aggsim;

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
double time_ms(int iterations, F&& f) {
    const auto start = Clock::now();
    for (int i = 0; i < iterations; ++i) f();
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count() / iterations;
}

// Robots packed uniformly into the arena, half resting, a fifth informed.
Scene crowded_scene(std::size_t n, const ArenaSpec& arena, std::uint64_t seed) {
    Rng rng(seed);
    Scene scene;
    scene.resize(n);
    const double r = arena.arena_radius() - 0.1;
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 p;
        do p = {(2 * uniform01(rng) - 1) * r, (2 * uniform01(rng) - 1) * r};
        while (norm(p) > r);
        scene.positions[i] = p;
        scene.headings[i] = uniform_angle(rng);
        scene.broadcasting[i] = i % 2 == 0;
        scene.informed[i] = i % 5 == 0;
        scene.mobile[i] = !scene.broadcasting[i];
    }
    return scene;
}

}  // namespace

int main(int argc, char** argv) {
    const int iterations = argc > 1 ? std::atoi(argv[1]) : 2000;
    const BodySpec body;
    std::printf("hardware threads: %u, iterations per kernel: %d\n\n", std::thread::hardware_concurrency(), iterations);
    std::printf("%6s  %12s  %12s  %12s  %12s\n", "robots", "sense ser", "sense omp", "motion ser", "motion omp");

    for (std::size_t n : {50u, 100u, 400u, 1600u}) {
        const ArenaSpec arena = n <= 50 ? make_arena(50) : n <= 100 ? make_arena(100) : make_arena(19.2 * std::sqrt(n / 100.0), 8.0);
        const Scene scene = crowded_scene(n, arena, n);
        std::vector<Sensors> out(n);
        std::vector<Vec2> proposed(scene.positions);
        for (std::size_t i = 0; i < n; ++i)
            if (scene.mobile[i]) proposed[i] = proposed[i] + 0.01 * unit_vector(scene.headings[i]);
        std::vector<std::uint8_t> accepted(n);
        const int reps = std::max(1, iterations * 50 / static_cast<int>(n));

        const double ss = time_ms(reps, [&] { kernels::sense_serial(scene, arena, body, CensusFilter::RestingAny, out); });
        const double sp = time_ms(reps, [&] { kernels::sense_parallel(scene, arena, body, CensusFilter::RestingAny, out); });
        const double ms = time_ms(reps, [&] { kernels::resolve_motion_serial(scene.positions, proposed, arena, body, accepted); });
        const double mp = time_ms(reps, [&] { kernels::resolve_motion_parallel(scene.positions, proposed, arena, body, accepted); });
        std::printf("%6zu  %9.4f ms  %9.4f ms  %9.4f ms  %9.4f ms\n", n, ss, sp, ms, mp);
    }

    TrialConfig c;
    c.swarm_size = 100;
    c.arena = make_arena(100);
    c.duration = 3000;
    c.seed = 11;
    std::printf("\nwhole trial (N=100, simplified, %g s simulated):\n", c.duration);
    for (KernelBackend backend : {KernelBackend::Serial, KernelBackend::Parallel}) {
        RunOptions options;
        options.backend = backend;
        const double ms = time_ms(1, [&] { run_trial(c, options); });
        std::printf("  %-8s %8.1f ms\n", backend == KernelBackend::Serial ? "serial" : "openmp", ms);
    }
}
