#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace pvopt::qpso {

// One search dimension. Integer-grid dimensions hold values lb + k*step; a
// candidate is snapped to the nearest grid point (ties round half away from
// zero) before every objective evaluation.
struct Dimension {
    std::string name;
    double lower = 0.0;
    double upper = 1.0;
    bool integer_grid = false;
    double step = 1.0;

    void validate() const;
};

struct SearchSpace {
    std::vector<Dimension> dimensions;

    void validate() const;
    // Clamp into the box and snap discrete dimensions onto their grid.
    void project(std::vector<double>& position) const;
};

struct SwarmConfig {
    int swarm_size = 40;
    int max_iterations = 300;
    double contraction_expansion_start = 1.0;
    double contraction_expansion_end = 0.5;
    std::uint64_t seed = 1;
    int restarts = 3;
    int threads = 1;

    void validate() const;
};

struct OptimizationResult {
    std::vector<double> best_position;
    double best_value = 0.0;
    std::vector<double> history;  // best-so-far after each iteration, non-decreasing
    long evaluations = 0;
};

using Objective = std::function<double(std::span<const double>)>;

// Quantum-behaved particle swarm maximization over the box. Each particle
// resamples around a stochastic attractor between its personal best and the
// swarm best, with a characteristic length set by the distance to the mean
// best position and a linearly annealed contraction-expansion coefficient.
// Deterministic for a fixed seed regardless of thread count: every particle
// draws from its own (seed, restart, iteration, index) stream and swarm state
// only changes at iteration barriers.
OptimizationResult optimize(const Objective& objective, const SearchSpace& space, const SwarmConfig& config);

}  // namespace pvopt::qpso
