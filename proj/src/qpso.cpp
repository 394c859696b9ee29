#include "pvopt/qpso.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace pvopt::qpso {

namespace {

// splitmix64; cheap stateless mixing for per-particle substreams.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class SubStream {
  public:
    SubStream(std::uint64_t seed, std::uint64_t restart, std::uint64_t iteration, std::uint64_t particle)
        : state_(mix64(mix64(mix64(mix64(seed) ^ restart) ^ (iteration << 20)) ^ (particle << 40))) {}

    // Uniform in (0, 1]; never zero so ln(1/u) stays finite.
    double uniform() {
        state_ = mix64(state_);
        return (static_cast<double>(state_ >> 11) + 1.0) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

double snap_to_grid(double x, const Dimension& d) {
    if (!d.integer_grid) return std::clamp(x, d.lower, d.upper);
    double v;
    if (d.step == 1.0 && d.lower == std::floor(d.lower)) {
        v = std::round(x);  // half away from zero on the value itself
    } else {
        v = d.lower + std::round((x - d.lower) / d.step) * d.step;
    }
    const double k_max = std::floor((d.upper - d.lower) / d.step + 1e-9);
    const double lo = d.lower;
    const double hi = d.lower + k_max * d.step;
    return std::clamp(v, lo, hi);
}

struct Particle {
    std::vector<double> position;       // continuous, inside the box
    std::vector<double> best_position;  // projected personal best
    double best_value = -std::numeric_limits<double>::infinity();
};

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    const int workers = std::min(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = w; i < count; i += workers) body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

void Dimension::validate() const {
    if (!(lower < upper)) throw std::invalid_argument("dimension '" + name + "': lower bound must be < upper");
    if (integer_grid && !(step > 0.0)) throw std::invalid_argument("dimension '" + name + "': step must be positive");
}

void SearchSpace::validate() const {
    if (dimensions.empty()) throw std::invalid_argument("search space has no dimensions");
    for (const auto& d : dimensions) d.validate();
}

void SearchSpace::project(std::vector<double>& position) const {
    for (size_t j = 0; j < dimensions.size(); ++j) position[j] = snap_to_grid(position[j], dimensions[j]);
}

void SwarmConfig::validate() const {
    if (swarm_size < 2) throw std::invalid_argument("swarm size must be >= 2");
    if (max_iterations < 1) throw std::invalid_argument("iteration count must be >= 1");
    if (!(contraction_expansion_start > 0.0) || !(contraction_expansion_end > 0.0))
        throw std::invalid_argument("contraction-expansion coefficients must be positive");
    if (restarts < 1) throw std::invalid_argument("restart count must be >= 1");
    if (threads < 1) throw std::invalid_argument("thread count must be >= 1");
}

OptimizationResult optimize(const Objective& objective, const SearchSpace& space, const SwarmConfig& config) {
    space.validate();
    config.validate();

    const size_t dims = space.dimensions.size();
    const int n = config.swarm_size;

    OptimizationResult result;
    result.best_value = -std::numeric_limits<double>::infinity();

    auto evaluate = [&](const std::vector<double>& continuous, std::vector<double>& projected_out) {
        projected_out = continuous;
        space.project(projected_out);
        try {
            return objective(projected_out);
        } catch (const std::exception& e) {
            throw std::runtime_error(std::string("objective evaluation failed: ") + e.what());
        }
    };

    long evaluations = 0;

    for (int restart = 0; restart < config.restarts; ++restart) {
        std::vector<Particle> swarm(n);
        std::vector<double> gbest_position;
        double gbest_value = -std::numeric_limits<double>::infinity();

        // Seed the swarm uniformly over the box.
        parallel_for(n, config.threads, [&](int i) {
            SubStream rng(config.seed, static_cast<std::uint64_t>(restart), 0, static_cast<std::uint64_t>(i));
            auto& p = swarm[i];
            p.position.resize(dims);
            for (size_t j = 0; j < dims; ++j) {
                const auto& d = space.dimensions[j];
                p.position[j] = d.lower + rng.uniform() * (d.upper - d.lower);
            }
            p.best_value = evaluate(p.position, p.best_position);
        });
        evaluations += n;
        for (const auto& p : swarm) {
            if (p.best_value > gbest_value) {
                gbest_value = p.best_value;
                gbest_position = p.best_position;
            }
        }
        result.history.push_back(std::max(gbest_value, result.best_value));

        std::vector<double> mean_best(dims);
        std::vector<double> new_values(n);
        std::vector<std::vector<double>> new_projected(n);

        for (int iter = 1; iter <= config.max_iterations; ++iter) {
            std::fill(mean_best.begin(), mean_best.end(), 0.0);
            for (const auto& p : swarm)
                for (size_t j = 0; j < dims; ++j) mean_best[j] += p.best_position[j] / n;

            const double frac = config.max_iterations > 1
                                    ? static_cast<double>(iter - 1) / (config.max_iterations - 1)
                                    : 0.0;
            const double alpha = config.contraction_expansion_start +
                                 (config.contraction_expansion_end - config.contraction_expansion_start) * frac;

            parallel_for(n, config.threads, [&](int i) {
                SubStream rng(config.seed, static_cast<std::uint64_t>(restart), static_cast<std::uint64_t>(iter),
                              static_cast<std::uint64_t>(i));
                auto& p = swarm[i];
                for (size_t j = 0; j < dims; ++j) {
                    const auto& d = space.dimensions[j];
                    const double phi = rng.uniform();
                    const double attractor = phi * p.best_position[j] + (1.0 - phi) * gbest_position[j];
                    const double spread = alpha * std::abs(mean_best[j] - p.position[j]) * std::log(1.0 / rng.uniform());
                    const double sign = rng.uniform() < 0.5 ? 1.0 : -1.0;
                    p.position[j] = std::clamp(attractor + sign * spread, d.lower, d.upper);
                }
                new_values[i] = evaluate(p.position, new_projected[i]);
            });
            evaluations += n;

            // Barrier: fold results back in index order so ties are stable.
            for (int i = 0; i < n; ++i) {
                auto& p = swarm[i];
                if (new_values[i] > p.best_value) {
                    p.best_value = new_values[i];
                    p.best_position = new_projected[i];
                }
                if (new_values[i] > gbest_value) {
                    gbest_value = new_values[i];
                    gbest_position = new_projected[i];
                }
            }
            result.history.push_back(std::max(gbest_value, result.best_value));
        }

        if (gbest_value > result.best_value) {
            result.best_value = gbest_value;
            result.best_position = gbest_position;
        }
    }

    result.evaluations = evaluations;
    return result;
}

}  // namespace pvopt::qpso
