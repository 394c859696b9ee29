#include "doctest.h"

#include <cmath>
#include <mutex>
#include <set>
#include <vector>

#include "pvopt/qpso.hpp"

using namespace pvopt::qpso;

namespace {

SearchSpace integer_line(double lo, double hi) {
    SearchSpace s;
    s.dimensions.push_back({"x", lo, hi, true, 1.0});
    return s;
}

// Small mixed-integer lattice shaped like the design problem: two angle-like
// stepped dimensions and two counts, mildly non-separable.
SearchSpace toy_lattice() {
    SearchSpace s;
    s.dimensions.push_back({"beta", 0.0, 40.0, true, 10.0});
    s.dimensions.push_back({"gamma", -20.0, 20.0, true, 10.0});
    s.dimensions.push_back({"z", 0.0, 3.0, true, 1.0});
    s.dimensions.push_back({"x", 0.0, 1.0, true, 1.0});
    return s;
}

double toy_objective(std::span<const double> p) {
    const double beta = p[0], gamma = p[1], z = p[2], x = p[3];
    return -std::pow(beta - 20.0, 2) / 50.0 - std::pow(gamma + 10.0, 2) / 80.0 + z * (1.0 + beta / 100.0) -
           0.8 * x * (z < 2.0 ? 1.0 : -1.0);
}

double toy_enumerated_best(std::vector<double>* argmax = nullptr) {
    double best = -1e300;
    for (double beta = 0.0; beta <= 40.0; beta += 10.0)
        for (double gamma = -20.0; gamma <= 20.0; gamma += 10.0)
            for (double z = 0.0; z <= 3.0; z += 1.0)
                for (double x = 0.0; x <= 1.0; x += 1.0) {
                    const std::vector<double> p{beta, gamma, z, x};
                    const double v = toy_objective(p);
                    if (v > best) {
                        best = v;
                        if (argmax) *argmax = p;
                    }
                }
    return best;
}

}  // namespace

TEST_CASE("grid projection clamps and rounds half away from zero") {
    SearchSpace s = integer_line(-5.0, 5.0);
    std::vector<double> p{-0.5};
    s.project(p);
    CHECK(p[0] == -1.0);
    p = {0.5};
    s.project(p);
    CHECK(p[0] == 1.0);
    p = {7.3};
    s.project(p);
    CHECK(p[0] == 5.0);
    p = {-9.0};
    s.project(p);
    CHECK(p[0] == -5.0);

    SearchSpace stepped;
    stepped.dimensions.push_back({"a", 0.0, 40.0, true, 10.0});
    p = {17.0};
    stepped.project(p);
    CHECK(p[0] == 20.0);
    p = {14.9};
    stepped.project(p);
    CHECK(p[0] == 10.0);
}

TEST_CASE("one-dimensional integer parabola lands on the vertex") {
    SwarmConfig cfg;
    cfg.swarm_size = 12;
    cfg.max_iterations = 40;
    cfg.restarts = 1;
    cfg.seed = 123;
    const auto result = optimize([](std::span<const double> p) { return -std::pow(p[0] - 7.0, 2); },
                                 integer_line(0.0, 10.0), cfg);
    CHECK(result.best_position.size() == 1);
    CHECK(result.best_position[0] == 7.0);
    CHECK(result.best_value == 0.0);
}

TEST_CASE("two-dimensional sphere converges tightly") {
    SearchSpace s;
    s.dimensions.push_back({"x0", -5.0, 5.0, false, 1.0});
    s.dimensions.push_back({"x1", -5.0, 5.0, false, 1.0});
    SwarmConfig cfg;
    cfg.swarm_size = 40;
    cfg.max_iterations = 200;
    cfg.restarts = 1;
    cfg.seed = 7;
    const auto result = optimize(
        [](std::span<const double> p) { return -(p[0] * p[0] + p[1] * p[1]); }, s, cfg);
    CHECK(std::abs(result.best_value) < 1e-3);
}

TEST_CASE("toy lattice optimum matches exhaustive enumeration") {
    std::vector<double> expected_pos;
    const double expected = toy_enumerated_best(&expected_pos);

    SwarmConfig cfg;
    cfg.swarm_size = 20;
    cfg.max_iterations = 60;
    cfg.restarts = 2;
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
        cfg.seed = seed;
        const auto result = optimize(toy_objective, toy_lattice(), cfg);
        CHECK(result.best_value == expected);
        CHECK(result.best_position == expected_pos);
    }
}

TEST_CASE("every evaluated position is feasible and on-grid") {
    std::mutex mu;
    std::vector<std::vector<double>> seen;
    const Objective recorder = [&](std::span<const double> p) {
        std::lock_guard lock(mu);
        seen.emplace_back(p.begin(), p.end());
        return toy_objective(p);
    };
    SwarmConfig cfg;
    cfg.swarm_size = 10;
    cfg.max_iterations = 25;
    cfg.restarts = 1;
    cfg.seed = 5;
    optimize(recorder, toy_lattice(), cfg);

    REQUIRE(!seen.empty());
    for (const auto& p : seen) {
        CHECK(p[0] >= 0.0);
        CHECK(p[0] <= 40.0);
        CHECK(std::fmod(p[0], 10.0) == 0.0);
        CHECK(p[1] >= -20.0);
        CHECK(p[1] <= 20.0);
        CHECK(std::fmod(p[1], 10.0) == 0.0);
        CHECK(p[2] == std::floor(p[2]));
        CHECK((p[3] == 0.0 || p[3] == 1.0));
    }
}

TEST_CASE("history is non-decreasing and consistent with the result") {
    SwarmConfig cfg;
    cfg.swarm_size = 16;
    cfg.max_iterations = 50;
    cfg.restarts = 3;
    cfg.seed = 9;
    const auto result = optimize(toy_objective, toy_lattice(), cfg);
    REQUIRE(!result.history.empty());
    for (size_t i = 1; i < result.history.size(); ++i) CHECK(result.history[i] >= result.history[i - 1]);
    CHECK(result.history.back() == result.best_value);
    CHECK(result.best_value == toy_objective(result.best_position));
    CHECK(result.evaluations == 16l * 51 * 3);
}

TEST_CASE("equal seeds give identical runs regardless of thread count") {
    SwarmConfig cfg;
    cfg.swarm_size = 14;
    cfg.max_iterations = 30;
    cfg.restarts = 2;
    cfg.seed = 42;

    cfg.threads = 1;
    const auto serial = optimize(toy_objective, toy_lattice(), cfg);
    cfg.threads = 4;
    const auto parallel = optimize(toy_objective, toy_lattice(), cfg);

    CHECK(serial.best_value == parallel.best_value);
    CHECK(serial.best_position == parallel.best_position);
    CHECK(serial.history == parallel.history);

    cfg.seed = 43;
    const auto other = optimize(toy_objective, toy_lattice(), cfg);
    CHECK(other.history != serial.history);  // different seed explores differently
}

TEST_CASE("objective failures abort with context") {
    const Objective boom = [](std::span<const double>) -> double { throw std::runtime_error("bad point"); };
    SwarmConfig cfg;
    cfg.swarm_size = 4;
    cfg.max_iterations = 2;
    cfg.restarts = 1;
    CHECK_THROWS_WITH_AS(optimize(boom, integer_line(0.0, 3.0), cfg),
                         doctest::Contains("objective evaluation failed"), std::runtime_error);
}

TEST_CASE("configuration validation") {
    SwarmConfig cfg;
    cfg.swarm_size = 1;
    CHECK_THROWS_AS(optimize([](std::span<const double>) { return 0.0; }, integer_line(0.0, 1.0), cfg),
                    std::invalid_argument);
    SearchSpace bad;
    bad.dimensions.push_back({"x", 2.0, 1.0, false, 1.0});
    CHECK_THROWS_AS(optimize([](std::span<const double>) { return 0.0; }, bad, SwarmConfig{}),
                    std::invalid_argument);
}
