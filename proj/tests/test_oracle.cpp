#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <vector>

#include "rggplan/core.hpp"
#include "rggplan/rgg_oracle.hpp"
#include "rggplan/rng.hpp"

using namespace rggplan;

namespace {

World open_square() {
    return World(Box({-1.0, -1.0}, {1.0, 1.0}), {}, {0.0, 0.0}, {0.9, 0.9});
}

// The goal corner is walled off: any region containing the goal is separated
// from the rest of the square by obstacles.
World sealed_goal_square() {
    return World(Box({-1.0, -1.0}, {1.0, 1.0}),
                 {Box({0.7, 0.7}, {1.0, 0.8}), Box({0.7, 0.8}, {0.8, 1.0})}, {0.0, 0.0},
                 {0.9, 0.9});
}

}  // namespace

TEST_CASE("two connectable states yield the straight-line cost") {
    const World world = open_square();
    const std::vector<StateVec> states = {world.start(), world.goal()};
    const double c_min = euclidean_distance(world.start(), world.goal());
    const auto path = rgg_shortest_path(world, states, c_min + 0.01, 0, 1,
                                        world.collision_step());
    REQUIRE(path.has_value());
    CHECK(path->cost == Catch::Approx(c_min).margin(1e-12));
    REQUIRE(path->waypoints.size() == 2);
    CHECK(path->waypoints.front() == world.start());
    CHECK(path->waypoints.back() == world.goal());
}

TEST_CASE("a sealed goal is unreachable at any radius") {
    const World world = sealed_goal_square();
    std::vector<StateVec> states = {world.start(), world.goal()};
    RngStream rng(40);
    while (states.size() < 80) {
        const StateVec x{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        if (is_state_free(world, x))
            states.push_back(x);
    }
    const auto path = rgg_shortest_path(world, states, 3.0, 0, 1, world.collision_step());
    CHECK_FALSE(path.has_value());
}

TEST_CASE("oracle cost is invariant under state permutation") {
    const World world = open_square();
    std::vector<StateVec> states = {world.start(), world.goal()};
    RngStream rng(41);
    while (states.size() < 60) {
        const StateVec x{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        if (is_state_free(world, x))
            states.push_back(x);
    }
    const auto baseline = rgg_shortest_path(world, states, 0.5, 0, 1, world.collision_step());
    REQUIRE(baseline.has_value());

    std::vector<std::size_t> order(states.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::uint64_t shuffle_seed : {1ull, 2ull, 3ull}) {
        RngStream shuffler(shuffle_seed);
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[shuffler.next_u64() % i]);
        std::vector<StateVec> shuffled(states.size());
        std::size_t new_source = 0, new_target = 0;
        for (std::size_t pos = 0; pos < order.size(); ++pos) {
            shuffled[pos] = states[order[pos]];
            if (order[pos] == 0)
                new_source = pos;
            if (order[pos] == 1)
                new_target = pos;
        }
        const auto permuted = rgg_shortest_path(world, shuffled, 0.5, new_source, new_target,
                                                world.collision_step());
        REQUIRE(permuted.has_value());
        CHECK(permuted->cost == Catch::Approx(baseline->cost).margin(1e-12));
    }
}

TEST_CASE("oracle cost respects the straight-line lower bound") {
    const World world = World(Box({-1.0, -1.0}, {1.0, 1.0}), {Box({0.3, -0.4}, {0.5, 0.6})},
                              {0.0, 0.0}, {0.9, 0.9});
    for (std::uint64_t seed : {5ull, 6ull, 7ull, 8ull}) {
        std::vector<StateVec> states = {world.start(), world.goal()};
        RngStream rng(seed);
        while (states.size() < 120) {
            const StateVec x{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
            if (is_state_free(world, x))
                states.push_back(x);
        }
        const auto path = rgg_shortest_path(world, states, 0.45, 0, 1, world.collision_step());
        if (!path.has_value())
            continue;
        CHECK(path->cost >= euclidean_distance(world.start(), world.goal()) - 1e-12);
        CHECK(path->cost == Catch::Approx(polyline_length(path->waypoints)).margin(1e-12));
    }
}

TEST_CASE("explicit graph is symmetric and checks each pair once") {
    const World world = open_square();
    std::vector<StateVec> states = {world.start(), world.goal()};
    RngStream rng(42);
    while (states.size() < 40)
        states.push_back({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});

    const double radius = 0.6;
    const ExplicitRgg graph = build_explicit_rgg(world, states, radius, world.collision_step());

    std::uint64_t expected_checks = 0;
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = i + 1; j < states.size(); ++j)
            if (euclidean_distance(states[i], states[j]) <= radius)
                ++expected_checks;
    CHECK(graph.motion_checks == expected_checks);

    for (std::size_t i = 0; i < graph.adjacency.size(); ++i) {
        for (const auto& [j, cost] : graph.adjacency[i]) {
            CHECK(cost > 0.0);
            CHECK(cost <= radius + 1e-12);
            const auto& back = graph.adjacency[j];
            const bool mirrored =
                std::any_of(back.begin(), back.end(),
                            [&](const auto& e) { return e.first == i && e.second == cost; });
            CHECK(mirrored);
        }
    }
}

TEST_CASE("dijkstra rejects out-of-range endpoints") {
    const World world = open_square();
    const ExplicitRgg graph = build_explicit_rgg(world, {world.start(), world.goal()}, 2.0,
                                                 world.collision_step());
    CHECK_THROWS_AS(dijkstra_shortest_path(graph, 0, 5), ContractViolation);
    CHECK_THROWS_AS(dijkstra_shortest_path(graph, 9, 1), ContractViolation);
}
