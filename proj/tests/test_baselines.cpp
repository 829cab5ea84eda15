#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstddef>
#include <vector>

#include "rggplan/baselines.hpp"
#include "rggplan/core.hpp"
#include "rggplan/rgg_oracle.hpp"

using namespace rggplan;

namespace {

World empty_square() {
    return World(Box({-1.0, -1.0}, {1.0, 1.0}), {}, {0.0, 0.0}, {0.9, 0.9});
}

World sealed_goal_square() {
    return World(Box({-1.0, -1.0}, {1.0, 1.0}),
                 {Box({0.7, 0.7}, {1.0, 0.8}), Box({0.7, 0.8}, {0.8, 1.0})}, {0.0, 0.0},
                 {0.9, 0.9});
}

World slalom_world() {
    return World(Box({-1.0, -1.0}, {1.0, 1.0}),
                 {Box({-0.5, -1.0}, {-0.3, 0.5}), Box({0.3, -0.5}, {0.5, 1.0})}, {-0.8, 0.0},
                 {0.8, 0.0});
}

void check_path_valid(const World& world, const Path& path) {
    REQUIRE(path.waypoints.size() >= 2);
    CHECK(path.waypoints.front() == world.start());
    CHECK(path.waypoints.back() == world.goal());
    CHECK(path.cost == Catch::Approx(polyline_length(path.waypoints)).margin(1e-12));
    for (std::size_t i = 0; i + 1 < path.waypoints.size(); ++i)
        CHECK(is_motion_free(world, path.waypoints[i], path.waypoints[i + 1]));
}

void check_events_strictly_decreasing(const std::vector<CostEvent>& events) {
    for (std::size_t i = 1; i < events.size(); ++i)
        CHECK(events[i].cost < events[i - 1].cost);
}

void check_identical(const PlannerResult& a, const PlannerResult& b) {
    REQUIRE(a.solved() == b.solved());
    REQUIRE(a.events.size() == b.events.size());
    for (std::size_t i = 0; i < a.events.size(); ++i)
        CHECK(a.events[i].cost == b.events[i].cost);
    if (a.solved()) {
        CHECK(a.path->waypoints == b.path->waypoints);
        CHECK(a.path->cost == b.path->cost);
    }
    CHECK(a.counters.iterations == b.counters.iterations);
    CHECK(a.counters.samples_generated == b.counters.samples_generated);
    CHECK(a.counters.motion_collision_checks == b.counters.motion_collision_checks);
    CHECK(a.counters.expansions == b.counters.expansions);
    CHECK(a.tree_edges == b.tree_edges);
}

}  // namespace

TEST_CASE("rrt finds a solution above the straight-line bound") {
    const World world = empty_square();
    const double c_min = euclidean_distance(world.start(), world.goal());
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        BaselineConfig cfg;
        cfg.seed = seed;
        cfg.stop = StopCondition::iterations(20000);
        const PlannerResult result = rrt_plan(world, cfg);
        REQUIRE(result.solved());
        CHECK(result.best_cost() >= c_min - 1e-12);
        CHECK(result.events.size() == 1);
        CHECK(result.events.front().cost == result.path->cost);
        check_path_valid(world, *result.path);
    }
}

TEST_CASE("rrt reports nothing for a sealed goal") {
    BaselineConfig cfg;
    cfg.seed = 4;
    cfg.stop = StopCondition::iterations(3000);
    const PlannerResult result = rrt_plan(sealed_goal_square(), cfg);
    CHECK_FALSE(result.solved());
    CHECK(result.events.empty());
}

TEST_CASE("rrt reruns are identical") {
    BaselineConfig cfg;
    cfg.seed = 5;
    cfg.stop = StopCondition::iterations(20000);
    cfg.capture_tree = true;
    const World world = empty_square();
    check_identical(rrt_plan(world, cfg), rrt_plan(world, cfg));
}

TEST_CASE("rrt-connect joins the two trees into one valid path") {
    const World world = slalom_world();
    const double c_min = euclidean_distance(world.start(), world.goal());
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        BaselineConfig cfg;
        cfg.seed = seed;
        cfg.stop = StopCondition::iterations(20000);
        const PlannerResult result = rrt_connect_plan(world, cfg);
        REQUIRE(result.solved());
        CHECK(result.best_cost() >= c_min - 1e-12);
        CHECK(result.events.size() == 1);
        check_path_valid(world, *result.path);
    }
}

TEST_CASE("rrt-connect reports nothing for a sealed goal") {
    BaselineConfig cfg;
    cfg.seed = 4;
    cfg.stop = StopCondition::iterations(3000);
    const PlannerResult result = rrt_connect_plan(sealed_goal_square(), cfg);
    CHECK_FALSE(result.solved());
    CHECK(result.events.empty());
}

TEST_CASE("rrt-connect reruns are identical") {
    BaselineConfig cfg;
    cfg.seed = 5;
    cfg.stop = StopCondition::iterations(20000);
    cfg.capture_tree = true;
    const World world = empty_square();
    check_identical(rrt_connect_plan(world, cfg), rrt_connect_plan(world, cfg));
}

TEST_CASE("rrt-star improves its solution monotonically") {
    BaselineConfig cfg;
    cfg.seed = 2;
    cfg.stop = StopCondition::iterations(6000);
    const World world = empty_square();
    const PlannerResult result = rrtstar_plan(world, cfg);
    REQUIRE(result.solved());
    REQUIRE(result.events.size() >= 2);
    check_events_strictly_decreasing(result.events);
    CHECK(result.best_cost() == result.path->cost);
    check_path_valid(world, *result.path);
}

TEST_CASE("rrt-star closes to within 3 percent of optimal in ten thousand iterations") {
    const World world = empty_square();
    const double c_min = euclidean_distance(world.start(), world.goal());
    std::vector<double> finals;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        BaselineConfig cfg;
        cfg.seed = seed;
        cfg.stop = StopCondition::iterations(10000);
        const PlannerResult result = rrtstar_plan(world, cfg);
        REQUIRE(result.solved());
        check_events_strictly_decreasing(result.events);
        finals.push_back(result.best_cost());
    }
    std::sort(finals.begin(), finals.end());
    const double median = 0.5 * (finals[9] + finals[10]);
    CHECK(median <= 1.03 * c_min);
}

TEST_CASE("rrt-star reruns are identical") {
    BaselineConfig cfg;
    cfg.seed = 3;
    cfg.stop = StopCondition::iterations(2000);
    cfg.capture_tree = true;
    const World world = slalom_world();
    check_identical(rrtstar_plan(world, cfg), rrtstar_plan(world, cfg));
}

TEST_CASE("informed sampling only kicks in once a solution exists") {
    // On a sealed goal no solution ever appears, so the informed variant
    // must replay the plain one step for step, tree and all.
    BaselineConfig cfg;
    cfg.seed = 6;
    cfg.stop = StopCondition::iterations(500);
    cfg.capture_tree = true;
    const World world = sealed_goal_square();
    const PlannerResult plain = rrtstar_plan(world, cfg);
    const PlannerResult informed = informed_rrtstar_plan(world, cfg);
    CHECK_FALSE(plain.solved());
    check_identical(plain, informed);

    // Once solutions exist the two sampling streams diverge.
    BaselineConfig open_cfg;
    open_cfg.seed = 6;
    open_cfg.stop = StopCondition::iterations(4000);
    const World open = empty_square();
    const PlannerResult plain_open = rrtstar_plan(open, open_cfg);
    const PlannerResult informed_open = informed_rrtstar_plan(open, open_cfg);
    REQUIRE(plain_open.solved());
    REQUIRE(informed_open.solved());
    CHECK(plain_open.best_cost() != informed_open.best_cost());
}

TEST_CASE("informed rrt-star converges at least as fast as plain rrt-star") {
    // Paired seeds, identical iteration budgets: the focused sampler should
    // dominate once an incumbent exists. Compared at a fixed iteration
    // count because events are stamped with wall time, not iterations.
    const World world = empty_square();
    std::vector<double> diffs;
    std::size_t informed_no_worse = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        BaselineConfig cfg;
        cfg.seed = seed;
        cfg.stop = StopCondition::iterations(4000);
        const PlannerResult plain = rrtstar_plan(world, cfg);
        const PlannerResult informed = informed_rrtstar_plan(world, cfg);
        REQUIRE(plain.solved());
        REQUIRE(informed.solved());
        diffs.push_back(informed.best_cost() - plain.best_cost());
        if (informed.best_cost() <= plain.best_cost() + 1e-9)
            ++informed_no_worse;
    }
    std::sort(diffs.begin(), diffs.end());
    CHECK(0.5 * (diffs[9] + diffs[10]) <= 0.0);  // median paired difference
    CHECK(informed_no_worse >= 15);
}

TEST_CASE("the fixed-batch planner stays within ten percent of optimal") {
    const World world = empty_square();
    const double c_min = euclidean_distance(world.start(), world.goal());
    BaselineConfig cfg;
    cfg.seed = 1;
    const PlannerResult result = fmtstar_plan(world, cfg);
    REQUIRE(result.solved());
    CHECK(result.best_cost() <= 1.10 * c_min);
    CHECK(result.best_cost() >= c_min - 1e-12);
    CHECK(result.events.size() == 1);
    check_path_valid(world, *result.path);
}

TEST_CASE("the fixed-batch planner never beats the graph oracle") {
    // The marching front lazily picks locally best parents, so on the very
    // same sample set and radius it can only tie or lose against an exact
    // shortest-path search.
    for (const World& world : {empty_square(), slalom_world()}) {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            BaselineConfig cfg;
            cfg.seed = seed;
            cfg.capture_states = true;
            const PlannerResult result = fmtstar_plan(world, cfg);
            REQUIRE(result.solved());
            REQUIRE(result.batches.size() == 1);
            const BatchRecord& batch = result.batches.front();
            REQUIRE(batch.states.size() == batch.state_count);
            const ExplicitRgg graph =
                build_explicit_rgg(world, batch.states, batch.radius, world.collision_step());
            const auto oracle = dijkstra_shortest_path(graph, 0, 1);
            REQUIRE(oracle.has_value());
            CHECK(result.best_cost() >= oracle->cost - 1e-9);
        }
    }
}

TEST_CASE("the fixed-batch planner reports nothing for a sealed goal") {
    BaselineConfig cfg;
    cfg.seed = 2;
    const PlannerResult result = fmtstar_plan(sealed_goal_square(), cfg);
    CHECK_FALSE(result.solved());
    CHECK(result.events.empty());
    CHECK(result.counters.batches == 1);
}

TEST_CASE("fixed-batch reruns are identical") {
    BaselineConfig cfg;
    cfg.seed = 4;
    cfg.capture_tree = true;
    const World world = slalom_world();
    check_identical(fmtstar_plan(world, cfg), fmtstar_plan(world, cfg));
}

TEST_CASE("baseline config contracts") {
    const World world = empty_square();
    BaselineConfig cfg;
    cfg.stop = StopCondition::iterations(1);

    cfg.goal_bias = 1.0;
    CHECK_THROWS_AS(rrt_plan(world, cfg), ContractViolation);
    CHECK_THROWS_AS(rrtstar_plan(world, cfg), ContractViolation);
    cfg = BaselineConfig{};
    cfg.stop = StopCondition::iterations(1);
    cfg.goal_bias = -0.1;
    CHECK_THROWS_AS(rrt_plan(world, cfg), ContractViolation);

    cfg = BaselineConfig{};
    cfg.stop = StopCondition::iterations(1);
    cfg.max_edge_length = -1.0;
    CHECK_THROWS_AS(rrt_plan(world, cfg), ContractViolation);
    CHECK_THROWS_AS(rrt_connect_plan(world, cfg), ContractViolation);

    cfg = BaselineConfig{};
    cfg.stop = StopCondition::iterations(1);
    cfg.eta = 0.5;
    CHECK_THROWS_AS(rrtstar_plan(world, cfg), ContractViolation);
    CHECK_THROWS_AS(fmtstar_plan(world, cfg), ContractViolation);

    cfg = BaselineConfig{};
    cfg.stop = StopCondition::iterations(1);
    cfg.fmt_samples = 0;
    CHECK_THROWS_AS(fmtstar_plan(world, cfg), ContractViolation);
}

TEST_CASE("default extension lengths scale with dimension") {
    CHECK(default_max_edge_length(2) == 0.2);
    CHECK(default_max_edge_length(4) == 0.2);
    CHECK(default_max_edge_length(5) == 1.25);
    CHECK(default_max_edge_length(8) == 1.25);
}
