// Minimal library walkthrough: build a small 2-D world with one obstacle,
// run the batch planner for a quarter second, and print the best path.

#include <iostream>

#include "rggplan/bitstar.hpp"
#include "rggplan/core.hpp"

int main() {
    using namespace rggplan;

    const Box bounds({-1.0, -1.0}, {1.0, 1.0});
    const std::vector<Box> obstacles = {Box({-0.2, -0.6}, {0.2, 0.6})};
    const World world(bounds, obstacles, {-0.8, 0.0}, {0.8, 0.0});

    PlannerConfig config;
    config.seed = 7;
    config.stop = StopCondition::budget_ms(250);

    BitStarPlanner planner(world, config);
    const PlannerResult result = planner.plan([](const CostEvent& event) {
        std::cout << "improved to cost " << event.cost << " at " << event.elapsed_us << " us\n";
    });

    if (!result.solved()) {
        std::cout << "no solution found\n";
        return 0;
    }
    std::cout << "final cost " << result.path->cost << " via " << result.path->waypoints.size()
              << " waypoints over " << result.counters.batches << " batches\n";
    for (const StateVec& x : result.path->waypoints)
        std::cout << "  (" << x[0] << ", " << x[1] << ")\n";
    return 0;
}
