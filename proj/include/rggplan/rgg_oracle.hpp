#ifndef RGGPLAN_RGG_ORACLE_HPP
#define RGGPLAN_RGG_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "core.hpp"
#include "nn.hpp"
#include "planner.hpp"

/// Ground-truth reference: materializes the random geometric graph over an
/// explicit state set (edges between all pairs within the connection radius
/// that pass the motion check) and solves it exactly with Dijkstra. Slow and
/// simple on purpose; used to validate the incremental planners.
namespace rggplan {

struct ExplicitRgg {
    std::vector<StateVec> states;
    double radius = 0.0;
    /// adjacency[i] lists (j, edge cost) for every collision-free edge; the
    /// graph is undirected, so each edge appears in both lists.
    std::vector<std::vector<std::pair<std::size_t, double>>> adjacency;
    std::uint64_t motion_checks = 0;
};

inline ExplicitRgg build_explicit_rgg(const World& world, std::vector<StateVec> states,
                                      double radius, double collision_step) {
    if (states.size() < 2)
        throw ContractViolation("build_explicit_rgg: need at least two states");
    if (!(radius >= 0.0))
        throw ContractViolation("build_explicit_rgg: radius must be >= 0");
    for (const StateVec& s : states)
        if (s.size() != world.dimension())
            throw ContractViolation("build_explicit_rgg: state dimension mismatch");

    ExplicitRgg graph;
    graph.states = std::move(states);
    graph.radius = radius;
    graph.adjacency.resize(graph.states.size());

    PointIndex index(world.dimension());
    for (std::size_t id = 0; id < graph.states.size(); ++id)
        index.insert(id, graph.states[id]);

    for (std::size_t i = 0; i < graph.states.size(); ++i) {
        for (std::size_t j : index.near(graph.states[i], radius)) {
            if (j <= i)
                continue;  // each unordered pair once
            ++graph.motion_checks;
            if (!is_motion_free(world, graph.states[i], graph.states[j], collision_step))
                continue;
            const double cost = euclidean_distance(graph.states[i], graph.states[j]);
            graph.adjacency[i].emplace_back(j, cost);
            graph.adjacency[j].emplace_back(i, cost);
        }
    }
    return graph;
}

/// Exact single-pair shortest path on an explicit graph. Ties in the queue
/// break on the smaller id, so the result is deterministic.
inline std::optional<Path> dijkstra_shortest_path(const ExplicitRgg& graph, std::size_t source,
                                                  std::size_t target) {
    const std::size_t n = graph.states.size();
    if (source >= n || target >= n)
        throw ContractViolation("dijkstra_shortest_path: node id out of range");

    std::vector<double> dist(n, kInf);
    std::vector<std::size_t> parent(n, SearchTree::kNoParent);
    std::vector<bool> settled(n, false);
    using QEntry = std::pair<double, std::size_t>;
    std::priority_queue<QEntry, std::vector<QEntry>, std::greater<QEntry>> queue;
    dist[source] = 0.0;
    queue.push({0.0, source});

    while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (settled[u])
            continue;
        settled[u] = true;
        if (u == target)
            break;
        for (const auto& [v, cost] : graph.adjacency[u]) {
            if (settled[v])
                continue;
            const double candidate = d + cost;
            if (candidate < dist[v]) {
                dist[v] = candidate;
                parent[v] = u;
                queue.push({candidate, v});
            }
        }
    }

    if (!std::isfinite(dist[target]))
        return std::nullopt;
    Path path;
    std::vector<std::size_t> chain;
    for (std::size_t cur = target; cur != SearchTree::kNoParent; cur = parent[cur]) {
        chain.push_back(cur);
        if (cur == source)
            break;
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
        path.waypoints.push_back(graph.states[*it]);
    path.cost = dist[target];
    return path;
}

/// Convenience wrapper: build the explicit graph and solve start-to-goal.
inline std::optional<Path> rgg_shortest_path(const World& world,
                                             const std::vector<StateVec>& states, double radius,
                                             std::size_t source, std::size_t target,
                                             double collision_step) {
    const ExplicitRgg graph = build_explicit_rgg(world, states, radius, collision_step);
    return dijkstra_shortest_path(graph, source, target);
}

}  // namespace rggplan

#endif  // RGGPLAN_RGG_ORACLE_HPP
