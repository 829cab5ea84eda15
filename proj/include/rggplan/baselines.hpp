#ifndef RGGPLAN_BASELINES_HPP
#define RGGPLAN_BASELINES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "bitstar.hpp"  // rgg_radius
#include "core.hpp"
#include "nn.hpp"
#include "planner.hpp"
#include "rng.hpp"
#include "sampling.hpp"

/// Baseline planners: RRT, RRT-Connect, RRT* (optionally informed), and a
/// single-batch marching-front planner over a fixed sample set. They share
/// collision checking, sampling, nearest-neighbour search, and the search
/// tree with the batch planner.
namespace rggplan {

struct BaselineConfig {
    double goal_bias = 0.05;
    /// Longest extension step; 0 picks a per-dimension default (short steps
    /// suit planar problems, longer ones high-dimensional ones).
    double max_edge_length = 0.0;
    double eta = 1.1;                  // rewiring-radius inflation
    std::uint32_t fmt_samples = 500;   // fixed sample count for the batch planner
    std::optional<double> collision_step;
    std::uint64_t seed = 0;
    StopCondition stop;
    bool capture_tree = false;
    bool capture_states = false;  // record the sampled state set (fixed-batch planner)
};

inline double default_max_edge_length(std::size_t dimension) {
    return dimension <= 4 ? 0.2 : 1.25;
}

namespace detail {

inline double resolved_max_edge(const World& world, const BaselineConfig& cfg) {
    if (cfg.max_edge_length < 0.0 || !std::isfinite(cfg.max_edge_length))
        throw ContractViolation("BaselineConfig: max_edge_length must be > 0 (or 0 for the default)");
    const double len =
        cfg.max_edge_length > 0.0 ? cfg.max_edge_length : default_max_edge_length(world.dimension());
    if (!(len > 0.0))
        throw ContractViolation("BaselineConfig: max_edge_length must be > 0");
    return len;
}

inline void validate_config(const BaselineConfig& cfg) {
    if (!(cfg.goal_bias >= 0.0) || !(cfg.goal_bias < 1.0))
        throw ContractViolation("BaselineConfig: goal_bias must be in [0, 1)");
    if (!(cfg.eta >= 1.0))
        throw ContractViolation("BaselineConfig: eta must be >= 1");
}

inline double resolved_step(const World& world, const BaselineConfig& cfg) {
    const double step = cfg.collision_step.value_or(world.collision_step());
    if (!(step > 0.0))
        throw ContractViolation("BaselineConfig: collision step must be > 0");
    return step;
}

inline void validate_endpoints(const World& world, PlannerCounters& counters) {
    counters.state_collision_checks += 2;
    if (!is_state_free(world, world.start()))
        throw ContractViolation("planner: start state is not free");
    if (!is_state_free(world, world.goal()))
        throw ContractViolation("planner: goal state is not free");
}

/// Point at most `max_len` from `from` on the segment towards `to`.
inline StateVec steer(const StateVec& from, const StateVec& to, double max_len) {
    const double d = euclidean_distance(from, to);
    if (d <= max_len)
        return to;
    StateVec out(from.size());
    const double t = max_len / d;
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = from[i] + t * (to[i] - from[i]);
    return out;
}

inline void capture_tree_edges(const std::vector<StateVec>& states, const SearchTree& tree,
                               PlannerResult& result) {
    for (std::size_t id = 1; id < states.size(); ++id)
        if (tree.in_tree(id))
            result.tree_edges.emplace_back(states[tree.parent(id)], states[id]);
}

}  // namespace detail

/// RRT: goal-biased uniform sampling, bounded extension of the nearest
/// vertex, stops at the first extension that lands exactly on the goal.
inline PlannerResult rrt_plan(const World& world, const BaselineConfig& cfg,
                              const SolutionSink& sink = nullptr) {
    const double max_len = detail::resolved_max_edge(world, cfg);
    const double step = detail::resolved_step(world, cfg);
    StopWatch watch(cfg.stop);
    RngStream rng(cfg.seed);
    PlannerResult result;
    PlannerCounters& counters = result.counters;
    detail::validate_config(cfg);
    detail::validate_endpoints(world, counters);

    std::vector<StateVec> states{world.start()};
    SearchTree tree;
    tree.add_node();
    PointIndex index(world.dimension());
    index.insert(0, world.start());

    while (!watch.out_of_time() && !watch.iterations_done(counters.iterations)) {
        ++counters.iterations;
        const bool aim_goal = rng.next_double() < cfg.goal_bias;
        const StateVec target = aim_goal ? world.goal() : sample_uniform(world.bounds(), rng);
        ++counters.samples_generated;

        const std::size_t nearest = index.nearest(target);
        const double d = euclidean_distance(states[nearest], target);
        if (d == 0.0)
            continue;
        const StateVec fresh = detail::steer(states[nearest], target, max_len);

        ++counters.motion_collision_checks;
        if (!is_motion_free(world, states[nearest], fresh, step))
            continue;

        const std::size_t id = tree.add_node();
        states.push_back(fresh);
        tree.set_parent(id, nearest, euclidean_distance(states[nearest], fresh));
        index.insert(id, fresh);
        ++counters.expansions;

        if (aim_goal && d <= max_len) {  // the new vertex is the goal itself
            const CostEvent event{watch.elapsed_us(), tree.cost_to_come(id)};
            result.events.push_back(event);
            if (sink)
                sink(event);
            Path path;
            for (std::size_t node : tree.branch(id))
                path.waypoints.push_back(states[node]);
            path.cost = event.cost;
            result.path = std::move(path);
            break;
        }
    }
    if (cfg.capture_tree)
        detail::capture_tree_edges(states, tree, result);
    return result;
}

/// RRT-Connect: two trees grown towards each other, one from the start and
/// one from the goal, joined greedily and without goal bias.
inline PlannerResult rrt_connect_plan(const World& world, const BaselineConfig& cfg,
                                     const SolutionSink& sink = nullptr) {
    const double max_len = detail::resolved_max_edge(world, cfg);
    const double step = detail::resolved_step(world, cfg);
    StopWatch watch(cfg.stop);
    RngStream rng(cfg.seed);
    PlannerResult result;
    PlannerCounters& counters = result.counters;
    detail::validate_config(cfg);
    detail::validate_endpoints(world, counters);

    struct HalfTree {
        std::vector<StateVec> states;
        SearchTree tree;
        PointIndex index;
        explicit HalfTree(const World& w, const StateVec& root) : index(w.dimension()) {
            states.push_back(root);
            tree.add_node();
            index.insert(0, root);
        }
    };
    HalfTree start_tree(world, world.start());
    HalfTree goal_tree(world, world.goal());
    HalfTree* grow = &start_tree;
    HalfTree* other = &goal_tree;

    enum class Extend { kTrapped, kAdvanced, kReached };
    auto extend = [&](HalfTree& t, const StateVec& target) -> std::pair<Extend, std::size_t> {
        const std::size_t nearest = t.index.nearest(target);
        const double d = euclidean_distance(t.states[nearest], target);
        if (d == 0.0)
            return {Extend::kReached, nearest};
        const StateVec fresh = detail::steer(t.states[nearest], target, max_len);
        ++counters.motion_collision_checks;
        if (!is_motion_free(world, t.states[nearest], fresh, step))
            return {Extend::kTrapped, nearest};
        const std::size_t id = t.tree.add_node();
        t.states.push_back(fresh);
        t.tree.set_parent(id, nearest, euclidean_distance(t.states[nearest], fresh));
        t.index.insert(id, fresh);
        ++counters.expansions;
        return {d <= max_len ? Extend::kReached : Extend::kAdvanced, id};
    };

    while (!watch.out_of_time() && !watch.iterations_done(counters.iterations)) {
        ++counters.iterations;
        const StateVec target = sample_uniform(world.bounds(), rng);
        ++counters.samples_generated;

        const auto [grown, grown_id] = extend(*grow, target);
        if (grown != Extend::kTrapped) {
            // Greedily connect the other tree to the new vertex.
            const StateVec& meet = grow->states[grown_id];
            auto connect = extend(*other, meet);
            while (connect.first == Extend::kAdvanced && !watch.out_of_time())
                connect = extend(*other, meet);
            if (connect.first == Extend::kReached) {
                const bool grow_is_start = grow == &start_tree;
                const auto& s_tree = grow_is_start ? *grow : *other;
                const auto& g_tree = grow_is_start ? *other : *grow;
                const std::size_t s_meet = grow_is_start ? grown_id : connect.second;
                const std::size_t g_meet = grow_is_start ? connect.second : grown_id;

                Path path;
                for (std::size_t node : s_tree.tree.branch(s_meet))
                    path.waypoints.push_back(s_tree.states[node]);
                auto back = g_tree.tree.branch(g_meet);
                for (auto it = back.rbegin(); it != back.rend(); ++it)
                    if (path.waypoints.back() != g_tree.states[*it])
                        path.waypoints.push_back(g_tree.states[*it]);
                path.cost = polyline_length(path.waypoints);

                const CostEvent event{watch.elapsed_us(), path.cost};
                result.events.push_back(event);
                if (sink)
                    sink(event);
                result.path = std::move(path);
                break;
            }
        }
        std::swap(grow, other);
    }
    if (cfg.capture_tree) {
        detail::capture_tree_edges(start_tree.states, start_tree.tree, result);
        detail::capture_tree_edges(goal_tree.states, goal_tree.tree, result);
    }
    return result;
}

namespace detail {

/// RRT* body; `informed` switches sampling to the solution spheroid once an
/// incumbent exists, which is the only difference between the two variants.
inline PlannerResult rrtstar_plan_impl(const World& world, const BaselineConfig& cfg,
                                       bool informed, const SolutionSink& sink) {
    const double max_len = resolved_max_edge(world, cfg);
    const double step = resolved_step(world, cfg);
    const double measure = world_measure(world);
    const double c_min = euclidean_distance(world.start(), world.goal());
    StopWatch watch(cfg.stop);
    RngStream rng(cfg.seed);
    PlannerResult result;
    PlannerCounters& counters = result.counters;
    validate_config(cfg);
    validate_endpoints(world, counters);

    std::vector<StateVec> states{world.start()};
    SearchTree tree;
    tree.add_node();
    PointIndex index(world.dimension());
    index.insert(0, world.start());

    std::size_t goal_id = SearchTree::kNoParent;
    double best_cost = kInf;
    std::optional<ProlateHyperspheroid> phs;
    double phs_cost = kInf;
    InformedSampleStats informed_stats;

    while (!watch.out_of_time() && !watch.iterations_done(counters.iterations)) {
        ++counters.iterations;

        StateVec target;
        if (informed && std::isfinite(best_cost) && best_cost > c_min) {
            if (phs_cost != best_cost) {
                phs.emplace(world.start(), world.goal(), best_cost);
                phs_cost = best_cost;
            }
            target = sample_informed(*phs, world.bounds(), rng, &informed_stats);
        } else {
            target = rng.next_double() < cfg.goal_bias ? world.goal()
                                                       : sample_uniform(world.bounds(), rng);
        }
        ++counters.samples_generated;

        const std::size_t nearest = index.nearest(target);
        const double d = euclidean_distance(states[nearest], target);
        if (d == 0.0)
            continue;
        const StateVec fresh = steer(states[nearest], target, max_len);

        ++counters.motion_collision_checks;
        if (!is_motion_free(world, states[nearest], fresh, step))
            continue;

        const double radius =
            rgg_radius(std::max<std::uint64_t>(states.size(), 2), world.dimension(), cfg.eta, measure);
        const std::vector<std::size_t> nearby = index.near(fresh, radius);

        // Parent choice: cheapest collision-free connection among the
        // neighbourhood and the nearest vertex (already checked).
        struct Candidate {
            double cost;
            std::size_t id;
            bool checked;
        };
        std::vector<Candidate> candidates;
        candidates.reserve(nearby.size() + 1);
        candidates.push_back({tree.cost_to_come(nearest) + euclidean_distance(states[nearest], fresh),
                              nearest, true});
        for (std::size_t y : nearby)
            if (y != nearest)
                candidates.push_back(
                    {tree.cost_to_come(y) + euclidean_distance(states[y], fresh), y, false});
        std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
            return std::tie(a.cost, a.id) < std::tie(b.cost, b.id);
        });

        std::size_t parent = SearchTree::kNoParent;
        for (const Candidate& c : candidates) {
            if (c.checked) {
                parent = c.id;
                break;
            }
            ++counters.motion_collision_checks;
            if (is_motion_free(world, states[c.id], fresh, step)) {
                parent = c.id;
                break;
            }
        }
        if (parent == SearchTree::kNoParent)
            continue;

        const std::size_t id = tree.add_node();
        states.push_back(fresh);
        tree.set_parent(id, parent, euclidean_distance(states[parent], fresh));
        ++counters.expansions;

        // Rewire the neighbourhood through the new vertex when cheaper.
        const double g_new = tree.cost_to_come(id);
        for (std::size_t y : nearby) {
            if (y == parent || y == 0)
                continue;
            const double edge = euclidean_distance(fresh, states[y]);
            if (g_new + edge < tree.cost_to_come(y)) {
                ++counters.motion_collision_checks;
                if (is_motion_free(world, fresh, states[y], step)) {
                    tree.set_parent(y, id, edge);
                    ++counters.rewirings;
                }
            }
        }
        index.insert(id, fresh);

        if (goal_id == SearchTree::kNoParent && fresh == world.goal())
            goal_id = id;
        if (goal_id != SearchTree::kNoParent) {
            const double goal_cost = tree.cost_to_come(goal_id);
            if (goal_cost < best_cost) {
                best_cost = goal_cost;
                const CostEvent event{watch.elapsed_us(), goal_cost};
                result.events.push_back(event);
                if (sink)
                    sink(event);
            }
        }
    }

    counters.informed_bounds_rejections = informed_stats.bounds_rejections;
    if (goal_id != SearchTree::kNoParent && std::isfinite(tree.cost_to_come(goal_id))) {
        Path path;
        for (std::size_t node : tree.branch(goal_id))
            path.waypoints.push_back(states[node]);
        path.cost = tree.cost_to_come(goal_id);
        result.path = std::move(path);
    }
    if (cfg.capture_tree)
        capture_tree_edges(states, tree, result);
    return result;
}

}  // namespace detail

/// RRT* with goal-biased uniform sampling throughout.
inline PlannerResult rrtstar_plan(const World& world, const BaselineConfig& cfg,
                                  const SolutionSink& sink = nullptr) {
    return detail::rrtstar_plan_impl(world, cfg, false, sink);
}

/// RRT* that restricts sampling to the solution spheroid once an incumbent
/// exists; identical to rrtstar_plan (same seed, same stream) before the
/// first solution.
inline PlannerResult informed_rrtstar_plan(const World& world, const BaselineConfig& cfg,
                                           const SolutionSink& sink = nullptr) {
    return detail::rrtstar_plan_impl(world, cfg, true, sink);
}

/// Single-batch planner: draws a fixed set of free samples up front, then
/// marches an open front outward in order of cost-to-come over the implicit
/// graph of that set, lazily collision checking only the locally best
/// connection for each newly reached state.
inline PlannerResult fmtstar_plan(const World& world, const BaselineConfig& cfg,
                                  const SolutionSink& sink = nullptr) {
    const double step = detail::resolved_step(world, cfg);
    StopWatch watch(cfg.stop);
    RngStream rng(cfg.seed);
    PlannerResult result;
    PlannerCounters& counters = result.counters;
    detail::validate_config(cfg);
    detail::validate_endpoints(world, counters);
    if (cfg.fmt_samples == 0)
        throw ContractViolation("BaselineConfig: fmt_samples must be >= 1");

    std::vector<StateVec> states{world.start(), world.goal()};
    constexpr std::size_t kGoal = 1;
    while (states.size() < cfg.fmt_samples + 2) {
        if ((counters.state_collision_checks & 0xfff) == 0 && watch.out_of_time())
            break;  // budget exhausted while hunting for free samples
        StateVec x = sample_uniform(world.bounds(), rng);
        ++counters.state_collision_checks;
        if (is_state_free(world, x)) {
            states.push_back(std::move(x));
            ++counters.samples_generated;
        }
    }

    const double radius =
        rgg_radius(states.size(), world.dimension(), cfg.eta, world_measure(world));
    PointIndex index(world.dimension());
    for (std::size_t id = 0; id < states.size(); ++id)
        index.insert(id, states[id]);

    result.batches.push_back(BatchRecord{radius, kInf, states.size(),
                                         cfg.capture_states ? states : std::vector<StateVec>{}});

    SearchTree tree;
    for (std::size_t id = 0; id < states.size(); ++id)
        tree.add_node();

    enum class Label : char { kUnvisited, kOpen, kClosed };
    std::vector<Label> label(states.size(), Label::kUnvisited);
    using OpenEntry = std::pair<double, std::size_t>;  // (cost-to-come, id)
    std::priority_queue<OpenEntry, std::vector<OpenEntry>, std::greater<OpenEntry>> open;
    label[0] = Label::kOpen;
    open.push({0.0, 0});

    std::size_t front = 0;
    while (front != kGoal && !watch.out_of_time() &&
           !watch.iterations_done(counters.iterations)) {
        ++counters.iterations;
        for (std::size_t x : index.near(states[front], radius)) {
            if (label[x] != Label::kUnvisited)
                continue;
            // Cheapest open neighbour of x, ties to the smallest id.
            std::size_t best_parent = SearchTree::kNoParent;
            double best_cost = kInf;
            for (std::size_t y : index.near(states[x], radius)) {
                if (label[y] != Label::kOpen)
                    continue;
                const double c = tree.cost_to_come(y) + euclidean_distance(states[y], states[x]);
                if (c < best_cost) {
                    best_cost = c;
                    best_parent = y;
                }
            }
            if (best_parent == SearchTree::kNoParent)
                continue;
            ++counters.motion_collision_checks;
            if (!is_motion_free(world, states[best_parent], states[x], step))
                continue;  // stays unvisited; a later front may reach it
            tree.set_parent(x, best_parent, euclidean_distance(states[best_parent], states[x]));
            label[x] = Label::kOpen;
            open.push({best_cost, x});
            ++counters.expansions;
        }
        label[front] = Label::kClosed;
        while (!open.empty() && label[open.top().second] != Label::kOpen)
            open.pop();
        if (open.empty())
            break;  // front exhausted without reaching the goal
        front = open.top().second;
        open.pop();
    }

    if (front == kGoal) {
        Path path;
        for (std::size_t node : tree.branch(kGoal))
            path.waypoints.push_back(states[node]);
        path.cost = tree.cost_to_come(kGoal);
        result.batches.back().cost_at_end = path.cost;
        const CostEvent event{watch.elapsed_us(), path.cost};
        result.events.push_back(event);
        if (sink)
            sink(event);
        result.path = std::move(path);
    }
    ++counters.batches;
    if (cfg.capture_tree)
        detail::capture_tree_edges(states, tree, result);
    return result;
}

}  // namespace rggplan

#endif  // RGGPLAN_BASELINES_HPP
