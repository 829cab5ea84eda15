#ifndef RGGPLAN_PLANNER_HPP
#define RGGPLAN_PLANNER_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "core.hpp"

/// Types shared by every planner: stop conditions, cost events, counters,
/// results, and the lazily evaluated search tree.
namespace rggplan {

using Clock = std::chrono::steady_clock;

/// A strict improvement of the incumbent solution cost, stamped with the
/// wall-clock time since the planner started.
struct CostEvent {
    std::int64_t elapsed_us = 0;
    double cost = kInf;
};

using SolutionSink = std::function<void(const CostEvent&)>;

/// Any combination of limits; the planner stops at the first one hit.
/// All fields unset means run forever (useful only for stepping by hand).
struct StopCondition {
    std::optional<std::int64_t> budget_us;        // wall-clock budget
    std::optional<std::uint64_t> max_batches;     // batch planners
    std::optional<std::uint64_t> max_iterations;  // sample-at-a-time planners

    static StopCondition budget_ms(std::int64_t ms) {
        StopCondition s;
        s.budget_us = ms * 1000;
        return s;
    }
    static StopCondition batches(std::uint64_t n) {
        StopCondition s;
        s.max_batches = n;
        return s;
    }
    static StopCondition iterations(std::uint64_t n) {
        StopCondition s;
        s.max_iterations = n;
        return s;
    }
};

struct PlannerCounters {
    std::uint64_t batches = 0;
    std::uint64_t iterations = 0;
    std::uint64_t samples_generated = 0;
    std::uint64_t state_collision_checks = 0;
    std::uint64_t motion_collision_checks = 0;
    std::uint64_t edges_processed = 0;
    std::uint64_t expansions = 0;
    std::uint64_t rewirings = 0;
    std::uint64_t prunes = 0;
    std::uint64_t pruned_vertices = 0;
    std::uint64_t pruned_samples = 0;
    std::uint64_t duplicate_edge_insertions = 0;
    std::uint64_t queue_order_violations = 0;
    std::uint64_t informed_bounds_rejections = 0;
};

/// Per-batch summary recorded by batch planners; `states` is filled only
/// when state capture is enabled and then holds every vertex and unconnected
/// sample alive during the batch, in creation order (start first, goal
/// second), frozen at batch start.
struct BatchRecord {
    double radius = kInf;
    double cost_at_end = kInf;
    std::size_t state_count = 0;
    std::vector<StateVec> states;
};

struct PlannerResult {
    std::optional<Path> path;
    std::vector<CostEvent> events;
    PlannerCounters counters;
    std::vector<BatchRecord> batches;
    std::vector<std::pair<StateVec, StateVec>> tree_edges;  // with capture_tree

    double best_cost() const { return events.empty() ? kInf : events.back().cost; }
    bool solved() const { return path.has_value(); }
};

/// Parent-pointer forest with per-node edge costs and lazily memoized
/// cost-to-come. A global revision is bumped whenever an edge cost or
/// parent changes, invalidating every cached value at once; reads then
/// recompute along the parent chain and re-memoize. Node 0 is the root.
class SearchTree {
public:
    static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

    /// Adds a node and returns its id; the root is the first node added.
    std::size_t add_node() {
        nodes_.push_back(NodeRec{kNoParent, 0.0, kInf, 0});
        if (nodes_.size() == 1) {
            nodes_[0].cached_cost = 0.0;
            nodes_[0].revision_seen = revision_;
        }
        return nodes_.size() - 1;
    }

    std::size_t size() const { return nodes_.size(); }

    bool in_tree(std::size_t id) const {
        return id == 0 || nodes_[id].parent != kNoParent;
    }

    std::size_t parent(std::size_t id) const { return nodes_[id].parent; }
    double edge_cost(std::size_t id) const { return nodes_[id].edge_cost; }

    /// Attaches or re-parents `child` under `parent`. Re-parenting changes
    /// the cost-to-come of the whole subtree, so it bumps the revision.
    void set_parent(std::size_t child, std::size_t parent, double edge_cost) {
        if (child == 0)
            throw ContractViolation("SearchTree: cannot re-parent the root");
        nodes_[child].parent = parent;
        nodes_[child].edge_cost = edge_cost;
        ++revision_;
    }

    /// Detaches `child` from the tree (it and its subtree become orphans
    /// with infinite cost-to-come).
    void detach(std::size_t child) {
        if (child == 0)
            throw ContractViolation("SearchTree: cannot detach the root");
        nodes_[child].parent = kNoParent;
        ++revision_;
    }

    /// Cost-to-come from the root; infinity for orphans. Amortized O(1):
    /// walks up only past stale ancestors, then memoizes the whole chain.
    double cost_to_come(std::size_t id) const {
        if (nodes_[id].revision_seen == revision_)
            return nodes_[id].cached_cost;
        chain_.clear();
        std::size_t cur = id;
        while (nodes_[cur].revision_seen != revision_) {
            chain_.push_back(cur);
            if (cur == 0) {
                nodes_[0].cached_cost = 0.0;
                nodes_[0].revision_seen = revision_;
                break;
            }
            const std::size_t up = nodes_[cur].parent;
            if (up == kNoParent) {
                nodes_[cur].cached_cost = kInf;
                nodes_[cur].revision_seen = revision_;
                break;
            }
            cur = up;
        }
        for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) {
            const std::size_t node = *it;
            if (nodes_[node].revision_seen == revision_)
                continue;
            const double base = nodes_[nodes_[node].parent].cached_cost;
            nodes_[node].cached_cost = base + nodes_[node].edge_cost;
            nodes_[node].revision_seen = revision_;
        }
        return nodes_[id].cached_cost;
    }

    /// Node ids from the root to `id`, inclusive; empty if `id` is orphaned.
    std::vector<std::size_t> branch(std::size_t id) const {
        std::vector<std::size_t> out;
        std::size_t cur = id;
        for (;;) {
            out.push_back(cur);
            if (cur == 0)
                break;
            cur = nodes_[cur].parent;
            if (cur == kNoParent)
                return {};
        }
        std::reverse(out.begin(), out.end());
        return out;
    }

private:
    struct NodeRec {
        std::size_t parent;
        double edge_cost;
        mutable double cached_cost;
        mutable std::uint64_t revision_seen;
    };

    std::vector<NodeRec> nodes_;
    std::uint64_t revision_ = 1;
    mutable std::vector<std::size_t> chain_;
};

/// Shared helper: true once the wall-clock budget or an iteration/batch cap
/// in `stop` is exhausted.
class StopWatch {
public:
    explicit StopWatch(const StopCondition& stop)
        : stop_(stop), t0_(Clock::now()) {}

    std::int64_t elapsed_us() const {
        return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0_).count();
    }

    bool out_of_time() const {
        return stop_.budget_us && elapsed_us() >= *stop_.budget_us;
    }
    bool batches_done(std::uint64_t batches) const {
        return stop_.max_batches && batches >= *stop_.max_batches;
    }
    bool iterations_done(std::uint64_t iterations) const {
        return stop_.max_iterations && iterations >= *stop_.max_iterations;
    }

private:
    StopCondition stop_;
    Clock::time_point t0_;
};

}  // namespace rggplan

#endif  // RGGPLAN_PLANNER_HPP
