#ifndef RGGPLAN_BITSTAR_HPP
#define RGGPLAN_BITSTAR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "core.hpp"
#include "nn.hpp"
#include "planner.hpp"
#include "rng.hpp"
#include "sampling.hpp"

namespace rggplan {

/// Connection radius of a random geometric graph over q states in an
/// n-dimensional space of the given measure, shrunk as q grows so the
/// expected degree stays near the asymptotic-optimality threshold:
///   r(q) = 2 eta (1 + 1/n)^(1/n) (measure / zeta_n)^(1/n) (ln q / q)^(1/n).
inline double rgg_radius(std::uint64_t q, std::size_t n, double eta, double measure) {
    if (q < 2)
        throw ContractViolation("rgg_radius: need at least two states");
    if (n == 0)
        throw ContractViolation("rgg_radius: n must be >= 1");
    if (!(eta > 0.0) || !(measure >= 0.0))
        throw ContractViolation("rgg_radius: eta must be > 0 and measure >= 0");
    const double nd = static_cast<double>(n);
    const double qd = static_cast<double>(q);
    return 2.0 * eta * std::pow((1.0 + 1.0 / nd) * (measure / unit_ball_measure(n)), 1.0 / nd) *
           std::pow(std::log(qd) / qd, 1.0 / nd);
}

/// Knobs for the batch planner.
struct PlannerConfig {
    std::uint32_t samples_per_batch = 100;
    double eta = 1.1;  // radius inflation factor
    /// A new batch re-prunes only once the incumbent solution has improved
    /// by more than this fraction since the previous prune.
    double prune_threshold_fraction = 0.01;
    std::optional<double> collision_step;  // defaults to the world's step
    std::uint64_t seed = 0;
    StopCondition stop;
    bool capture_batch_states = false;  // fill BatchRecord::states
    bool capture_tree = false;          // fill PlannerResult::tree_edges
};

/// What processing the best queued edge did.
enum class EdgeOutcome {
    kQueueEmpty,      // nothing to process
    kBatchExhausted,  // best edge cannot improve the solution: queues cleared
    kDiscarded,       // edge failed a gate (cost or collision)
    kExpanded,        // edge added a new vertex to the tree
    kRewired,         // edge re-parented an existing vertex
};

/// Anytime batch planner over implicit random geometric graphs. Grows an
/// explicit tree from the start towards the goal by processing candidate
/// edges in ascending order of their estimated solution cost; each batch
/// adds a set of (informed, once a solution exists) samples, shrinks the
/// connection radius, and resumes the ordered search.
///
/// Both queues are kept exactly sorted under lazily recomputed cost-to-come:
/// entry keys are frozen at insertion, every accepted rewiring marks the
/// queues dirty, and dirty queues are rebuilt with current keys before the
/// next pop; a freshen-on-pop backstop re-inserts any entry whose stored key
/// no longer matches. Popped best-edge keys are therefore true minima, which
/// makes each batch equivalent to an ordered search of the explicit graph.
class BitStarPlanner {
public:
    BitStarPlanner(World world, PlannerConfig config)
        : world_(std::move(world)),
          cfg_(config),
          step_(config.collision_step.value_or(world_.collision_step())),
          rng_(config.seed),
          sample_index_(world_.dimension()),
          vertex_index_(world_.dimension()),
          watch_(config.stop) {
        if (cfg_.samples_per_batch == 0)
            throw ContractViolation("BitStarPlanner: samples_per_batch must be >= 1");
        if (!(cfg_.eta >= 1.0))
            throw ContractViolation("BitStarPlanner: eta must be >= 1");
        if (!(cfg_.prune_threshold_fraction >= 0.0) || !(cfg_.prune_threshold_fraction < 1.0))
            throw ContractViolation("BitStarPlanner: prune threshold must be in [0, 1)");
        if (!(step_ > 0.0))
            throw ContractViolation("BitStarPlanner: collision step must be > 0");
        counters_.state_collision_checks += 2;
        if (!is_state_free(world_, world_.start()))
            throw ContractViolation("BitStarPlanner: start state is not free");
        if (!is_state_free(world_, world_.goal()))
            throw ContractViolation("BitStarPlanner: goal state is not free");

        c_min_ = euclidean_distance(world_.start(), world_.goal());
        free_measure_ = world_measure(world_);

        start_id_ = add_state(world_.start());  // id 0, tree root
        goal_id_ = add_state(world_.goal());    // id 1, first sample
        status_[start_id_] = Status::kVertex;
        vertex_index_.insert(start_id_, world_.start());
        status_[goal_id_] = Status::kSample;
        sample_index_.insert(goal_id_, world_.goal());
    }

    /// Runs the main loop until a stop condition fires, reporting each
    /// strict improvement of the incumbent solution through `sink`.
    PlannerResult plan(const SolutionSink& sink = nullptr) {
        sink_ = sink;
        while (step()) {
        }
        if (batch_open_)
            close_batch();
        sink_ = nullptr;
        return make_result();
    }

    /// One outer iteration: a batch boundary, or vertex expansions followed
    /// by one edge processing. Returns false once stopped.
    bool step() {
        if (done_)
            return false;
        if (watch_.out_of_time() || watch_.iterations_done(counters_.iterations)) {
            done_ = true;
            return false;
        }
        ++counters_.iterations;

        if (vertex_heap_.empty() && edge_heap_empty()) {
            if (batch_open_)
                close_batch();
            if (watch_.batches_done(batches_started_)) {
                done_ = true;
                return false;
            }
            start_new_batch();
            return true;
        }

        if (queues_dirty_)
            resort_queues();

        // Expand vertices while the best possible solution through one of
        // them is at least as good as the best queued edge's estimate.
        for (;;) {
            auto vertex_best = peek_vertex_fresh();
            if (!vertex_best)
                break;
            if (vertex_best->first <= peek_edge_fresh_key().first) {
                pop_vertex();
                expand_edges_of(vertex_best->second);
            } else {
                break;
            }
        }

        process_best_edge();
        return true;
    }

    // -- Batch-level operations (also callable directly, e.g. from tests) --

    /// Prunes states that cannot improve the incumbent, draws the next set
    /// of samples, requeues every vertex, and updates the radius.
    void start_new_batch() {
        ++batches_started_;
        ++counters_.batches;
        clear_queues();  // drop dead arena entries left by a drained batch
        const double c_best = solution_cost();

        if (std::isfinite(c_best)) {
            const bool improved_enough =
                !std::isfinite(last_prune_cost_) ||
                (last_prune_cost_ - c_best) > cfg_.prune_threshold_fraction * last_prune_cost_;
            if (improved_enough) {
                prune(c_best);
                last_prune_cost_ = c_best;
            }
        }

        draw_samples(c_best);

        for (std::size_t id = 0; id < states_.size(); ++id)
            old_vertex_[id] = status_[id] == Status::kVertex;

        vertex_heap_.clear();
        for (std::size_t id = 0; id < states_.size(); ++id)
            if (status_[id] == Status::kVertex)
                enqueue_vertex(id);

        const std::uint64_t q = vertex_index_.size() + sample_index_.size();
        radius_ = rgg_radius(q, world_.dimension(), cfg_.eta, sampling_measure(c_best));

        batch_open_ = true;
        pending_batch_ = BatchRecord{};
        pending_batch_.radius = radius_;
        pending_batch_.state_count = q;
        if (cfg_.capture_batch_states) {
            pending_batch_.states.reserve(q);
            for (std::size_t id = 0; id < states_.size(); ++id)
                if (status_[id] != Status::kDead)
                    pending_batch_.states.push_back(states_[id]);
        }
    }

    /// Removes `v` from the vertex queue and queues its outgoing edges;
    /// fails if `v` is not queued.
    void expand_vertex(std::size_t v) {
        const auto it = std::find_if(vertex_heap_.begin(), vertex_heap_.end(),
                                     [v](const auto& entry) { return entry.second == v; });
        if (it == vertex_heap_.end())
            throw ContractViolation("expand_vertex: vertex is not queued");
        vertex_heap_.erase(it);
        std::make_heap(vertex_heap_.begin(), vertex_heap_.end(), VertexOrder{});
        expand_edges_of(v);
    }

    /// Current queue key of an edge: (cost-to-come of the source + edge
    /// estimate + cost-to-go of the target, cost-to-come of the source).
    std::pair<double, double> edge_key(std::size_t v, std::size_t x) const {
        const double g = tree_.cost_to_come(v);
        return {g + euclidean_distance(states_[v], states_[x]) + h_hat_[x], g};
    }

    /// Current queue key of a vertex: cost-to-come + cost-to-go.
    double vertex_key(std::size_t v) const { return tree_.cost_to_come(v) + h_hat_[v]; }

private:
    /// Queues the outgoing edges of `v`: to samples within the radius
    /// always, and to nearby vertices (rewirings) only if `v` is new this
    /// batch and the edge could shorten the target's cost-to-come.
    void expand_edges_of(std::size_t v) {
        ++counters_.expansions;
        const double c_best = solution_cost();
        const StateVec& sv = states_[v];

        for (std::size_t x : sample_index_.near(sv, radius_)) {
            const double c_hat = euclidean_distance(sv, states_[x]);
            if (g_hat_[v] + c_hat + h_hat_[x] < c_best)
                enqueue_edge(v, x, c_hat);
        }

        if (!old_vertex_[v]) {
            const double g_t_v = tree_.cost_to_come(v);
            for (std::size_t w : vertex_index_.near(sv, radius_)) {
                if (w == v || tree_.parent(w) == v)
                    continue;
                const double c_hat = euclidean_distance(sv, states_[w]);
                if (g_hat_[v] + c_hat + h_hat_[w] < c_best &&
                    g_t_v + c_hat < tree_.cost_to_come(w))
                    enqueue_edge(v, w, c_hat);
            }
        }
    }

public:
    /// Pops the best queued edge and runs it through the three gates; an
    /// accepted edge grows or rewires the tree.
    EdgeOutcome process_best_edge() {
        auto popped = pop_edge_fresh();
        if (!popped)
            return EdgeOutcome::kQueueEmpty;
        ++counters_.edges_processed;

        // The expansion loop must have drained every vertex whose best
        // possible solution matches this edge's estimate; a remaining vertex
        // key at or below it indicates an ordering bug.
        if (auto vertex_best = peek_vertex_fresh();
            vertex_best && popped->key1 > vertex_best->first)
            ++counters_.queue_order_violations;

        const std::size_t v = popped->source;
        const std::size_t x = popped->target;
        const double c_hat = popped->c_hat;
        const double c_best = solution_cost();
        const double g_t_v = tree_.cost_to_come(v);

        // Gate 1: with the current tree, can this edge possibly better the
        // incumbent? Popped keys are true minima, so a failure here means no
        // queued edge can: the batch is exhausted.
        if (!(g_t_v + c_hat + h_hat_[x] < c_best)) {
            clear_queues();
            return EdgeOutcome::kBatchExhausted;
        }

        // Gate 2 and 3 with the true edge cost. Distance is a lower bound on
        // it, so either gate failing on distance alone settles the edge
        // without the (expensive) collision check.
        if (!(g_hat_[v] + c_hat + h_hat_[x] < c_best))
            return EdgeOutcome::kDiscarded;
        const double g_t_x = tree_.cost_to_come(x);
        if (!(g_t_v + c_hat < g_t_x))
            return EdgeOutcome::kDiscarded;

        ++counters_.motion_collision_checks;
        if (!is_motion_free(world_, states_[v], states_[x], step_))
            return EdgeOutcome::kDiscarded;

        const bool was_vertex = status_[x] == Status::kVertex;
        tree_.set_parent(x, v, c_hat);
        if (was_vertex) {
            ++counters_.rewirings;
            queues_dirty_ = true;
        } else {
            status_[x] = Status::kVertex;
            sample_index_.remove(x);
            vertex_index_.insert(x, states_[x]);
            enqueue_vertex(x);
        }

        // Drop queued edges into x that the new cost-to-come dominates.
        const double g_t_x_new = tree_.cost_to_come(x);
        if (auto it = edges_by_target_.find(x); it != edges_by_target_.end()) {
            for (std::size_t idx : it->second) {
                EdgeEntry& e = edge_pool_[idx];
                if (e.alive && tree_.cost_to_come(e.source) + e.c_hat >= g_t_x_new)
                    e.alive = false;
            }
        }

        maybe_emit_solution();
        return was_vertex ? EdgeOutcome::kRewired : EdgeOutcome::kExpanded;
    }

    /// Removes every state that cannot contribute to a solution better than
    /// `cost`: samples at estimated total cost >= cost, vertices strictly
    /// above it, and disconnected leftovers (returned to the sample set when
    /// still estimated below cost, discarded otherwise).
    void prune(double cost) {
        ++counters_.prunes;
        for (std::size_t id = 0; id < states_.size(); ++id) {
            if (status_[id] == Status::kSample && g_hat_[id] + h_hat_[id] >= cost) {
                status_[id] = Status::kDead;
                sample_index_.remove(id);
                ++counters_.pruned_samples;
            }
        }
        for (std::size_t id = 0; id < states_.size(); ++id) {
            if (status_[id] == Status::kVertex && g_hat_[id] + h_hat_[id] > cost) {
                status_[id] = Status::kDead;
                vertex_index_.remove(id);
                if (id != 0)
                    tree_.detach(id);
                ++counters_.pruned_vertices;
            }
        }
        // Vertices disconnected by the removals (infinite cost-to-come).
        for (std::size_t id = 0; id < states_.size(); ++id) {
            if (status_[id] != Status::kVertex || std::isfinite(tree_.cost_to_come(id)))
                continue;
            vertex_index_.remove(id);
            if (g_hat_[id] + h_hat_[id] < cost) {
                status_[id] = Status::kSample;
                sample_index_.insert(id, states_[id]);
            } else {
                status_[id] = Status::kDead;
                ++counters_.pruned_vertices;
            }
        }
    }

    // -- Introspection --

    double solution_cost() const { return tree_.cost_to_come(goal_id_); }
    double radius() const { return radius_; }
    double min_possible_cost() const { return c_min_; }
    const World& world() const { return world_; }
    const PlannerCounters& counters() const { return counters_; }
    const SearchTree& tree() const { return tree_; }
    const StateVec& state(std::size_t id) const { return states_[id]; }
    std::size_t state_count() const { return states_.size(); }
    bool is_vertex(std::size_t id) const { return status_[id] == Status::kVertex; }
    bool is_sample(std::size_t id) const { return status_[id] == Status::kSample; }
    std::size_t vertex_count() const { return vertex_index_.size(); }
    std::size_t sample_count() const { return sample_index_.size(); }
    std::size_t vertex_queue_size() const { return vertex_heap_.size(); }

    std::size_t edge_queue_size() const {
        std::size_t n = 0;
        for (const EdgeEntry& e : edge_pool_)
            n += e.alive ? 1 : 0;
        return n;
    }

    struct QueuedEdge {
        std::size_t source;
        std::size_t target;
        double key1;
        double key2;
    };

    /// Alive edge-queue entries with freshly computed keys, best first.
    std::vector<QueuedEdge> edge_queue_entries() const {
        std::vector<QueuedEdge> out;
        for (const EdgeEntry& e : edge_pool_)
            if (e.alive)
                out.push_back(QueuedEdge{e.source, e.target,
                                         tree_.cost_to_come(e.source) + e.c_hat + h_hat_[e.target],
                                         tree_.cost_to_come(e.source)});
        std::sort(out.begin(), out.end(), [](const QueuedEdge& a, const QueuedEdge& b) {
            return std::tie(a.key1, a.key2, a.source, a.target) <
                   std::tie(b.key1, b.key2, b.source, b.target);
        });
        return out;
    }

    /// Test hook: drops a state into the sample set, bypassing sampling.
    std::size_t inject_sample(const StateVec& x) {
        const std::size_t id = add_state(x);
        status_[id] = Status::kSample;
        sample_index_.insert(id, x);
        return id;
    }

    /// Test hook: overrides the connection radius.
    void set_radius(double r) { radius_ = r; }

    /// Test hook: queues one vertex (normally start_new_batch queues all).
    void enqueue_vertex(std::size_t v) {
        vertex_heap_.push_back({tree_.cost_to_come(v) + h_hat_[v], v});
        std::push_heap(vertex_heap_.begin(), vertex_heap_.end(), VertexOrder{});
    }

    Path extract_path() const {
        if (!std::isfinite(solution_cost()))
            throw ContractViolation("BitStarPlanner: no solution to extract");
        Path path;
        for (std::size_t id : tree_.branch(goal_id_))
            path.waypoints.push_back(states_[id]);
        path.cost = solution_cost();
        return path;
    }

    PlannerResult make_result() const {
        PlannerResult result;
        if (std::isfinite(solution_cost()))
            result.path = extract_path();
        result.events = events_;
        result.counters = counters_;
        result.batches = batch_records_;
        if (cfg_.capture_tree) {
            for (std::size_t id = 1; id < states_.size(); ++id)
                if (status_[id] == Status::kVertex && tree_.in_tree(id))
                    result.tree_edges.emplace_back(states_[tree_.parent(id)], states_[id]);
        }
        return result;
    }

private:
    enum class Status : char { kSample, kVertex, kDead };

    struct EdgeEntry {
        std::size_t source;
        std::size_t target;
        double c_hat;
        double key1;
        double key2;
        bool alive;
    };

    // Max-heaps via "greater" ordering; ties break on ids for determinism.
    struct VertexOrder {
        bool operator()(const std::pair<double, std::size_t>& a,
                        const std::pair<double, std::size_t>& b) const {
            return std::tie(a.first, a.second) > std::tie(b.first, b.second);
        }
    };

    struct EdgeHeapItem {
        double key1;
        double key2;
        std::size_t pool_index;
    };
    struct EdgeOrder {
        const std::vector<EdgeEntry>* pool;
        bool operator()(const EdgeHeapItem& a, const EdgeHeapItem& b) const {
            const EdgeEntry& ea = (*pool)[a.pool_index];
            const EdgeEntry& eb = (*pool)[b.pool_index];
            return std::tie(a.key1, a.key2, ea.source, ea.target) >
                   std::tie(b.key1, b.key2, eb.source, eb.target);
        }
    };

    std::size_t add_state(const StateVec& x) {
        const std::size_t id = states_.size();
        states_.push_back(x);
        status_.push_back(Status::kDead);
        old_vertex_.push_back(false);
        g_hat_.push_back(euclidean_distance(world_.start(), x));
        h_hat_.push_back(euclidean_distance(x, world_.goal()));
        tree_.add_node();
        return id;
    }

    double sampling_measure(double c_best) const {
        if (!std::isfinite(c_best))
            return free_measure_;
        if (!(c_best > c_min_))
            return 0.0;  // incumbent already optimal (within fp noise)
        return std::min(free_measure_, phs_measure(world_.dimension(), c_best, c_min_));
    }

    void draw_samples(double c_best) {
        std::optional<ProlateHyperspheroid> phs;
        if (std::isfinite(c_best) && c_best > c_min_)
            phs.emplace(world_.start(), world_.goal(), c_best);

        InformedSampleStats stats;
        std::uint32_t accepted = 0;
        std::uint64_t rejected = 0;
        while (accepted < cfg_.samples_per_batch) {
            StateVec x = phs ? sample_informed(*phs, world_.bounds(), rng_, &stats)
                             : sample_uniform(world_.bounds(), rng_);
            ++counters_.state_collision_checks;
            if (is_state_free(world_, x)) {
                const std::size_t id = add_state(x);
                status_[id] = Status::kSample;
                sample_index_.insert(id, x);
                ++accepted;
                ++counters_.samples_generated;
            } else if ((++rejected & 0xfff) == 0 && watch_.out_of_time()) {
                break;  // budget exhausted while hunting for free samples
            }
        }
        counters_.informed_bounds_rejections += stats.bounds_rejections;
    }

    void enqueue_edge(std::size_t v, std::size_t x, double c_hat) {
        auto& entries = edges_by_target_[x];
        for (std::size_t idx : entries)
            if (edge_pool_[idx].source == v)
                ++counters_.duplicate_edge_insertions;

        const double key2 = tree_.cost_to_come(v);
        const double key1 = key2 + c_hat + h_hat_[x];
        const std::size_t idx = edge_pool_.size();
        edge_pool_.push_back(EdgeEntry{v, x, c_hat, key1, key2, true});
        entries.push_back(idx);
        edge_heap_.push_back(EdgeHeapItem{key1, key2, idx});
        std::push_heap(edge_heap_.begin(), edge_heap_.end(), EdgeOrder{&edge_pool_});
    }

    bool edge_heap_empty() const {
        for (const EdgeHeapItem& item : edge_heap_)
            if (edge_pool_[item.pool_index].alive)
                return false;
        return true;
    }

    /// Best alive vertex-queue entry with a current key; stale tops are
    /// re-keyed and pushed back down until the top is fresh.
    std::optional<std::pair<double, std::size_t>> peek_vertex_fresh() {
        while (!vertex_heap_.empty()) {
            const auto top = vertex_heap_.front();
            const double fresh = tree_.cost_to_come(top.second) + h_hat_[top.second];
            if (fresh == top.first)
                return top;
            std::pop_heap(vertex_heap_.begin(), vertex_heap_.end(), VertexOrder{});
            vertex_heap_.back().first = fresh;
            std::push_heap(vertex_heap_.begin(), vertex_heap_.end(), VertexOrder{});
        }
        return std::nullopt;
    }

    void pop_vertex() {
        std::pop_heap(vertex_heap_.begin(), vertex_heap_.end(), VertexOrder{});
        vertex_heap_.pop_back();
    }

    /// Fresh key of the best alive edge entry, (inf, inf) when empty.
    std::pair<double, double> peek_edge_fresh_key() {
        for (;;) {
            while (!edge_heap_.empty() && !edge_pool_[edge_heap_.front().pool_index].alive) {
                std::pop_heap(edge_heap_.begin(), edge_heap_.end(), EdgeOrder{&edge_pool_});
                edge_heap_.pop_back();
            }
            if (edge_heap_.empty())
                return {kInf, kInf};
            EdgeHeapItem top = edge_heap_.front();
            EdgeEntry& e = edge_pool_[top.pool_index];
            const double fresh2 = tree_.cost_to_come(e.source);
            const double fresh1 = fresh2 + e.c_hat + h_hat_[e.target];
            if (fresh1 == top.key1 && fresh2 == top.key2)
                return {fresh1, fresh2};
            std::pop_heap(edge_heap_.begin(), edge_heap_.end(), EdgeOrder{&edge_pool_});
            edge_heap_.back().key1 = fresh1;
            edge_heap_.back().key2 = fresh2;
            e.key1 = fresh1;
            e.key2 = fresh2;
            std::push_heap(edge_heap_.begin(), edge_heap_.end(), EdgeOrder{&edge_pool_});
        }
    }

    std::optional<EdgeEntry> pop_edge_fresh() {
        peek_edge_fresh_key();  // drain dead tops, freshen the best entry
        if (edge_heap_.empty())
            return std::nullopt;
        const std::size_t idx = edge_heap_.front().pool_index;
        std::pop_heap(edge_heap_.begin(), edge_heap_.end(), EdgeOrder{&edge_pool_});
        edge_heap_.pop_back();
        EdgeEntry& e = edge_pool_[idx];
        e.alive = false;
        const EdgeEntry copy = e;

        // Instrumented exactness check: the next fresh best must not be
        // strictly better than what was just returned.
        const auto next = peek_edge_fresh_key();
        if (std::tie(next.first, next.second) < std::tie(copy.key1, copy.key2))
            ++counters_.queue_order_violations;
        return copy;
    }

    void resort_queues() {
        for (auto& entry : vertex_heap_)
            entry.first = tree_.cost_to_come(entry.second) + h_hat_[entry.second];
        std::make_heap(vertex_heap_.begin(), vertex_heap_.end(), VertexOrder{});

        std::vector<EdgeHeapItem> rebuilt;
        rebuilt.reserve(edge_heap_.size());
        for (const EdgeHeapItem& item : edge_heap_) {
            EdgeEntry& e = edge_pool_[item.pool_index];
            if (!e.alive)
                continue;
            e.key2 = tree_.cost_to_come(e.source);
            e.key1 = e.key2 + e.c_hat + h_hat_[e.target];
            rebuilt.push_back(EdgeHeapItem{e.key1, e.key2, item.pool_index});
        }
        edge_heap_ = std::move(rebuilt);
        std::make_heap(edge_heap_.begin(), edge_heap_.end(), EdgeOrder{&edge_pool_});
        queues_dirty_ = false;
    }

    void clear_queues() {
        vertex_heap_.clear();
        edge_heap_.clear();
        edge_pool_.clear();
        edges_by_target_.clear();
        queues_dirty_ = false;
    }

    void maybe_emit_solution() {
        const double cost = solution_cost();
        if (cost < best_cost_seen_) {
            best_cost_seen_ = cost;
            const CostEvent event{watch_.elapsed_us(), cost};
            events_.push_back(event);
            if (sink_)
                sink_(event);
        }
    }

    void close_batch() {
        pending_batch_.cost_at_end = solution_cost();
        batch_records_.push_back(std::move(pending_batch_));
        pending_batch_ = BatchRecord{};
        batch_open_ = false;
    }

    World world_;
    PlannerConfig cfg_;
    double step_;
    RngStream rng_;
    PointIndex sample_index_;
    PointIndex vertex_index_;
    StopWatch watch_;

    std::size_t start_id_ = 0;
    std::size_t goal_id_ = 1;
    double c_min_ = kInf;
    double free_measure_ = 0.0;

    std::vector<StateVec> states_;
    std::vector<Status> status_;
    std::vector<bool> old_vertex_;
    std::vector<double> g_hat_;
    std::vector<double> h_hat_;
    SearchTree tree_;

    std::vector<std::pair<double, std::size_t>> vertex_heap_;
    std::vector<EdgeHeapItem> edge_heap_;
    std::vector<EdgeEntry> edge_pool_;
    std::unordered_map<std::size_t, std::vector<std::size_t>> edges_by_target_;
    bool queues_dirty_ = false;

    double radius_ = kInf;
    double last_prune_cost_ = kInf;
    double best_cost_seen_ = kInf;
    std::uint64_t batches_started_ = 0;
    bool batch_open_ = false;
    bool done_ = false;
    BatchRecord pending_batch_;
    std::vector<BatchRecord> batch_records_;
    std::vector<CostEvent> events_;
    PlannerCounters counters_;
    SolutionSink sink_;
};

}  // namespace rggplan

#endif  // RGGPLAN_BITSTAR_HPP
