#ifndef RGGPLAN_NN_HPP
#define RGGPLAN_NN_HPP

#include <algorithm>
#include <cstddef>
#include <unordered_map>
#include <vector>

#include "core.hpp"

namespace rggplan {

/// Exact nearest-neighbour index over points with opaque ids, backed by an
/// incrementally grown kd-tree. Removal tombstones the node; the tree is
/// rebuilt balanced once half the nodes are dead. Ties in nearest() break
/// towards the smallest id, and near() returns ids in ascending order, so
/// all query results are deterministic.
class PointIndex {
public:
    explicit PointIndex(std::size_t dimension) : dim_(dimension) {
        if (dim_ == 0)
            throw ContractViolation("PointIndex: dimension must be >= 1");
    }

    std::size_t dimension() const { return dim_; }
    std::size_t size() const { return alive_count_; }
    bool contains(std::size_t id) const { return slot_of_.count(id) != 0; }

    void insert(std::size_t id, const StateVec& point) {
        if (point.size() != dim_)
            throw ContractViolation("PointIndex::insert: dimension mismatch");
        if (contains(id))
            throw ContractViolation("PointIndex::insert: duplicate id");
        const std::size_t slot = nodes_.size();
        nodes_.push_back(Node{id, kNone, kNone, true});
        coords_.insert(coords_.end(), point.begin(), point.end());
        slot_of_.emplace(id, slot);
        ++alive_count_;

        if (root_ == kNone) {
            root_ = slot;
            return;
        }
        std::size_t cur = root_;
        std::size_t depth = 0;
        for (;;) {
            const std::size_t axis = depth % dim_;
            std::size_t& child =
                point[axis] < coord(cur, axis) ? nodes_[cur].left : nodes_[cur].right;
            if (child == kNone) {
                child = slot;
                return;
            }
            cur = child;
            ++depth;
        }
    }

    void remove(std::size_t id) {
        auto it = slot_of_.find(id);
        if (it == slot_of_.end())
            throw ContractViolation("PointIndex::remove: unknown id");
        nodes_[it->second].alive = false;
        slot_of_.erase(it);
        --alive_count_;
        if (alive_count_ >= 16 && nodes_.size() > 2 * alive_count_)
            rebuild();
        else if (alive_count_ == 0)
            clear_storage();
    }

    /// Id of the closest point (ties to the smallest id). Requires a
    /// nonempty index.
    std::size_t nearest(const StateVec& query) const {
        if (query.size() != dim_)
            throw ContractViolation("PointIndex::nearest: dimension mismatch");
        if (alive_count_ == 0)
            throw ContractViolation("PointIndex::nearest: empty index");
        std::size_t best_id = 0;
        double best_sq = kInf;
        nearest_walk(root_, query, 0, best_sq, best_id);
        return best_id;
    }

    /// Ids of all points within the closed ball of radius r, ascending.
    std::vector<std::size_t> near(const StateVec& query, double radius) const {
        if (query.size() != dim_)
            throw ContractViolation("PointIndex::near: dimension mismatch");
        if (!(radius >= 0.0))
            throw ContractViolation("PointIndex::near: radius must be >= 0");
        std::vector<std::size_t> out;
        near_walk(root_, query, radius, radius * radius, 0, out);
        std::sort(out.begin(), out.end());
        return out;
    }

    StateVec point(std::size_t id) const {
        auto it = slot_of_.find(id);
        if (it == slot_of_.end())
            throw ContractViolation("PointIndex::point: unknown id");
        const double* p = &coords_[it->second * dim_];
        return StateVec(p, p + dim_);
    }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    struct Node {
        std::size_t id;
        std::size_t left;
        std::size_t right;
        bool alive;
    };

    double coord(std::size_t slot, std::size_t axis) const {
        return coords_[slot * dim_ + axis];
    }

    double dist_sq(std::size_t slot, const StateVec& query) const {
        const double* p = &coords_[slot * dim_];
        double sq = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            const double d = p[i] - query[i];
            sq += d * d;
        }
        return sq;
    }

    void nearest_walk(std::size_t slot, const StateVec& query, std::size_t depth,
                      double& best_sq, std::size_t& best_id) const {
        if (slot == kNone)
            return;
        const Node& node = nodes_[slot];
        if (node.alive) {
            const double sq = dist_sq(slot, query);
            if (sq < best_sq || (sq == best_sq && node.id < best_id)) {
                best_sq = sq;
                best_id = node.id;
            }
        }
        const std::size_t axis = depth % dim_;
        const double gap = query[axis] - coord(slot, axis);
        const std::size_t first = gap < 0.0 ? node.left : node.right;
        const std::size_t second = gap < 0.0 ? node.right : node.left;
        nearest_walk(first, query, depth + 1, best_sq, best_id);
        // A point in the far half-space is at least |gap| away; descend when
        // it could still match the incumbent (equal distance, smaller id).
        if (gap * gap <= best_sq)
            nearest_walk(second, query, depth + 1, best_sq, best_id);
    }

    void near_walk(std::size_t slot, const StateVec& query, double radius, double radius_sq,
                   std::size_t depth, std::vector<std::size_t>& out) const {
        if (slot == kNone)
            return;
        const Node& node = nodes_[slot];
        if (node.alive && dist_sq(slot, query) <= radius_sq)
            out.push_back(node.id);
        const std::size_t axis = depth % dim_;
        const double c = coord(slot, axis);
        // Either subtree may hold coords equal to c (inserts send ties right,
        // rebuilds split ties by id), so both descent tests are inclusive.
        if (query[axis] - radius <= c)
            near_walk(node.left, query, radius, radius_sq, depth + 1, out);
        if (query[axis] + radius >= c)
            near_walk(node.right, query, radius, radius_sq, depth + 1, out);
    }

    void clear_storage() {
        nodes_.clear();
        coords_.clear();
        root_ = kNone;
    }

    void rebuild() {
        std::vector<std::size_t> alive;
        alive.reserve(alive_count_);
        for (std::size_t slot = 0; slot < nodes_.size(); ++slot)
            if (nodes_[slot].alive)
                alive.push_back(slot);

        std::vector<Node> new_nodes;
        std::vector<double> new_coords;
        new_nodes.reserve(alive.size());
        new_coords.reserve(alive.size() * dim_);
        slot_of_.clear();
        root_ = build_balanced(alive, 0, alive.size(), 0, new_nodes, new_coords);
        nodes_ = std::move(new_nodes);
        coords_ = std::move(new_coords);
    }

    std::size_t build_balanced(std::vector<std::size_t>& slots, std::size_t begin,
                               std::size_t end, std::size_t depth, std::vector<Node>& out_nodes,
                               std::vector<double>& out_coords) {
        if (begin == end)
            return kNone;
        const std::size_t axis = depth % dim_;
        const std::size_t mid = begin + (end - begin) / 2;
        std::nth_element(slots.begin() + static_cast<std::ptrdiff_t>(begin),
                         slots.begin() + static_cast<std::ptrdiff_t>(mid),
                         slots.begin() + static_cast<std::ptrdiff_t>(end),
                         [&](std::size_t a, std::size_t b) {
                             const double ca = coord(a, axis);
                             const double cb = coord(b, axis);
                             if (ca != cb)
                                 return ca < cb;
                             return nodes_[a].id < nodes_[b].id;
                         });
        const std::size_t old_slot = slots[mid];
        const std::size_t new_slot = out_nodes.size();
        out_nodes.push_back(Node{nodes_[old_slot].id, kNone, kNone, true});
        const double* p = &coords_[old_slot * dim_];
        out_coords.insert(out_coords.end(), p, p + dim_);
        slot_of_.emplace(nodes_[old_slot].id, new_slot);
        out_nodes[new_slot].left =
            build_balanced(slots, begin, mid, depth + 1, out_nodes, out_coords);
        out_nodes[new_slot].right =
            build_balanced(slots, mid + 1, end, depth + 1, out_nodes, out_coords);
        return new_slot;
    }

    std::size_t dim_;
    std::vector<Node> nodes_;
    std::vector<double> coords_;  // nodes_.size() * dim_, parallel to nodes_
    std::unordered_map<std::size_t, std::size_t> slot_of_;
    std::size_t root_ = kNone;
    std::size_t alive_count_ = 0;
};

}  // namespace rggplan

#endif  // RGGPLAN_NN_HPP
