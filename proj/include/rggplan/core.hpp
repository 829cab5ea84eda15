#ifndef RGGPLAN_CORE_HPP
#define RGGPLAN_CORE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

/// Core spatial primitives: states, axis-aligned boxes, worlds, paths, and
/// the collision / measure operations everything else is built on.
namespace rggplan {

/// A point in the n-dimensional state space.
using StateVec = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Thrown when an operation's preconditions are violated.
class ContractViolation : public std::invalid_argument {
public:
    explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

inline double euclidean_distance(const StateVec& a, const StateVec& b) {
    if (a.size() != b.size())
        throw ContractViolation("euclidean_distance: dimension mismatch");
    double sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = b[i] - a[i];
        sq += d * d;
    }
    return std::sqrt(sq);
}

/// Axis-aligned hyperrectangle, treated as a closed set.
struct Box {
    StateVec lo;
    StateVec hi;

    Box() = default;
    Box(StateVec lo_, StateVec hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
        if (lo.size() != hi.size())
            throw ContractViolation("Box: lo/hi dimension mismatch");
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (!(lo[i] <= hi[i]))
                throw ContractViolation("Box: lo[" + std::to_string(i) + "] > hi[" + std::to_string(i) + "]");
    }

    std::size_t dimension() const { return lo.size(); }

    bool contains(const StateVec& x) const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (x[i] < lo[i] || x[i] > hi[i])
                return false;
        return true;
    }

    bool intersects(const Box& other) const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (lo[i] > other.hi[i] || hi[i] < other.lo[i])
                return false;
        return true;
    }

    double volume() const {
        double v = 1.0;
        for (std::size_t i = 0; i < lo.size(); ++i)
            v *= hi[i] - lo[i];
        return v;
    }

    double max_extent() const {
        double m = 0.0;
        for (std::size_t i = 0; i < lo.size(); ++i)
            m = std::max(m, hi[i] - lo[i]);
        return m;
    }
};

/// Planning problem geometry: bounds, closed box obstacles, and the
/// start/goal pair. Immutable after construction; obstacles are closed
/// sets, so touching a boundary counts as a collision.
class World {
public:
    World(Box bounds, std::vector<Box> obstacles, StateVec start, StateVec goal)
        : bounds_(std::move(bounds)),
          obstacles_(std::move(obstacles)),
          start_(std::move(start)),
          goal_(std::move(goal)) {
        validate();
        collision_step_ = 0.002 * bounds_.max_extent();
    }

    std::size_t dimension() const { return bounds_.dimension(); }
    const Box& bounds() const { return bounds_; }
    const std::vector<Box>& obstacles() const { return obstacles_; }
    const StateVec& start() const { return start_; }
    const StateVec& goal() const { return goal_; }

    /// Interpolation spacing used by motion checks unless overridden.
    double collision_step() const { return collision_step_; }
    void set_collision_step(double step) {
        if (!(step > 0.0))
            throw ContractViolation("World: collision step must be positive");
        collision_step_ = step;
    }

private:
    void validate() const {
        const std::size_t n = bounds_.dimension();
        if (n == 0)
            throw ContractViolation("World: dimension must be positive");
        auto check_state = [&](const StateVec& x, const char* name) {
            if (x.size() != n)
                throw ContractViolation(std::string("World: ") + name + " has wrong dimension");
            for (double c : x)
                if (!std::isfinite(c))
                    throw ContractViolation(std::string("World: ") + name + " has non-finite coordinate");
            if (!bounds_.contains(x))
                throw ContractViolation(std::string("World: ") + name + " outside bounds");
        };
        check_state(start_, "start");
        check_state(goal_, "goal");
        for (std::size_t i = 0; i < obstacles_.size(); ++i) {
            if (obstacles_[i].dimension() != n)
                throw ContractViolation("World: obstacle " + std::to_string(i) + " has wrong dimension");
            if (!obstacles_[i].intersects(bounds_))
                throw ContractViolation("World: obstacle " + std::to_string(i) + " does not intersect bounds");
        }
        for (const Box& obs : obstacles_) {
            if (obs.contains(start_))
                throw ContractViolation("World: start is in collision");
            if (obs.contains(goal_))
                throw ContractViolation("World: goal is in collision");
        }
    }

    Box bounds_;
    std::vector<Box> obstacles_;
    StateVec start_;
    StateVec goal_;
    double collision_step_ = 0.0;
};

/// Membership in the free space: inside bounds and inside no obstacle.
inline bool is_state_free(const World& world, const StateVec& x) {
    if (x.size() != world.dimension())
        throw ContractViolation("is_state_free: dimension mismatch");
    if (!world.bounds().contains(x))
        return false;
    for (const Box& obs : world.obstacles())
        if (obs.contains(x))
            return false;
    return true;
}

/// Checks the segment [a,b] at interpolation spacing <= step, endpoints
/// included. The endpoint order is canonicalized so the checked point
/// sequence (and hence the result) is symmetric in a and b.
inline bool is_motion_free(const World& world, const StateVec& a, const StateVec& b, double step) {
    if (!(step > 0.0))
        throw ContractViolation("is_motion_free: step must be positive");
    if (a.size() != world.dimension() || b.size() != world.dimension())
        throw ContractViolation("is_motion_free: dimension mismatch");

    const StateVec* lo = &a;
    const StateVec* hi = &b;
    if (std::lexicographical_compare(hi->begin(), hi->end(), lo->begin(), lo->end()))
        std::swap(lo, hi);

    const double len = euclidean_distance(*lo, *hi);
    if (len == 0.0)
        return is_state_free(world, *lo);

    const auto segments = static_cast<std::size_t>(std::ceil(len / step));
    StateVec pt(world.dimension());
    for (std::size_t i = 0; i <= segments; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(segments);
        for (std::size_t d = 0; d < pt.size(); ++d)
            pt[d] = (*lo)[d] + t * ((*hi)[d] - (*lo)[d]);
        if (!is_state_free(world, pt))
            return false;
    }
    return true;
}

inline bool is_motion_free(const World& world, const StateVec& a, const StateVec& b) {
    return is_motion_free(world, a, b, world.collision_step());
}

/// Lebesgue measure of the n-dimensional unit ball: pi^(n/2) / Gamma(n/2 + 1).
inline double unit_ball_measure(std::size_t n) {
    if (n == 0)
        throw ContractViolation("unit_ball_measure: n must be >= 1");
    const double nd = static_cast<double>(n);
    return std::pow(std::numbers::pi, nd / 2.0) / std::tgamma(nd / 2.0 + 1.0);
}

/// Measure of the whole state space (the bounds volume).
inline double world_measure(const World& world) {
    return world.bounds().volume();
}

/// Polygonal path from start to goal; cost is the polyline length.
struct Path {
    std::vector<StateVec> waypoints;
    double cost = 0.0;
};

inline double polyline_length(const std::vector<StateVec>& waypoints) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < waypoints.size(); ++i)
        total += euclidean_distance(waypoints[i], waypoints[i + 1]);
    return total;
}

}  // namespace rggplan

#endif  // RGGPLAN_CORE_HPP
