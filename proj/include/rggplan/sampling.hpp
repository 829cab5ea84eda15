#ifndef RGGPLAN_SAMPLING_HPP
#define RGGPLAN_SAMPLING_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "core.hpp"
#include "rng.hpp"

/// Uniform and informed (prolate-hyperspheroid) state sampling.
namespace rggplan {

inline StateVec sample_uniform(const Box& box, RngStream& rng) {
    StateVec x(box.dimension());
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = rng.uniform(box.lo[i], box.hi[i]);
    return x;
}

/// Uniform sample from the closed unit n-ball: isotropic Gaussian
/// direction, radius U^(1/n).
inline StateVec sample_unit_ball(std::size_t n, RngStream& rng) {
    if (n == 0)
        throw ContractViolation("sample_unit_ball: n must be >= 1");
    StateVec x(n);
    double norm_sq = 0.0;
    do {
        norm_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = rng.gaussian();
            norm_sq += x[i] * x[i];
        }
    } while (norm_sq == 0.0);
    const double scale = std::pow(rng.next_double(), 1.0 / static_cast<double>(n)) / std::sqrt(norm_sq);
    for (double& c : x)
        c *= scale;
    return x;
}

/// Dense square matrix, row-major. Only what the sampler needs.
struct RotationMatrix {
    std::size_t n = 0;
    std::vector<double> data;  // n*n, row-major

    static RotationMatrix identity(std::size_t n) {
        RotationMatrix m;
        m.n = n;
        m.data.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            m.data[i * n + i] = 1.0;
        return m;
    }

    double at(std::size_t i, std::size_t j) const { return data[i * n + j]; }

    StateVec apply(const StateVec& v) const {
        StateVec out(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                acc += data[i * n + j] * v[j];
            out[i] = acc;
        }
        return out;
    }
};

/// Rotation taking the first coordinate axis onto the unit vector from
/// `from` to `to`, built from a single Householder reflection with the
/// last column negated to restore determinant +1. Degenerates to the
/// identity when the direction already is the first axis (within fp
/// noise); in one dimension the result is the 1x1 matrix [+-1].
inline RotationMatrix transverse_rotation(const StateVec& from, const StateVec& to) {
    const std::size_t n = from.size();
    if (n == 0 || to.size() != n)
        throw ContractViolation("transverse_rotation: dimension mismatch");
    const double len = euclidean_distance(from, to);
    if (!(len > 0.0))
        throw ContractViolation("transverse_rotation: endpoints coincide");

    StateVec axis(n);
    for (std::size_t i = 0; i < n; ++i)
        axis[i] = (to[i] - from[i]) / len;

    if (n == 1) {
        RotationMatrix m;
        m.n = 1;
        m.data = {axis[0] >= 0.0 ? 1.0 : -1.0};
        return m;
    }

    // u = axis - e1; H = I - 2 u u^T / |u|^2 maps e1 onto axis.
    StateVec u = axis;
    u[0] -= 1.0;
    double u_sq = 0.0;
    for (double c : u)
        u_sq += c * c;
    if (u_sq < 1e-24)
        return RotationMatrix::identity(n);

    RotationMatrix m = RotationMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.data[i * n + j] -= 2.0 * u[i] * u[j] / u_sq;
    // The reflection has determinant -1; flipping the last column makes it a
    // proper rotation and leaves the image of e1 untouched.
    for (std::size_t i = 0; i < n; ++i)
        m.data[i * n + (n - 1)] = -m.data[i * n + (n - 1)];
    return m;
}

/// Measure of the prolate hyperspheroid with transverse diameter c_best and
/// focal distance c_min: zeta_n * (c_best/2) * (sqrt(c_best^2-c_min^2)/2)^(n-1).
inline double phs_measure(std::size_t n, double c_best, double c_min) {
    if (n == 0)
        throw ContractViolation("phs_measure: n must be >= 1");
    if (!(c_min >= 0.0) || !(c_best >= c_min) || !std::isfinite(c_best))
        throw ContractViolation("phs_measure: need 0 <= c_min <= c_best < inf");
    const double conjugate_radius = std::sqrt(c_best * c_best - c_min * c_min) / 2.0;
    return unit_ball_measure(n) * (c_best / 2.0) *
           std::pow(conjugate_radius, static_cast<double>(n) - 1.0);
}

/// Prolate hyperspheroid with the start/goal pair as foci: the set of
/// states whose path length through them is at most the transverse
/// diameter. Supports uniform direct sampling via a unit-ball warp.
class ProlateHyperspheroid {
public:
    ProlateHyperspheroid(StateVec focus_a, StateVec focus_b, double transverse_diameter)
        : focus_a_(std::move(focus_a)),
          focus_b_(std::move(focus_b)),
          transverse_diameter_(transverse_diameter) {
        const std::size_t n = focus_a_.size();
        if (n == 0 || focus_b_.size() != n)
            throw ContractViolation("ProlateHyperspheroid: dimension mismatch");
        focal_distance_ = euclidean_distance(focus_a_, focus_b_);
        if (!(focal_distance_ > 0.0))
            throw ContractViolation("ProlateHyperspheroid: foci coincide");
        if (!std::isfinite(transverse_diameter_) || !(transverse_diameter_ >= focal_distance_))
            throw ContractViolation(
                "ProlateHyperspheroid: transverse diameter must be finite and >= focal distance");
        rotation_ = transverse_rotation(focus_a_, focus_b_);
        centre_.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            centre_[i] = 0.5 * (focus_a_[i] + focus_b_[i]);
        radii_.assign(n, std::sqrt(transverse_diameter_ * transverse_diameter_ -
                                   focal_distance_ * focal_distance_) /
                             2.0);
        radii_[0] = transverse_diameter_ / 2.0;
    }

    std::size_t dimension() const { return focus_a_.size(); }
    const StateVec& focus_a() const { return focus_a_; }
    const StateVec& focus_b() const { return focus_b_; }
    double transverse_diameter() const { return transverse_diameter_; }
    double focal_distance() const { return focal_distance_; }
    const RotationMatrix& rotation() const { return rotation_; }
    const StateVec& centre() const { return centre_; }
    const StateVec& radii() const { return radii_; }

    double measure() const {
        return phs_measure(dimension(), transverse_diameter_, focal_distance_);
    }

    /// Membership: path length through the foci at most the transverse
    /// diameter (plus a small absolute tolerance for fp round-off).
    bool contains(const StateVec& x, double tol = 1e-9) const {
        return euclidean_distance(focus_a_, x) + euclidean_distance(x, focus_b_) <=
               transverse_diameter_ + tol;
    }

    /// Uniform sample from the spheroid: unit-ball sample, axis scale,
    /// rotation into the transverse frame, translation to the centre.
    StateVec sample(RngStream& rng) const {
        const std::size_t n = dimension();
        StateVec ball = sample_unit_ball(n, rng);
        for (std::size_t i = 0; i < n; ++i)
            ball[i] *= radii_[i];
        StateVec out = rotation_.apply(ball);
        for (std::size_t i = 0; i < n; ++i)
            out[i] += centre_[i];
        return out;
    }

    /// Axis-aligned bounding box of the spheroid.
    Box aabb() const {
        const std::size_t n = dimension();
        StateVec lo(n), hi(n);
        for (std::size_t i = 0; i < n; ++i) {
            double half = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double e = rotation_.at(i, j) * radii_[j];
                half += e * e;
            }
            half = std::sqrt(half);
            lo[i] = centre_[i] - half;
            hi[i] = centre_[i] + half;
        }
        return Box(std::move(lo), std::move(hi));
    }

private:
    StateVec focus_a_;
    StateVec focus_b_;
    double transverse_diameter_ = 0.0;
    double focal_distance_ = 0.0;
    RotationMatrix rotation_;
    StateVec centre_;
    StateVec radii_;
};

/// Diagnostics for informed sampling; rejections count draws that landed
/// outside the problem bounds and were redrawn.
struct InformedSampleStats {
    std::uint64_t bounds_rejections = 0;
};

/// Uniform sample from (spheroid intersect bounds) by unbounded rejection.
/// The intersection is nonempty whenever the foci lie inside the bounds.
inline StateVec sample_informed(const ProlateHyperspheroid& phs, const Box& bounds,
                                RngStream& rng, InformedSampleStats* stats = nullptr) {
    for (;;) {
        StateVec x = phs.sample(rng);
        if (bounds.contains(x))
            return x;
        if (stats != nullptr)
            ++stats->bounds_rejections;
    }
}

/// Informed sampling with an optional solution cost: infinite cost means no
/// solution yet, which degrades to uniform sampling over the bounds.
inline StateVec sample_informed(const StateVec& start, const StateVec& goal, double c_best,
                                const Box& bounds, RngStream& rng,
                                InformedSampleStats* stats = nullptr) {
    if (!std::isfinite(c_best))
        return sample_uniform(bounds, rng);
    const ProlateHyperspheroid phs(start, goal, c_best);
    return sample_informed(phs, bounds, rng, stats);
}

}  // namespace rggplan

#endif  // RGGPLAN_SAMPLING_HPP
