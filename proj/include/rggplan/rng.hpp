#ifndef RGGPLAN_RNG_HPP
#define RGGPLAN_RNG_HPP

#include <cmath>
#include <cstdint>

namespace rggplan {

namespace detail {

/// splitmix64 output function. Statistically solid, trivially portable,
/// and fully specified here so identical seeds give identical streams on
/// every platform and standard library.
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

}  // namespace detail

/// Seeded deterministic random stream (splitmix64 core).
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return detail::splitmix64_mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    /// Standard normal via Box-Muller; one draw per call, no cached state,
    /// so stream position depends only on the call count.
    double gaussian() {
        const double u1 = 1.0 - next_double();  // (0, 1], keeps log finite
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Independent child stream; (seed, index) -> child seed is a fixed
    /// bijective-mix scheme, so derived streams are reproducible.
    RngStream derive(std::uint64_t index) const {
        const std::uint64_t child =
            detail::splitmix64_mix(state_ ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
        return RngStream(child);
    }

private:
    std::uint64_t state_;
};

}  // namespace rggplan

#endif  // RGGPLAN_RNG_HPP
