#pragma once

// Counter-based generator: every draw is a pure function of (seed, index).
//
//   z = seed + (index + 1) * 0x9E3779B97F4A7C15   (mod 2^64)
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   z =  z ^ (z >> 31)
//   uniform = (z >> 11) * 2^-53                  in [0, 1)
//
// Normals use Box-Muller on the uniforms at indices 2i and 2i + 1.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace fene {

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t bits(std::uint64_t index) const {
        std::uint64_t z = seed_ + (index + 1) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform(std::uint64_t index) const { return static_cast<double>(bits(index) >> 11) * 0x1.0p-53; }

    double normal(std::uint64_t index) const {
        const double u1 = 1.0 - uniform(2 * index);
        const double u2 = uniform(2 * index + 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Derived stream for a sub-experiment.
    CounterRng split(std::uint64_t stream) const { return CounterRng(bits(~stream)); }

private:
    std::uint64_t seed_;
};

}  // namespace fene
