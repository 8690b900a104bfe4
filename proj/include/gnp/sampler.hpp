#pragma once

#include <cstdint>

#include "gnp/graph.hpp"

namespace gnp {

/// SplitMix64 (Steele, Lea, Flood 2014). Each sample index owns its own stream whose
/// initial state is mix(seed ^ mix(index + 1)); a stream never depends on any other.
class EdgeStream {
public:
    EdgeStream(std::uint64_t seed, std::uint64_t index) noexcept
        : state_(mix(seed ^ mix(index + 1))) {}

    std::uint64_t next() noexcept {
        state_ += 0x9E3779B97F4A7C15ull;
        ++draws_;
        return mix(state_);
    }

    /// Uniform on [0, 1) from the top 53 bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) noexcept { return uniform() < p; }

    std::uint64_t position() const noexcept { return draws_; }

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
    std::uint64_t draws_ = 0;
};

struct Sampler {
    double p;
    std::uint64_t seed;

    Sampler(double p, std::uint64_t seed);

    EdgeStream stream(std::uint64_t sample_index) const noexcept { return {seed, sample_index}; }
};

/// Draws the C(n,2) edge bits in index order from `stream`.
Graph sample_gnp(EdgeStream& stream, double p, std::uint32_t n);

/// G(n,p) sample number `sample_index` of the sampler's family.
Graph sample_gnp(const Sampler& sampler, std::uint32_t n, std::uint64_t sample_index = 0);

}  // namespace gnp
