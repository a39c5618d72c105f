#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lsgs/distribution.hpp"
#include "lsgs/scenario.hpp"

namespace lsgs {

// splitmix64: 64-bit state, one addition plus output mixing per draw.
// Reference vector: seed 0 -> first output 0xE220A8397B1DCDAF.
class SplitMix64 {
public:
    SplitMix64() = default;
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // 53-bit uniform in [0, 1).
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    std::uint64_t state() const { return state_; }
    void set_state(std::uint64_t state) { state_ = state; }

private:
    std::uint64_t state_ = 0;
};

// Derived seed for an independent stream: seed XOR stream index, mixed once.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream_index);

// Deterministic categorical sampler over a scenario space. A sampler is a
// mutable draw stream: single ownership, not safe for concurrent draws.
class ScenarioSampler {
public:
    ScenarioSampler(ScenarioSpace space, std::span<const double> probabilities,
                    std::uint64_t seed);
    ScenarioSampler(const ScenarioDistribution& distribution, std::uint64_t seed);

    // Inverse-CDF draw from p in canonical scenario order.
    ScenarioMask draw();
    // Inverse-CDF draw from the uniform distribution, same PRNG stream.
    ScenarioMask draw_uniform();

    const ScenarioSpace& space() const { return space_; }
    std::span<const double> probabilities() const { return probabilities_; }
    std::span<const double> cdf() const { return cdf_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t rng_state() const { return rng_.state(); }
    void set_rng_state(std::uint64_t state) { rng_.set_state(state); }

private:
    ScenarioSpace space_;
    std::vector<double> probabilities_;
    std::vector<double> cdf_;
    std::vector<double> uniform_cdf_;
    SplitMix64 rng_;
    std::uint64_t seed_ = 0;
};

} // namespace lsgs
