#include "lsgs/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "lsgs/errors.hpp"

namespace lsgs {

namespace {

constexpr double kProbabilitySumTolerance = 1e-6;

std::vector<double> build_cdf(std::span<const double> probabilities) {
    std::vector<double> cdf(probabilities.size());
    double running = 0.0;
    for (std::size_t k = 0; k < probabilities.size(); ++k) {
        running += probabilities[k];
        cdf[k] = running;
    }
    cdf.back() = 1.0;
    return cdf;
}

std::size_t inverse_cdf_index(std::span<const double> cdf, double u) {
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    return static_cast<std::size_t>(it - cdf.begin());
}

} // namespace

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream_index) {
    return SplitMix64(seed ^ stream_index).next();
}

ScenarioSampler::ScenarioSampler(ScenarioSpace space, std::span<const double> probabilities,
                                 std::uint64_t seed)
    : space_(std::move(space)),
      probabilities_(probabilities.begin(), probabilities.end()),
      rng_(seed),
      seed_(seed) {
    if (probabilities_.size() != space_.scenario_count()) {
        throw DimensionError(fmt::format("distribution has {} entries, expected {} scenarios",
                                         probabilities_.size(), space_.scenario_count()));
    }
    double total = 0.0;
    for (double p : probabilities_) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw ValidationError("scenario probabilities must be finite and non-negative");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > kProbabilitySumTolerance) {
        throw ValidationError(fmt::format(
            "scenario probabilities sum to {}, expected 1 within {}", total,
            kProbabilitySumTolerance));
    }
    cdf_ = build_cdf(probabilities_);
    const double count = static_cast<double>(space_.scenario_count());
    uniform_cdf_.resize(space_.scenario_count());
    for (std::size_t k = 0; k < uniform_cdf_.size(); ++k) {
        uniform_cdf_[k] = static_cast<double>(k + 1) / count;
    }
    uniform_cdf_.back() = 1.0;
}

ScenarioSampler::ScenarioSampler(const ScenarioDistribution& distribution, std::uint64_t seed)
    : ScenarioSampler(distribution.space, distribution.p, seed) {}

ScenarioMask ScenarioSampler::draw() {
    return space_.scenarios[inverse_cdf_index(cdf_, rng_.next_unit())];
}

ScenarioMask ScenarioSampler::draw_uniform() {
    return space_.scenarios[inverse_cdf_index(uniform_cdf_, rng_.next_unit())];
}

} // namespace lsgs
