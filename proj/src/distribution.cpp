#include "lsgs/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "lsgs/errors.hpp"

namespace lsgs {

namespace {

struct ScoreStats {
    double mean = 0.0;
    double stddev = 0.0;
};

ScoreStats score_stats(std::span<const double> scores) {
    const double n = static_cast<double>(scores.size());
    double sum = 0.0;
    for (double v : scores) sum += v;
    const double mean = sum / n;
    double variance = 0.0;
    for (double v : scores) variance += (v - mean) * (v - mean);
    variance /= n;
    return ScoreStats{mean, std::sqrt(variance)};
}

void check_tau(double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw ConfigError(fmt::format("temperature must be positive and finite, got {}", tau));
    }
}

void check_gamma(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw ConfigError(fmt::format("mixing coefficient must lie in [0, 1], got {}", gamma));
    }
}

bool all_equal(std::span<const double> values) {
    for (double v : values) {
        if (v != values.front()) return false;
    }
    return true;
}

} // namespace

void DistributionConfig::validate() const {
    check_tau(tau);
    check_gamma(gamma);
    if (!(epsilon_sigma >= 0.0) || !std::isfinite(epsilon_sigma)) {
        throw ConfigError(fmt::format(
            "degeneracy threshold must be non-negative and finite, got {}", epsilon_sigma));
    }
}

std::vector<double> standardize(std::span<const double> scores, double epsilon_sigma) {
    if (scores.empty()) {
        throw DimensionError("score vector is empty");
    }
    const ScoreStats stats = score_stats(scores);
    std::vector<double> standardized(scores.size(), 0.0);
    if (stats.stddev < epsilon_sigma) {
        return standardized; // no spread to exploit
    }
    for (std::size_t k = 0; k < scores.size(); ++k) {
        standardized[k] = (scores[k] - stats.mean) / stats.stddev;
    }
    return standardized;
}

std::vector<double> temperature_softmax(std::span<const double> standardized, double tau) {
    check_tau(tau);
    if (standardized.empty()) {
        throw DimensionError("score vector is empty");
    }
    double max_logit = -std::numeric_limits<double>::infinity();
    for (double v : standardized) max_logit = std::max(max_logit, tau * v);
    std::vector<double> weights(standardized.size());
    double total = 0.0;
    for (std::size_t k = 0; k < standardized.size(); ++k) {
        weights[k] = std::exp(tau * standardized[k] - max_logit);
        total += weights[k];
    }
    for (double& w : weights) w /= total;
    return weights;
}

std::vector<double> mix_uniform(std::span<const double> p_soft, double gamma) {
    check_gamma(gamma);
    if (p_soft.empty()) {
        throw DimensionError("probability vector is empty");
    }
    const double count = static_cast<double>(p_soft.size());
    const double floor = (1.0 - gamma) / count;
    std::vector<double> mixed(p_soft.size());
    for (std::size_t k = 0; k < p_soft.size(); ++k) {
        mixed[k] = floor + gamma * p_soft[k];
    }
    // A constant mixture is the uniform distribution; renormalizing it through
    // division would only perturb the exact value.
    if (all_equal(mixed)) {
        std::fill(mixed.begin(), mixed.end(), 1.0 / count);
        return mixed;
    }
    double total = 0.0;
    for (double v : mixed) total += v;
    for (double& v : mixed) v /= total;
    return mixed;
}

ScenarioDistribution build_distribution(const ScenarioSpace& space, std::span<const double> eta,
                                        const KernelConfig& kernel_config,
                                        const DistributionConfig& distribution_config) {
    kernel_config.validate();
    distribution_config.validate();
    if (eta.size() != space.scenario_count()) {
        throw DimensionError(fmt::format("eta has length {}, expected {} scenarios", eta.size(),
                                         space.scenario_count()));
    }
    ScenarioDistribution dist;
    dist.space = space;
    dist.eta.assign(eta.begin(), eta.end());

    const KernelSystem system = build_gram(eta, kernel_config);
    dist.r = smooth_direct(system, eta, kernel_config.lambda).r;

    const ScoreStats stats = score_stats(dist.r);
    dist.score_mean = stats.mean;
    dist.score_stddev = stats.stddev;
    dist.r_standardized = standardize(dist.r, distribution_config.epsilon_sigma);
    dist.p_soft = temperature_softmax(dist.r_standardized, distribution_config.tau);
    dist.p = mix_uniform(dist.p_soft, distribution_config.gamma);
    return dist;
}

ScenarioDistribution uniform_distribution(const ScenarioSpace& space) {
    const std::vector<double> eta(space.scenario_count(), 0.0);
    return build_distribution(space, eta, KernelConfig{}, DistributionConfig{});
}

DistributionTable distribution_to_table(const ScenarioDistribution& distribution) {
    DistributionTable table;
    table.modality_count = distribution.space.modality_count;
    table.rows.reserve(distribution.space.scenario_count());
    for (std::size_t k = 0; k < distribution.space.scenario_count(); ++k) {
        table.rows.push_back(DistributionRow{distribution.space.scenarios[k], distribution.eta[k],
                                             distribution.r[k], distribution.p[k]});
    }
    return table;
}

} // namespace lsgs
