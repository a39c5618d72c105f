#pragma once

#include <span>
#include <vector>

#include "lsgs/kernel.hpp"
#include "lsgs/latent_io.hpp"
#include "lsgs/scenario.hpp"

namespace lsgs {

struct DistributionConfig {
    double tau = 0.5;             // softmax temperature
    double gamma = 0.5;           // uniform mixing coefficient
    double epsilon_sigma = 1e-12; // below this score spread the scores are treated as constant

    void validate() const;
};

// Full scenario sampling distribution with every pipeline intermediate.
struct ScenarioDistribution {
    ScenarioSpace space;
    std::vector<double> eta;
    std::vector<double> r;
    std::vector<double> r_standardized;
    std::vector<double> p_soft;
    std::vector<double> p;
    double score_mean = 0.0;
    double score_stddev = 0.0;
};

// (r - mean) / stddev with population statistics; the zero vector when the
// spread is below epsilon_sigma.
std::vector<double> standardize(std::span<const double> scores, double epsilon_sigma);

std::vector<double> temperature_softmax(std::span<const double> standardized, double tau);

// (1 - gamma)/K + gamma * p_soft, renormalized to machine precision.
std::vector<double> mix_uniform(std::span<const double> p_soft, double gamma);

ScenarioDistribution build_distribution(const ScenarioSpace& space, std::span<const double> eta,
                                        const KernelConfig& kernel_config,
                                        const DistributionConfig& distribution_config);

ScenarioDistribution uniform_distribution(const ScenarioSpace& space);

DistributionTable distribution_to_table(const ScenarioDistribution& distribution);

} // namespace lsgs
