#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "lsgs/distortion.hpp"
#include "lsgs/distribution.hpp"
#include "lsgs/kernel.hpp"
#include "lsgs/latent_io.hpp"
#include "lsgs/sampler.hpp"
#include "lsgs/toy/dataset.hpp"
#include "lsgs/toy/metrics.hpp"
#include "lsgs/toy/model.hpp"

namespace lsgs::toy {

struct TrainConfig {
    int pretrain_epochs = 70;
    int finetune_epochs = 10;
    int batch_size = 8;
    double learning_rate = 1e-4;
    double lr_decay = 0.91;   // multiplier applied every lr_decay_interval epochs
    int lr_decay_interval = 5;
    std::uint64_t seed = 0;

    void validate() const;
};

struct AdamConfig {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

class AdamOptimizer {
public:
    explicit AdamOptimizer(std::size_t parameter_count, AdamConfig config = {});

    void update(std::span<double> params, std::span<const double> grad, double learning_rate);

private:
    AdamConfig config_;
    std::vector<double> first_moment_;
    std::vector<double> second_moment_;
    std::uint64_t step_ = 0;
};

enum class SamplingStrategy { kUniform, kGuided };

struct TrainLogEntry {
    int epoch = 0;
    int batch = 0;
    ScenarioMask mask;
    double loss = 0.0;
};

// Mini-batch Adam with one scenario mask per batch; mutates the model in
// place and returns the per-batch log. Fully deterministic for a fixed
// sampler state.
std::vector<TrainLogEntry> train(ToyModel& model, std::span<const ToySample> data,
                                 const TrainConfig& config, int epochs, ScenarioSampler& sampler,
                                 SamplingStrategy strategy);

// One forward per (training sample, scenario), batch size 1, recording the
// shared latent of each pass.
LatentDump harvest_latents(const ToyModel& model, std::span<const ToySample> data);

struct ExperimentReport {
    DistortionStats distortion;
    ScenarioDistribution distribution;
    std::vector<TrainLogEntry> pretrain_log;
    std::vector<TrainLogEntry> uniform_arm_log;
    std::vector<TrainLogEntry> guided_arm_log;
    std::vector<ScenarioMetrics> uniform_arm_metrics;
    std::vector<ScenarioMetrics> guided_arm_metrics;
};

// Two-stage protocol: pretrain once under uniform masks, then fine-tune the
// shared snapshot twice, once with uniform sampling and once with the
// distribution learned from the snapshot's latent distortions.
ExperimentReport run_experiment(const TrainConfig& train_config,
                                const KernelConfig& kernel_config,
                                const DistributionConfig& distribution_config, int n_train,
                                int n_eval);

// CSV emitters for the experiment artifacts.
void write_pretrain_log_csv(std::ostream& sink, std::span<const TrainLogEntry> log);
void write_finetune_log_csv(std::ostream& sink, std::span<const TrainLogEntry> uniform_arm,
                            std::span<const TrainLogEntry> guided_arm);
void write_metrics_csv(std::ostream& sink, std::span<const ScenarioMetrics> uniform_arm,
                       std::span<const ScenarioMetrics> guided_arm);

} // namespace lsgs::toy
