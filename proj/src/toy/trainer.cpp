#include "lsgs/toy/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <ostream>

#include "lsgs/errors.hpp"

namespace lsgs::toy {

namespace {

// Independent PRNG streams derived from the experiment seed.
constexpr std::uint64_t kDatasetStream = 1;
constexpr std::uint64_t kModelInitStream = 2;
constexpr std::uint64_t kPretrainStream = 3;
constexpr std::uint64_t kUniformArmStream = 4;
constexpr std::uint64_t kGuidedArmStream = 5;

void write_log_rows(std::ostream& sink, std::span<const TrainLogEntry> log, const char* arm) {
    for (const TrainLogEntry& entry : log) {
        if (arm != nullptr) sink << arm << ',';
        sink << entry.epoch << ',' << entry.batch << ',' << format_mask(entry.mask) << ','
             << format_real(entry.loss) << '\n';
    }
}

void write_metrics_rows(std::ostream& sink, std::span<const ScenarioMetrics> metrics,
                        const char* arm) {
    for (const ScenarioMetrics& entry : metrics) {
        sink << arm << ',' << format_mask(entry.mask) << ',' << format_real(entry.iou) << ','
             << format_real(entry.f1) << '\n';
    }
}

} // namespace

void TrainConfig::validate() const {
    if (pretrain_epochs < 1 || finetune_epochs < 1) {
        throw ConfigError(fmt::format("epoch counts must be positive, got pretrain={} finetune={}",
                                      pretrain_epochs, finetune_epochs));
    }
    if (batch_size < 1) {
        throw ConfigError(fmt::format("batch size must be positive, got {}", batch_size));
    }
    if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
        throw ConfigError(fmt::format("learning rate must be non-negative, got {}", learning_rate));
    }
    if (!(lr_decay > 0.0 && lr_decay <= 1.0)) {
        throw ConfigError(fmt::format("learning-rate decay must lie in (0, 1], got {}", lr_decay));
    }
    if (lr_decay_interval < 1) {
        throw ConfigError(fmt::format("decay interval must be positive, got {}", lr_decay_interval));
    }
}

AdamOptimizer::AdamOptimizer(std::size_t parameter_count, AdamConfig config)
    : config_(config),
      first_moment_(parameter_count, 0.0),
      second_moment_(parameter_count, 0.0) {}

void AdamOptimizer::update(std::span<double> params, std::span<const double> grad,
                           double learning_rate) {
    if (params.size() != first_moment_.size() || grad.size() != first_moment_.size()) {
        throw DimensionError("optimizer state does not match parameter count");
    }
    ++step_;
    const double bias1 = 1.0 - std::pow(config_.beta1, static_cast<double>(step_));
    const double bias2 = 1.0 - std::pow(config_.beta2, static_cast<double>(step_));
    for (std::size_t i = 0; i < params.size(); ++i) {
        first_moment_[i] = config_.beta1 * first_moment_[i] + (1.0 - config_.beta1) * grad[i];
        second_moment_[i] =
            config_.beta2 * second_moment_[i] + (1.0 - config_.beta2) * grad[i] * grad[i];
        const double corrected_first = first_moment_[i] / bias1;
        const double corrected_second = second_moment_[i] / bias2;
        params[i] -= learning_rate * corrected_first / (std::sqrt(corrected_second) + config_.epsilon);
    }
}

std::vector<TrainLogEntry> train(ToyModel& model, std::span<const ToySample> data,
                                 const TrainConfig& config, int epochs, ScenarioSampler& sampler,
                                 SamplingStrategy strategy) {
    config.validate();
    if (data.empty()) {
        throw ValidationError("training set is empty");
    }
    AdamOptimizer optimizer(kParamCount);
    std::vector<TrainLogEntry> log;
    std::vector<double> grad(kParamCount, 0.0);
    const std::size_t batch_size = static_cast<std::size_t>(config.batch_size);
    for (int epoch = 0; epoch < epochs; ++epoch) {
        const double lr = config.learning_rate *
                          std::pow(config.lr_decay, epoch / config.lr_decay_interval);
        int batch_index = 0;
        for (std::size_t start = 0; start < data.size(); start += batch_size, ++batch_index) {
            const std::size_t end = std::min(start + batch_size, data.size());
            const double weight = 1.0 / static_cast<double>(end - start);
            const ScenarioMask mask =
                strategy == SamplingStrategy::kUniform ? sampler.draw_uniform() : sampler.draw();
            std::fill(grad.begin(), grad.end(), 0.0);
            double batch_loss = 0.0;
            for (std::size_t i = start; i < end; ++i) {
                batch_loss += weight * accumulate_gradient(model, data[i], mask, grad, weight);
            }
            if (!std::isfinite(batch_loss)) {
                throw DivergenceError(fmt::format(
                    "training diverged at epoch {} batch {}", epoch, batch_index));
            }
            optimizer.update(model.params, grad, lr);
            log.push_back(TrainLogEntry{epoch, batch_index, mask, batch_loss});
        }
    }
    return log;
}

LatentDump harvest_latents(const ToyModel& model, std::span<const ToySample> data) {
    LatentDump dump;
    dump.modality_count = kModalityCount;
    dump.sample_count = static_cast<std::uint32_t>(data.size());
    dump.latent_dim = kLatentDim;
    dump.values.resize(data.size() * dump.scenario_count() * kLatentDim);
    const ScenarioSpace space = enumerate_scenarios(kModalityCount);
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (std::size_t k = 0; k < space.scenario_count(); ++k) {
            const ForwardResult fwd = forward(model, data[i], space.scenarios[k]);
            auto record = dump.latent(i, k);
            for (std::size_t d = 0; d < kLatentDim; ++d) {
                record[d] = static_cast<float>(fwd.latent[d]);
            }
        }
    }
    return dump;
}

ExperimentReport run_experiment(const TrainConfig& train_config,
                                const KernelConfig& kernel_config,
                                const DistributionConfig& distribution_config, int n_train,
                                int n_eval) {
    train_config.validate();
    kernel_config.validate();
    distribution_config.validate();

    const Dataset data =
        generate_dataset(derive_stream_seed(train_config.seed, kDatasetStream), n_train, n_eval);
    const ScenarioSpace space = enumerate_scenarios(kModalityCount);
    const ScenarioDistribution uniform = uniform_distribution(space);

    ExperimentReport report;
    ToyModel model = init_model(derive_stream_seed(train_config.seed, kModelInitStream));
    ScenarioSampler pretrain_sampler(uniform,
                                     derive_stream_seed(train_config.seed, kPretrainStream));
    report.pretrain_log = train(model, data.train, train_config, train_config.pretrain_epochs,
                                pretrain_sampler, SamplingStrategy::kUniform);

    // Both fine-tuning arms start from this snapshot.
    const ToyModel snapshot = model;

    ToyModel uniform_arm = snapshot;
    ScenarioSampler uniform_sampler(uniform,
                                    derive_stream_seed(train_config.seed, kUniformArmStream));
    report.uniform_arm_log = train(uniform_arm, data.train, train_config,
                                   train_config.finetune_epochs, uniform_sampler,
                                   SamplingStrategy::kUniform);

    const LatentDump dump = harvest_latents(snapshot, data.train);
    report.distortion = aggregate_distortions(dump);
    report.distribution =
        build_distribution(space, report.distortion.eta, kernel_config, distribution_config);

    ToyModel guided_arm = snapshot;
    ScenarioSampler guided_sampler(report.distribution,
                                   derive_stream_seed(train_config.seed, kGuidedArmStream));
    report.guided_arm_log = train(guided_arm, data.train, train_config,
                                  train_config.finetune_epochs, guided_sampler,
                                  SamplingStrategy::kGuided);

    report.uniform_arm_metrics = evaluate(uniform_arm, data.eval, space);
    report.guided_arm_metrics = evaluate(guided_arm, data.eval, space);
    return report;
}

void write_pretrain_log_csv(std::ostream& sink, std::span<const TrainLogEntry> log) {
    sink << "epoch,batch,scenario_mask,loss\n";
    write_log_rows(sink, log, nullptr);
}

void write_finetune_log_csv(std::ostream& sink, std::span<const TrainLogEntry> uniform_arm,
                            std::span<const TrainLogEntry> guided_arm) {
    sink << "arm,epoch,batch,scenario_mask,loss\n";
    write_log_rows(sink, uniform_arm, "uniform");
    write_log_rows(sink, guided_arm, "guided");
}

void write_metrics_csv(std::ostream& sink, std::span<const ScenarioMetrics> uniform_arm,
                       std::span<const ScenarioMetrics> guided_arm) {
    sink << "arm,scenario_mask,iou,f1\n";
    write_metrics_rows(sink, uniform_arm, "uniform");
    write_metrics_rows(sink, guided_arm, "guided");
}

} // namespace lsgs::toy
