// Command-line surface for the scenario weighting pipeline:
//   distort  distortion statistics from an LSGS latent dump
//   weigh    sampling distribution from distortion statistics
//   sample   draw scenario masks from a distribution CSV
//   toy      end-to-end synthetic two-arm experiment
//   plot     SVG bar chart of a distribution CSV
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lsgs/chart.hpp"
#include "lsgs/distortion.hpp"
#include "lsgs/distribution.hpp"
#include "lsgs/errors.hpp"
#include "lsgs/latent_io.hpp"
#include "lsgs/sampler.hpp"
#include "lsgs/toy/trainer.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitDataError = 1;
constexpr int kExitUsageError = 2;

std::ifstream open_input(const std::string& path, std::ios::openmode mode = std::ios::in) {
    std::ifstream stream(path, mode);
    if (!stream) {
        throw lsgs::DataError("cannot open input file: " + path);
    }
    return stream;
}

std::ofstream open_output(const std::string& path,
                          std::ios::openmode mode = std::ios::out | std::ios::trunc) {
    std::ofstream stream(path, mode);
    if (!stream) {
        throw lsgs::DataError("cannot open output file: " + path);
    }
    return stream;
}

void run_distort(const std::string& latents_path, const std::string& out_path) {
    auto input = open_input(latents_path, std::ios::in | std::ios::binary);
    const lsgs::LatentDump dump = lsgs::read_latent_dump(input);
    const lsgs::DistortionStats stats = lsgs::aggregate_distortions(dump);
    auto output = open_output(out_path);
    lsgs::write_distortion_csv(lsgs::stats_to_table(stats), output);
}

void run_weigh(const std::string& distortions_path, const lsgs::KernelConfig& kernel_config,
               const lsgs::DistributionConfig& distribution_config, const std::string& out_path) {
    auto input = open_input(distortions_path);
    const lsgs::DistortionStats stats = lsgs::table_to_stats(lsgs::read_distortion_csv(input));
    const lsgs::ScenarioDistribution distribution =
        lsgs::build_distribution(stats.space, stats.eta, kernel_config, distribution_config);
    auto output = open_output(out_path);
    lsgs::write_distribution_csv(lsgs::distribution_to_table(distribution), output);
}

void run_sample(const std::string& dist_path, std::uint64_t count, std::uint64_t seed) {
    auto input = open_input(dist_path);
    const lsgs::DistributionTable table = lsgs::read_distribution_csv(input);
    const lsgs::ScenarioSpace space = lsgs::enumerate_scenarios(table.modality_count);
    std::vector<double> probabilities;
    probabilities.reserve(table.rows.size());
    for (const lsgs::DistributionRow& row : table.rows) probabilities.push_back(row.p);
    lsgs::ScenarioSampler sampler(space, probabilities, seed);
    std::string lines;
    for (std::uint64_t i = 0; i < count; ++i) {
        lines += lsgs::format_mask(sampler.draw());
        lines += '\n';
    }
    std::cout << lines;
}

void run_toy(std::uint64_t seed, int n_train, int n_eval, int pretrain_epochs, int finetune_epochs,
             const std::string& out_dir) {
    lsgs::toy::TrainConfig config;
    config.seed = seed;
    config.pretrain_epochs = pretrain_epochs;
    config.finetune_epochs = finetune_epochs;
    const lsgs::toy::ExperimentReport report = lsgs::toy::run_experiment(
        config, lsgs::KernelConfig{}, lsgs::DistributionConfig{}, n_train, n_eval);

    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    {
        auto out = open_output((dir / "distortion.csv").string());
        lsgs::write_distortion_csv(lsgs::stats_to_table(report.distortion), out);
    }
    {
        auto out = open_output((dir / "distribution.csv").string());
        lsgs::write_distribution_csv(lsgs::distribution_to_table(report.distribution), out);
    }
    {
        auto out = open_output((dir / "pretrain_log.csv").string());
        lsgs::toy::write_pretrain_log_csv(out, report.pretrain_log);
    }
    {
        auto out = open_output((dir / "finetune_log.csv").string());
        lsgs::toy::write_finetune_log_csv(out, report.uniform_arm_log, report.guided_arm_log);
    }
    {
        auto out = open_output((dir / "metrics.csv").string());
        lsgs::toy::write_metrics_csv(out, report.uniform_arm_metrics, report.guided_arm_metrics);
    }
}

void run_plot(const std::string& dist_path, const std::string& out_path) {
    auto input = open_input(dist_path);
    const lsgs::DistributionTable table = lsgs::read_distribution_csv(input);
    std::vector<std::string> labels;
    std::vector<double> probabilities;
    labels.reserve(table.rows.size());
    probabilities.reserve(table.rows.size());
    for (const lsgs::DistributionRow& row : table.rows) {
        labels.push_back(lsgs::format_mask(row.mask));
        probabilities.push_back(row.p);
    }
    auto output = open_output(out_path);
    lsgs::write_probability_chart(output, labels, probabilities);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Latent-guided scenario sampling pipeline"};
    app.require_subcommand(1);

    std::string latents_path, distortions_path, dist_path, out_path, out_dir;
    lsgs::KernelConfig kernel_config;
    lsgs::DistributionConfig distribution_config;
    std::uint64_t sample_count = 0;
    std::uint64_t seed = 0;
    int n_train = 512, n_eval = 256, pretrain_epochs = 70, finetune_epochs = 10;

    CLI::App* distort = app.add_subcommand("distort", "Per-scenario distortion from a latent dump");
    distort->add_option("--latents", latents_path, "LSGS latent dump")->required();
    distort->add_option("--out", out_path, "Output distortion CSV")->required();

    CLI::App* weigh = app.add_subcommand("weigh", "Sampling distribution from distortions");
    weigh->add_option("--distortions", distortions_path, "Input distortion CSV")->required();
    weigh->add_option("--sigma", kernel_config.sigma, "RBF kernel bandwidth")
        ->capture_default_str();
    weigh->add_option("--lambda", kernel_config.lambda, "Smoothing regularization")
        ->capture_default_str();
    weigh->add_option("--tau", distribution_config.tau, "Softmax temperature")
        ->capture_default_str();
    weigh->add_option("--gamma", distribution_config.gamma, "Uniform mixing coefficient")
        ->capture_default_str();
    weigh->add_option("--out", out_path, "Output distribution CSV")->required();

    CLI::App* sample = app.add_subcommand("sample", "Draw scenario masks from a distribution");
    sample->add_option("--dist", dist_path, "Input distribution CSV")->required();
    sample->add_option("--n", sample_count, "Number of draws")->required();
    sample->add_option("--seed", seed, "PRNG seed")->required();

    CLI::App* toy = app.add_subcommand("toy", "Synthetic two-arm training experiment");
    toy->add_option("--seed", seed, "Experiment seed")->required();
    toy->add_option("--n-train", n_train, "Training samples")->capture_default_str();
    toy->add_option("--n-eval", n_eval, "Evaluation samples")->capture_default_str();
    toy->add_option("--pretrain-epochs", pretrain_epochs, "Pretraining epochs")
        ->capture_default_str();
    toy->add_option("--finetune-epochs", finetune_epochs, "Fine-tuning epochs")
        ->capture_default_str();
    toy->add_option("--out", out_dir, "Output directory")->required();

    CLI::App* plot = app.add_subcommand("plot", "SVG bar chart of a distribution");
    plot->add_option("--dist", dist_path, "Input distribution CSV")->required();
    plot->add_option("--out", out_path, "Output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsageError;
    }

    try {
        if (distort->parsed()) {
            run_distort(latents_path, out_path);
        } else if (weigh->parsed()) {
            run_weigh(distortions_path, kernel_config, distribution_config, out_path);
        } else if (sample->parsed()) {
            run_sample(dist_path, sample_count, seed);
        } else if (toy->parsed()) {
            run_toy(seed, n_train, n_eval, pretrain_epochs, finetune_epochs, out_dir);
        } else if (plot->parsed()) {
            run_plot(dist_path, out_path);
        }
    } catch (const lsgs::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const lsgs::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDataError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDataError;
    }
    return kExitSuccess;
}
