#include "lsgs/distortion.hpp"

#include <cmath>
#include <fmt/format.h>

#include "lsgs/errors.hpp"

namespace lsgs {

double sample_distortion(std::span<const float> latent_k, std::span<const float> latent_full) {
    if (latent_k.size() != latent_full.size()) {
        throw DimensionError(fmt::format(
            "latent length mismatch: {} vs {}", latent_k.size(), latent_full.size()));
    }
    if (latent_k.empty()) {
        throw DimensionError("latent vectors must have at least one entry");
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < latent_k.size(); ++j) {
        const double diff = static_cast<double>(latent_k[j]) - static_cast<double>(latent_full[j]);
        sum += diff * diff;
    }
    return sum / static_cast<double>(latent_k.size());
}

DistortionStats aggregate_distortions(const LatentDump& dump) {
    if (dump.sample_count == 0) {
        throw ValidationError("cannot aggregate distortions from an empty dump");
    }
    DistortionStats stats;
    stats.space = enumerate_scenarios(dump.modality_count);
    stats.n_samples = dump.sample_count;
    const std::size_t scenario_count = stats.space.scenario_count();
    const std::size_t full_index = stats.space.full_mask_index();
    stats.eta.assign(scenario_count, 0.0);
    for (std::size_t k = 0; k < scenario_count; ++k) {
        double sum = 0.0;
        for (std::size_t i = 0; i < dump.sample_count; ++i) {
            sum += sample_distortion(dump.latent(i, k), dump.latent(i, full_index));
        }
        stats.eta[k] = sum / static_cast<double>(dump.sample_count);
    }
    return stats;
}

DistortionTable stats_to_table(const DistortionStats& stats) {
    DistortionTable table;
    table.modality_count = stats.space.modality_count;
    table.rows.reserve(stats.eta.size());
    for (std::size_t k = 0; k < stats.eta.size(); ++k) {
        table.rows.push_back(DistortionRow{stats.space.scenarios[k], stats.eta[k], stats.n_samples});
    }
    return table;
}

DistortionStats table_to_stats(const DistortionTable& table) {
    DistortionStats stats;
    stats.space = enumerate_scenarios(table.modality_count);
    if (table.rows.size() != stats.space.scenario_count()) {
        throw ValidationError(fmt::format(
            "distortion table has {} rows, expected {}", table.rows.size(),
            stats.space.scenario_count()));
    }
    stats.eta.reserve(table.rows.size());
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
        const DistortionRow& row = table.rows[k];
        if (row.mask.bits != k + 1) {
            throw ValidationError(fmt::format("distortion row {} out of canonical order", k));
        }
        if (!(row.mean_distortion >= 0.0) || !std::isfinite(row.mean_distortion)) {
            throw ValidationError(fmt::format(
                "scenario {}: mean distortion must be finite and non-negative",
                format_mask(row.mask)));
        }
        stats.eta.push_back(row.mean_distortion);
    }
    stats.n_samples = table.rows.empty() ? 0 : table.rows.front().n_samples;
    return stats;
}

} // namespace lsgs
