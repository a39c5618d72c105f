#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lsgs/latent_io.hpp"
#include "lsgs/scenario.hpp"

namespace lsgs {

// Per-scenario mean shared-latent distortion in canonical scenario order.
// The full-mask entry is exactly zero.
struct DistortionStats {
    ScenarioSpace space;
    std::vector<double> eta;
    std::uint64_t n_samples = 0;
};

// Mean squared deviation between a scenario latent and the full-modality
// reference, accumulated in 64-bit in ascending index order.
double sample_distortion(std::span<const float> latent_k, std::span<const float> latent_full);

DistortionStats aggregate_distortions(const LatentDump& dump);

DistortionTable stats_to_table(const DistortionStats& stats);
DistortionStats table_to_stats(const DistortionTable& table);

} // namespace lsgs
