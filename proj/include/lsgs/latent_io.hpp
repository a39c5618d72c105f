#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lsgs/scenario.hpp"

namespace lsgs {

// Shared-latent dump: for each sample, one flattened latent vector per
// scenario in ascending bitmask order. The record at the full bitmask is the
// full-modality reference. Values are stored as 32-bit floats; downstream
// arithmetic is 64-bit.
struct LatentDump {
    std::uint32_t modality_count = 0;
    std::uint32_t sample_count = 0;
    std::uint32_t latent_dim = 0;
    std::vector<float> values; // [sample][scenario][entry], scenarios ascending by bitmask

    std::size_t scenario_count() const { return full_mask_bits(modality_count); }
    std::span<const float> latent(std::size_t sample, std::size_t scenario_index) const;
    std::span<float> latent(std::size_t sample, std::size_t scenario_index);
};

// LSGS binary layout, little-endian:
//   magic "LSGS" | u32 version=1 | u32 M | u32 N | u32 D | N*K*D float32
void write_latent_dump(const LatentDump& dump, std::ostream& sink);
LatentDump read_latent_dump(std::istream& source);

struct DistortionRow {
    ScenarioMask mask;
    double mean_distortion = 0.0;
    std::uint64_t n_samples = 0;
};

// One row per scenario in canonical order; the full-mask row is exactly 0.
struct DistortionTable {
    std::uint32_t modality_count = 0;
    std::vector<DistortionRow> rows;
};

// CSV: header `scenario_mask,mean_distortion,n_samples`, reals at 17
// significant digits, '\n' line endings, no quoting.
void write_distortion_csv(const DistortionTable& table, std::ostream& sink);
DistortionTable read_distortion_csv(std::istream& source);

struct DistributionRow {
    ScenarioMask mask;
    double eta = 0.0;
    double r = 0.0;
    double p = 0.0;
};

struct DistributionTable {
    std::uint32_t modality_count = 0;
    std::vector<DistributionRow> rows;
};

// CSV: header `scenario_mask,eta,r,p`, same conventions as the distortion CSV.
void write_distribution_csv(const DistributionTable& table, std::ostream& sink);
DistributionTable read_distribution_csv(std::istream& source);

// 17 significant digits; round-trips any finite double bit-exactly.
std::string format_real(double value);

} // namespace lsgs
