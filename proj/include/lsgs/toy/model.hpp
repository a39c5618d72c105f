#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lsgs/scenario.hpp"

namespace lsgs::toy {

inline constexpr std::size_t kGrid = 8;
inline constexpr std::size_t kPixels = kGrid * kGrid;
inline constexpr std::uint32_t kModalityCount = 3;
inline constexpr std::size_t kEncoderDim = 16;
inline constexpr std::size_t kFusedDim = kModalityCount * kEncoderDim;
inline constexpr std::size_t kLatentDim = 8;

struct ToySample {
    std::array<std::array<double, kPixels>, kModalityCount> inputs;
    std::array<double, kPixels> label; // entries in {0, 1}
};

struct ParamBlock {
    const char* name;
    std::size_t offset;
    std::size_t rows;
    std::size_t cols; // 1 for bias vectors
    std::size_t size() const { return rows * cols; }
};

// Flat parameter layout: per-modality encoder weight/bias, fusion
// weight/bias, decoder weight/bias. Weight matrices are row-major out x in.
inline constexpr std::array<ParamBlock, 10> kParamBlocks = {{
    {"encoder0_weights", 0, kEncoderDim, kPixels},
    {"encoder0_bias", 1024, kEncoderDim, 1},
    {"encoder1_weights", 1040, kEncoderDim, kPixels},
    {"encoder1_bias", 2064, kEncoderDim, 1},
    {"encoder2_weights", 2080, kEncoderDim, kPixels},
    {"encoder2_bias", 3104, kEncoderDim, 1},
    {"fusion_weights", 3120, kLatentDim, kFusedDim},
    {"fusion_bias", 3504, kLatentDim, 1},
    {"decoder_weights", 3512, kPixels, kLatentDim},
    {"decoder_bias", 4024, kPixels, 1},
}};

inline constexpr std::size_t kParamCount =
    kParamBlocks.back().offset + kParamBlocks.back().rows * kParamBlocks.back().cols;

struct ToyModel {
    std::vector<double> params = std::vector<double>(kParamCount, 0.0);

    std::span<double> block(std::size_t index) {
        const ParamBlock& b = kParamBlocks[index];
        return std::span<double>(params).subspan(b.offset, b.size());
    }
    std::span<const double> block(std::size_t index) const {
        const ParamBlock& b = kParamBlocks[index];
        return std::span<const double>(params).subspan(b.offset, b.size());
    }

    std::span<const double> encoder_weights(std::uint32_t m) const { return block(2 * m); }
    std::span<const double> encoder_bias(std::uint32_t m) const { return block(2 * m + 1); }
    std::span<const double> fusion_weights() const { return block(6); }
    std::span<const double> fusion_bias() const { return block(7); }
    std::span<const double> decoder_weights() const { return block(8); }
    std::span<const double> decoder_bias() const { return block(9); }
};

// Weights drawn from N(0, (0.5 / sqrt(fan_in))^2), biases zero.
ToyModel init_model(std::uint64_t seed);

struct ForwardResult {
    std::array<double, kFusedDim> fused;
    std::array<double, kLatentDim> latent;
    std::array<double, kPixels> logits;
};

// Masked modalities contribute a zero encoder output, bias included.
ForwardResult forward(const ToyModel& model, const ToySample& sample, const ScenarioMask& mask);

// Mean per-pixel binary cross-entropy on logits.
double bce_loss(std::span<const double> logits, std::span<const double> label);

// Runs forward + backward for one sample, adds `weight` times the gradient of
// the per-sample mean BCE into `grad`, and returns that loss.
double accumulate_gradient(const ToyModel& model, const ToySample& sample,
                           const ScenarioMask& mask, std::span<double> grad, double weight);

} // namespace lsgs::toy
