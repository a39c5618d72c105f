#include "lsgs/toy/model.hpp"

#include <cmath>
#include <fmt/format.h>

#include "lsgs/errors.hpp"
#include "lsgs/sampler.hpp"
#include "lsgs/toy/dataset.hpp"

namespace lsgs::toy {

namespace {

double stable_sigmoid(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

// out += W x for row-major W (rows x cols).
void add_matvec(std::span<const double> w, std::span<const double> x, std::span<double> out) {
    const std::size_t rows = out.size();
    const std::size_t cols = x.size();
    for (std::size_t i = 0; i < rows; ++i) {
        double sum = 0.0;
        const double* row = w.data() + i * cols;
        for (std::size_t j = 0; j < cols; ++j) sum += row[j] * x[j];
        out[i] += sum;
    }
}

} // namespace

ToyModel init_model(std::uint64_t seed) {
    ToyModel model;
    SplitMix64 rng(seed);
    for (std::size_t b = 0; b < kParamBlocks.size(); ++b) {
        const ParamBlock& block = kParamBlocks[b];
        if (block.cols == 1) continue; // biases stay zero
        const double scale = 0.5 / std::sqrt(static_cast<double>(block.cols));
        auto values = model.block(b);
        for (double& v : values) v = scale * sample_normal(rng);
    }
    return model;
}

ForwardResult forward(const ToyModel& model, const ToySample& sample, const ScenarioMask& mask) {
    ForwardResult out;
    out.fused.fill(0.0);
    for (std::uint32_t m = 0; m < kModalityCount; ++m) {
        if (!mask.has_modality(m)) continue;
        auto encoded = std::span<double>(out.fused).subspan(m * kEncoderDim, kEncoderDim);
        const auto bias = model.encoder_bias(m);
        for (std::size_t i = 0; i < kEncoderDim; ++i) encoded[i] = bias[i];
        add_matvec(model.encoder_weights(m), sample.inputs[m], encoded);
    }
    const auto fusion_bias = model.fusion_bias();
    for (std::size_t i = 0; i < kLatentDim; ++i) out.latent[i] = fusion_bias[i];
    add_matvec(model.fusion_weights(), out.fused, out.latent);
    const auto decoder_bias = model.decoder_bias();
    for (std::size_t i = 0; i < kPixels; ++i) out.logits[i] = decoder_bias[i];
    add_matvec(model.decoder_weights(), out.latent, out.logits);
    return out;
}

double bce_loss(std::span<const double> logits, std::span<const double> label) {
    double sum = 0.0;
    for (std::size_t j = 0; j < logits.size(); ++j) {
        const double x = logits[j];
        const double y = label[j];
        sum += std::max(x, 0.0) - x * y + std::log1p(std::exp(-std::abs(x)));
    }
    return sum / static_cast<double>(logits.size());
}

double accumulate_gradient(const ToyModel& model, const ToySample& sample,
                           const ScenarioMask& mask, std::span<double> grad, double weight) {
    if (grad.size() != kParamCount) {
        throw DimensionError(fmt::format("gradient has length {}, expected {}", grad.size(),
                                         kParamCount));
    }
    const ForwardResult fwd = forward(model, sample, mask);
    const double loss = bce_loss(fwd.logits, sample.label);

    std::array<double, kPixels> dlogits;
    const double pixel_scale = weight / static_cast<double>(kPixels);
    for (std::size_t j = 0; j < kPixels; ++j) {
        dlogits[j] = pixel_scale * (stable_sigmoid(fwd.logits[j]) - sample.label[j]);
    }

    const ParamBlock& dec_w = kParamBlocks[8];
    const ParamBlock& dec_b = kParamBlocks[9];
    std::array<double, kLatentDim> dlatent{};
    const auto decoder_weights = model.decoder_weights();
    for (std::size_t i = 0; i < kPixels; ++i) {
        for (std::size_t l = 0; l < kLatentDim; ++l) {
            grad[dec_w.offset + i * kLatentDim + l] += dlogits[i] * fwd.latent[l];
            dlatent[l] += decoder_weights[i * kLatentDim + l] * dlogits[i];
        }
        grad[dec_b.offset + i] += dlogits[i];
    }

    const ParamBlock& fus_w = kParamBlocks[6];
    const ParamBlock& fus_b = kParamBlocks[7];
    std::array<double, kFusedDim> dfused{};
    const auto fusion_weights = model.fusion_weights();
    for (std::size_t l = 0; l < kLatentDim; ++l) {
        for (std::size_t f = 0; f < kFusedDim; ++f) {
            grad[fus_w.offset + l * kFusedDim + f] += dlatent[l] * fwd.fused[f];
            dfused[f] += fusion_weights[l * kFusedDim + f] * dlatent[l];
        }
        grad[fus_b.offset + l] += dlatent[l];
    }

    for (std::uint32_t m = 0; m < kModalityCount; ++m) {
        if (!mask.has_modality(m)) continue; // no gradient flows to masked encoders
        const ParamBlock& enc_w = kParamBlocks[2 * m];
        const ParamBlock& enc_b = kParamBlocks[2 * m + 1];
        const auto dencoded = std::span<const double>(dfused).subspan(m * kEncoderDim, kEncoderDim);
        for (std::size_t i = 0; i < kEncoderDim; ++i) {
            for (std::size_t j = 0; j < kPixels; ++j) {
                grad[enc_w.offset + i * kPixels + j] += dencoded[i] * sample.inputs[m][j];
            }
            grad[enc_b.offset + i] += dencoded[i];
        }
    }
    return loss;
}

} // namespace lsgs::toy
