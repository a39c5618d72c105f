#include "lsgs/toy/dataset.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

#include "lsgs/errors.hpp"

namespace lsgs::toy {

namespace {

// Rectangle sides in [3, 6]: every sample keeps both classes and the labels
// carry enough variance for a strong modality-0 signal.
constexpr std::uint64_t kMinSide = 3;
constexpr std::uint64_t kMaxSide = 6;

std::uint64_t sample_below(SplitMix64& rng, std::uint64_t n) {
    return static_cast<std::uint64_t>(rng.next_unit() * static_cast<double>(n));
}

ToySample make_sample(SplitMix64& rng) {
    ToySample sample;
    const std::uint64_t width = kMinSide + sample_below(rng, kMaxSide - kMinSide + 1);
    const std::uint64_t height = kMinSide + sample_below(rng, kMaxSide - kMinSide + 1);
    const std::uint64_t col0 = sample_below(rng, kGrid - width + 1);
    const std::uint64_t row0 = sample_below(rng, kGrid - height + 1);
    for (std::size_t row = 0; row < kGrid; ++row) {
        for (std::size_t col = 0; col < kGrid; ++col) {
            const bool inside = row >= row0 && row < row0 + height && col >= col0 &&
                                col < col0 + width;
            sample.label[row * kGrid + col] = inside ? 1.0 : 0.0;
        }
    }
    for (std::size_t j = 0; j < kPixels; ++j) {
        sample.inputs[0][j] = sample.label[j] + 0.3 * sample_normal(rng);
    }
    for (std::size_t j = 0; j < kPixels; ++j) {
        sample.inputs[1][j] = 0.5 * sample.label[j] + 0.6 * sample_normal(rng);
    }
    for (std::size_t j = 0; j < kPixels; ++j) {
        sample.inputs[2][j] = sample_normal(rng);
    }
    return sample;
}

} // namespace

double sample_normal(SplitMix64& rng) {
    const double u1 = 1.0 - rng.next_unit(); // (0, 1], keeps the log finite
    const double u2 = rng.next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Dataset generate_dataset(std::uint64_t seed, int n_train, int n_eval) {
    if (n_train < 1 || n_eval < 1) {
        throw ConfigError(fmt::format(
            "dataset sizes must be at least 1, got train={} eval={}", n_train, n_eval));
    }
    Dataset data;
    SplitMix64 rng(seed);
    data.train.reserve(static_cast<std::size_t>(n_train));
    for (int i = 0; i < n_train; ++i) data.train.push_back(make_sample(rng));
    data.eval.reserve(static_cast<std::size_t>(n_eval));
    for (int i = 0; i < n_eval; ++i) data.eval.push_back(make_sample(rng));
    return data;
}

} // namespace lsgs::toy
