#pragma once

#include <cstdint>
#include <vector>

#include "lsgs/sampler.hpp"
#include "lsgs/toy/model.hpp"

namespace lsgs::toy {

struct Dataset {
    std::vector<ToySample> train;
    std::vector<ToySample> eval;
};

// Standard normal via Box-Muller from the 53-bit uniform stream.
double sample_normal(SplitMix64& rng);

// Labels are random axis-aligned rectangles on the 8x8 grid. Modality 0 is
// label plus N(0, 0.3^2) noise, modality 1 is 0.5*label plus N(0, 0.6^2),
// modality 2 is pure N(0, 1) noise.
Dataset generate_dataset(std::uint64_t seed, int n_train, int n_eval);

} // namespace lsgs::toy
