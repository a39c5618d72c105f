#include "lsgs/toy/metrics.hpp"

#include "lsgs/errors.hpp"

namespace lsgs::toy {

std::vector<ScenarioMetrics> evaluate(const ToyModel& model, std::span<const ToySample> samples,
                                      const ScenarioSpace& space) {
    if (samples.empty()) {
        throw ValidationError("evaluation set is empty");
    }
    std::vector<ScenarioMetrics> metrics;
    metrics.reserve(space.scenario_count());
    for (const ScenarioMask& mask : space.scenarios) {
        std::uint64_t tp = 0, fp = 0, fn = 0;
        for (const ToySample& sample : samples) {
            const ForwardResult fwd = forward(model, sample, mask);
            for (std::size_t j = 0; j < kPixels; ++j) {
                const bool predicted = fwd.logits[j] >= 0.0;
                const bool positive = sample.label[j] != 0.0;
                if (predicted && positive) ++tp;
                else if (predicted && !positive) ++fp;
                else if (!predicted && positive) ++fn;
            }
        }
        ScenarioMetrics entry;
        entry.mask = mask;
        const std::uint64_t union_count = tp + fp + fn;
        entry.iou = union_count == 0 ? 1.0
                                     : static_cast<double>(tp) / static_cast<double>(union_count);
        const std::uint64_t f1_denominator = 2 * tp + fp + fn;
        entry.f1 = f1_denominator == 0
                       ? 1.0
                       : 2.0 * static_cast<double>(tp) / static_cast<double>(f1_denominator);
        metrics.push_back(entry);
    }
    return metrics;
}

} // namespace lsgs::toy
