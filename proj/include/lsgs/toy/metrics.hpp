#pragma once

#include <span>
#include <vector>

#include "lsgs/scenario.hpp"
#include "lsgs/toy/model.hpp"

namespace lsgs::toy {

struct ScenarioMetrics {
    ScenarioMask mask;
    double iou = 0.0;
    double f1 = 0.0;
};

// Micro-aggregated IoU and F1 per scenario over all evaluation pixels.
// Predictions threshold the sigmoid at 0.5 (logit >= 0). When a scenario has
// no positive labels and no positive predictions both metrics are 1.
std::vector<ScenarioMetrics> evaluate(const ToyModel& model, std::span<const ToySample> samples,
                                      const ScenarioSpace& space);

} // namespace lsgs::toy
