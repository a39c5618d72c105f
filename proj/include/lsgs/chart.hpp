#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace lsgs {

// Self-contained SVG bar chart: exactly one <rect> per scenario, labeled by
// mask string, bar height proportional to probability.
void write_probability_chart(std::ostream& sink, const std::vector<std::string>& labels,
                             std::span<const double> probabilities);

} // namespace lsgs
