#include "lsgs/chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fmt/format.h>
#include <ostream>

#include "lsgs/errors.hpp"

namespace lsgs {

namespace {

constexpr double kBarWidth = 48.0;
constexpr double kBarGap = 16.0;
constexpr double kPlotHeight = 240.0;
constexpr double kMarginLeft = 48.0;
constexpr double kMarginTop = 24.0;
constexpr double kMarginBottom = 48.0;

std::string svg_number(double v) {
    char buffer[32];
    const int n = std::snprintf(buffer, sizeof(buffer), "%.4f", v);
    return std::string(buffer, static_cast<std::size_t>(n));
}

} // namespace

void write_probability_chart(std::ostream& sink, const std::vector<std::string>& labels,
                             std::span<const double> probabilities) {
    if (labels.size() != probabilities.size() || probabilities.empty()) {
        throw ValidationError("chart needs one label per probability and at least one bar");
    }
    double max_p = 0.0;
    for (double p : probabilities) {
        if (!std::isfinite(p) || p < 0.0) {
            throw ValidationError("chart probabilities must be finite and non-negative");
        }
        max_p = std::max(max_p, p);
    }
    if (max_p == 0.0) max_p = 1.0;

    const std::size_t count = probabilities.size();
    const double width = kMarginLeft + count * (kBarWidth + kBarGap) + kBarGap;
    const double height = kMarginTop + kPlotHeight + kMarginBottom;
    const double baseline = kMarginTop + kPlotHeight;

    sink << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    sink << fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
        "viewBox=\"0 0 {} {}\">\n",
        svg_number(width), svg_number(height), svg_number(width), svg_number(height));
    sink << fmt::format(
        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#333\"/>\n",
        svg_number(kMarginLeft), svg_number(baseline), svg_number(width - kBarGap),
        svg_number(baseline));
    for (std::size_t k = 0; k < count; ++k) {
        const double bar_height = probabilities[k] / max_p * kPlotHeight;
        const double x = kMarginLeft + kBarGap + k * (kBarWidth + kBarGap);
        const double y = baseline - bar_height;
        sink << fmt::format(
            "  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#4878a8\"/>\n",
            svg_number(x), svg_number(y), svg_number(kBarWidth), svg_number(bar_height));
        sink << fmt::format(
            "  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"monospace\" "
            "font-size=\"12\">{}</text>\n",
            svg_number(x + kBarWidth / 2.0), svg_number(baseline + 18.0), labels[k]);
        sink << fmt::format(
            "  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"monospace\" "
            "font-size=\"10\">{:.3f}</text>\n",
            svg_number(x + kBarWidth / 2.0), svg_number(y - 4.0), probabilities[k]);
    }
    sink << "</svg>\n";
    if (!sink) {
        throw DataError("write failure while emitting chart");
    }
}

} // namespace lsgs
