#include "lsgs/scenario.hpp"

#include <fmt/format.h>

#include "lsgs/errors.hpp"

namespace lsgs {

ScenarioSpace enumerate_scenarios(std::uint32_t modality_count) {
    if (modality_count < 1 || modality_count > kMaxModalityCount) {
        throw ConfigError(fmt::format(
            "modality count must be in [1, {}], got {}", kMaxModalityCount, modality_count));
    }
    ScenarioSpace space;
    space.modality_count = modality_count;
    const std::uint32_t full = full_mask_bits(modality_count);
    space.scenarios.reserve(full);
    for (std::uint32_t bits = 1; bits <= full; ++bits) {
        space.scenarios.push_back(ScenarioMask{bits, modality_count});
    }
    return space;
}

ScenarioMask parse_mask(std::string_view text, std::uint32_t modality_count) {
    if (modality_count < 1 || modality_count > kMaxModalityCount) {
        throw ConfigError(fmt::format(
            "modality count must be in [1, {}], got {}", kMaxModalityCount, modality_count));
    }
    if (text.size() != modality_count) {
        throw ParseError(fmt::format(
            "mask string \"{}\" has length {}, expected {}", text, text.size(), modality_count));
    }
    std::uint32_t bits = 0;
    for (std::uint32_t j = 0; j < modality_count; ++j) {
        const char c = text[j];
        if (c == '1') {
            bits |= 1u << j;
        } else if (c != '0') {
            throw ParseError(fmt::format("mask string \"{}\" has non-binary character", text));
        }
    }
    if (bits == 0) {
        throw ParseError(fmt::format("mask string \"{}\" selects no modality", text));
    }
    return ScenarioMask{bits, modality_count};
}

std::string format_mask(const ScenarioMask& mask) {
    std::string text(mask.modality_count, '0');
    for (std::uint32_t j = 0; j < mask.modality_count; ++j) {
        if (mask.has_modality(j)) text[j] = '1';
    }
    return text;
}

} // namespace lsgs
