#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lsgs {

inline constexpr std::uint32_t kMaxModalityCount = 16;

constexpr std::uint32_t full_mask_bits(std::uint32_t modality_count) {
    return (1u << modality_count) - 1u;
}

// Binary availability vector over M modalities. Bit j set means modality j
// is available. The all-zero mask is never a valid scenario.
struct ScenarioMask {
    std::uint32_t bits = 0;
    std::uint32_t modality_count = 0;

    bool has_modality(std::uint32_t m) const { return (bits >> m) & 1u; }
    bool is_full() const { return bits == full_mask_bits(modality_count); }

    friend bool operator==(const ScenarioMask&, const ScenarioMask&) = default;
};

// All 2^M - 1 non-empty masks in ascending bitmask order. The index of a
// mask in `scenarios` is its canonical scenario index; the full mask is
// always last.
struct ScenarioSpace {
    std::uint32_t modality_count = 0;
    std::vector<ScenarioMask> scenarios;

    std::size_t scenario_count() const { return scenarios.size(); }
    const ScenarioMask& full_mask() const { return scenarios.back(); }
    std::size_t index_of(const ScenarioMask& mask) const { return mask.bits - 1; }
    std::size_t full_mask_index() const { return scenarios.size() - 1; }

    friend bool operator==(const ScenarioSpace&, const ScenarioSpace&) = default;
};

ScenarioSpace enumerate_scenarios(std::uint32_t modality_count);

// Text form: character j (left to right) is '1' iff modality j is available,
// so "110" at M=3 means modalities 0 and 1 present.
ScenarioMask parse_mask(std::string_view text, std::uint32_t modality_count);
std::string format_mask(const ScenarioMask& mask);

} // namespace lsgs
