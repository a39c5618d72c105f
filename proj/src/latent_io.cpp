#include "lsgs/latent_io.hpp"

#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fmt/format.h>
#include <istream>
#include <limits>
#include <ostream>

#include "lsgs/errors.hpp"

namespace lsgs {

namespace {

constexpr std::array<char, 4> kMagic = {'L', 'S', 'G', 'S'};
constexpr std::uint32_t kFormatVersion = 1;
constexpr std::size_t kHeaderBytes = 20;

void put_u32(std::ostream& sink, std::uint32_t v) {
    const std::array<char, 4> raw = {
        static_cast<char>(v & 0xFF),
        static_cast<char>((v >> 8) & 0xFF),
        static_cast<char>((v >> 16) & 0xFF),
        static_cast<char>((v >> 24) & 0xFF),
    };
    sink.write(raw.data(), raw.size());
}

std::uint32_t get_u32(std::istream& source, std::size_t offset, const char* field) {
    std::array<unsigned char, 4> raw;
    if (!source.read(reinterpret_cast<char*>(raw.data()), raw.size())) {
        throw FormatError(fmt::format("truncated {} at byte offset {}", field, offset));
    }
    return static_cast<std::uint32_t>(raw[0]) | (static_cast<std::uint32_t>(raw[1]) << 8) |
           (static_cast<std::uint32_t>(raw[2]) << 16) | (static_cast<std::uint32_t>(raw[3]) << 24);
}

void validate_dump_shape(const LatentDump& dump) {
    if (dump.modality_count < 1 || dump.modality_count > kMaxModalityCount) {
        throw ValidationError(fmt::format("dump modality count {} out of range", dump.modality_count));
    }
    if (dump.latent_dim == 0) {
        throw ValidationError("dump latent dimension must be at least 1");
    }
    const std::size_t expected = static_cast<std::size_t>(dump.sample_count) *
                                 dump.scenario_count() * dump.latent_dim;
    if (dump.values.size() != expected) {
        throw ValidationError(fmt::format(
            "dump holds {} values, expected N*K*D = {}", dump.values.size(), expected));
    }
}

bool is_plain_integer(std::string_view text) {
    if (text.empty()) return false;
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

double parse_real(std::string_view text, std::size_t line, const char* column) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError(fmt::format("line {}: cannot parse {} \"{}\"", line, column, text));
    }
    if (!std::isfinite(value)) {
        throw ValidationError(fmt::format("line {}: non-finite {}", line, column));
    }
    return value;
}

std::uint64_t parse_count(std::string_view text, std::size_t line, const char* column) {
    std::uint64_t value = 0;
    if (!is_plain_integer(text)) {
        throw ParseError(fmt::format("line {}: cannot parse {} \"{}\"", line, column, text));
    }
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError(fmt::format("line {}: cannot parse {} \"{}\"", line, column, text));
    }
    return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

// Reads CSV rows after checking the header, enforcing canonical scenario
// order and a complete scenario set.
template <typename Row, typename ParseRow>
std::vector<Row> read_scenario_csv(std::istream& source, std::string_view expected_header,
                                   std::uint32_t& modality_count, ParseRow&& parse_row) {
    std::string line;
    if (!std::getline(source, line)) {
        throw FormatError("empty file, expected CSV header");
    }
    if (line != expected_header) {
        throw FormatError(fmt::format("bad CSV header \"{}\", expected \"{}\"", line, expected_header));
    }
    std::vector<Row> rows;
    std::size_t line_no = 1;
    modality_count = 0;
    while (std::getline(source, line)) {
        ++line_no;
        if (line.empty()) {
            throw ParseError(fmt::format("line {}: empty row", line_no));
        }
        const auto fields = split_fields(line);
        if (modality_count == 0) {
            if (fields[0].empty() || fields[0].size() > kMaxModalityCount) {
                throw ParseError(fmt::format(
                    "line {}: bad scenario mask \"{}\"", line_no, fields[0]));
            }
            modality_count = static_cast<std::uint32_t>(fields[0].size());
        }
        const ScenarioMask mask = parse_mask(fields[0], modality_count);
        const std::uint32_t expected_bits = static_cast<std::uint32_t>(rows.size()) + 1;
        if (mask.bits != expected_bits) {
            throw ValidationError(fmt::format(
                "line {}: scenario \"{}\" out of canonical order", line_no, fields[0]));
        }
        rows.push_back(parse_row(mask, fields, line_no));
    }
    if (modality_count == 0) {
        throw ValidationError("CSV has no scenario rows");
    }
    if (rows.size() != full_mask_bits(modality_count)) {
        throw ValidationError(fmt::format(
            "CSV has {} scenario rows, expected {}", rows.size(), full_mask_bits(modality_count)));
    }
    return rows;
}

} // namespace

std::span<const float> LatentDump::latent(std::size_t sample, std::size_t scenario_index) const {
    const std::size_t stride = scenario_count() * latent_dim;
    return std::span<const float>(values).subspan(sample * stride + scenario_index * latent_dim,
                                                  latent_dim);
}

std::span<float> LatentDump::latent(std::size_t sample, std::size_t scenario_index) {
    const std::size_t stride = scenario_count() * latent_dim;
    return std::span<float>(values).subspan(sample * stride + scenario_index * latent_dim,
                                            latent_dim);
}

void write_latent_dump(const LatentDump& dump, std::ostream& sink) {
    validate_dump_shape(dump);
    sink.write(kMagic.data(), kMagic.size());
    put_u32(sink, kFormatVersion);
    put_u32(sink, dump.modality_count);
    put_u32(sink, dump.sample_count);
    put_u32(sink, dump.latent_dim);
    for (std::size_t i = 0; i < dump.values.size(); ++i) {
        const float v = dump.values[i];
        if (!std::isfinite(v)) {
            throw ValidationError(fmt::format("non-finite latent value at index {}", i));
        }
        put_u32(sink, std::bit_cast<std::uint32_t>(v));
    }
    if (!sink) {
        throw DataError("write failure while emitting latent dump");
    }
}

LatentDump read_latent_dump(std::istream& source) {
    std::array<char, 4> magic;
    if (!source.read(magic.data(), magic.size())) {
        throw FormatError("truncated magic at byte offset 0");
    }
    if (magic != kMagic) {
        throw FormatError(fmt::format("bad magic \"{}{}{}{}\" at byte offset 0",
                                      magic[0], magic[1], magic[2], magic[3]));
    }
    const std::uint32_t version = get_u32(source, 4, "version");
    if (version != kFormatVersion) {
        throw FormatError(fmt::format("unsupported version {} at byte offset 4", version));
    }
    LatentDump dump;
    dump.modality_count = get_u32(source, 8, "modality count");
    dump.sample_count = get_u32(source, 12, "sample count");
    dump.latent_dim = get_u32(source, 16, "latent dimension");
    if (dump.modality_count < 1 || dump.modality_count > kMaxModalityCount) {
        throw FormatError(fmt::format(
            "modality count {} out of range at byte offset 8", dump.modality_count));
    }
    if (dump.latent_dim == 0) {
        throw FormatError("latent dimension 0 at byte offset 16");
    }
    const std::size_t count = static_cast<std::size_t>(dump.sample_count) *
                              dump.scenario_count() * dump.latent_dim;
    dump.values.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t offset = kHeaderBytes + i * 4;
        const std::uint32_t raw = get_u32(source, offset, "latent payload");
        const float v = std::bit_cast<float>(raw);
        if (!std::isfinite(v)) {
            throw FormatError(fmt::format("non-finite latent value at byte offset {}", offset));
        }
        dump.values[i] = v;
    }
    if (source.peek() != std::istream::traits_type::eof()) {
        throw FormatError(fmt::format(
            "trailing bytes after payload at byte offset {}", kHeaderBytes + count * 4));
    }
    return dump;
}

void write_distortion_csv(const DistortionTable& table, std::ostream& sink) {
    const std::size_t expected = full_mask_bits(table.modality_count);
    if (table.rows.size() != expected) {
        throw ValidationError(fmt::format(
            "distortion table has {} rows, expected {}", table.rows.size(), expected));
    }
    sink << "scenario_mask,mean_distortion,n_samples\n";
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
        const DistortionRow& row = table.rows[k];
        if (row.mask.bits != k + 1) {
            throw ValidationError(fmt::format("distortion row {} out of canonical order", k));
        }
        if (!(row.mean_distortion >= 0.0) || !std::isfinite(row.mean_distortion)) {
            throw ValidationError(fmt::format(
                "scenario {}: mean distortion must be finite and non-negative", format_mask(row.mask)));
        }
        if (row.mask.is_full() && row.mean_distortion != 0.0) {
            throw ValidationError("full-modality scenario must have zero distortion");
        }
        sink << format_mask(row.mask) << ',' << format_real(row.mean_distortion) << ','
             << row.n_samples << '\n';
    }
    if (!sink) {
        throw DataError("write failure while emitting distortion CSV");
    }
}

DistortionTable read_distortion_csv(std::istream& source) {
    DistortionTable table;
    table.rows = read_scenario_csv<DistortionRow>(
        source, "scenario_mask,mean_distortion,n_samples", table.modality_count,
        [](const ScenarioMask& mask, const std::vector<std::string_view>& fields,
           std::size_t line_no) {
            if (fields.size() != 3) {
                throw ParseError(fmt::format("line {}: expected 3 columns, got {}", line_no,
                                             fields.size()));
            }
            DistortionRow row;
            row.mask = mask;
            row.mean_distortion = parse_real(fields[1], line_no, "mean_distortion");
            row.n_samples = parse_count(fields[2], line_no, "n_samples");
            if (row.mean_distortion < 0.0) {
                throw ValidationError(fmt::format("line {}: negative mean distortion", line_no));
            }
            if (mask.is_full() && row.mean_distortion != 0.0) {
                throw ValidationError(fmt::format(
                    "line {}: full-modality scenario must have zero distortion", line_no));
            }
            return row;
        });
    return table;
}

void write_distribution_csv(const DistributionTable& table, std::ostream& sink) {
    const std::size_t expected = full_mask_bits(table.modality_count);
    if (table.rows.size() != expected) {
        throw ValidationError(fmt::format(
            "distribution table has {} rows, expected {}", table.rows.size(), expected));
    }
    sink << "scenario_mask,eta,r,p\n";
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
        const DistributionRow& row = table.rows[k];
        if (row.mask.bits != k + 1) {
            throw ValidationError(fmt::format("distribution row {} out of canonical order", k));
        }
        if (!std::isfinite(row.eta) || !std::isfinite(row.r) || !std::isfinite(row.p)) {
            throw ValidationError(fmt::format(
                "scenario {}: non-finite distribution entry", format_mask(row.mask)));
        }
        if (row.p < 0.0) {
            throw ValidationError(fmt::format(
                "scenario {}: negative probability", format_mask(row.mask)));
        }
        sink << format_mask(row.mask) << ',' << format_real(row.eta) << ','
             << format_real(row.r) << ',' << format_real(row.p) << '\n';
    }
    if (!sink) {
        throw DataError("write failure while emitting distribution CSV");
    }
}

DistributionTable read_distribution_csv(std::istream& source) {
    DistributionTable table;
    table.rows = read_scenario_csv<DistributionRow>(
        source, "scenario_mask,eta,r,p", table.modality_count,
        [](const ScenarioMask& mask, const std::vector<std::string_view>& fields,
           std::size_t line_no) {
            if (fields.size() != 4) {
                throw ParseError(fmt::format("line {}: expected 4 columns, got {}", line_no,
                                             fields.size()));
            }
            DistributionRow row;
            row.mask = mask;
            row.eta = parse_real(fields[1], line_no, "eta");
            row.r = parse_real(fields[2], line_no, "r");
            row.p = parse_real(fields[3], line_no, "p");
            if (row.p < 0.0) {
                throw ValidationError(fmt::format("line {}: negative probability", line_no));
            }
            return row;
        });
    return table;
}

std::string format_real(double value) {
    char buffer[32];
    const int n = std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return std::string(buffer, static_cast<std::size_t>(n));
}

} // namespace lsgs
