#pragma once

// File formats for signals and kernels.
//
// CSV:    "# sample_rate=<hz>" comment line, then one sample per row.
// Binary: 16-byte header (ASCII "CINF", uint32 version = 1, float64 rate),
//         then float64 samples; all little-endian.
// Kernel: JSON object {form, coefficients, nominal_group_delay, design}.

#include <filesystem>
#include <iosfwd>

#include <json.hpp>

#include "cinf/filters.hpp"
#include "cinf/signal.hpp"

namespace cinf {

inline constexpr std::uint32_t kBinaryFormatVersion = 1;

void write_csv(const Signal& s, std::ostream& out);
Signal read_csv(std::istream& in);
void write_csv(const Signal& s, const std::filesystem::path& path);
Signal read_csv(const std::filesystem::path& path);

void write_binary(const Signal& s, std::ostream& out);
Signal read_binary(std::istream& in);
void write_binary(const Signal& s, const std::filesystem::path& path);
Signal read_binary(const std::filesystem::path& path);

nlohmann::json to_json(const FilterKernel& kernel);
FilterKernel kernel_from_json(const nlohmann::json& j);

}  // namespace cinf
