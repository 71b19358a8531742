#ifndef PROBEMAX_INSTANCE_FILE_HPP
#define PROBEMAX_INSTANCE_FILE_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "probemax/instance.hpp"

namespace probemax {

// Line-oriented instance format:
//
//   probemax-instance v1
//   k 2
//   dist discrete values=0,1 probs=0.5,0.5
//   dist uniform a=0 b=1
//   dist exponential rate=2
//
// Blank lines and text after '#' are ignored. Numbers are written in the
// shortest form that reads back to the same double.

inline constexpr std::string_view kInstanceHeader = "probemax-instance v1";

/// Throws ProbeError(kParse) naming the line and field on malformed input;
/// distribution and instance validation errors keep their own codes.
[[nodiscard]] Instance parse_instance(std::string_view text);
[[nodiscard]] Instance read_instance_file(const std::filesystem::path& path);

/// Mixtures have no file representation and are rejected.
[[nodiscard]] std::string emit_instance(const Instance& inst);
void write_instance_file(const std::filesystem::path& path, const Instance& inst);

/// Shortest round-trip decimal rendering.
[[nodiscard]] std::string format_double(double value);

/// Parses the whole of `text` as a finite double; false on any leftover input.
[[nodiscard]] bool parse_double(std::string_view text, double& out);

}  // namespace probemax

#endif  // PROBEMAX_INSTANCE_FILE_HPP
