#pragma once

#include <string>
#include <utility>
#include <vector>

namespace amm_lab::cli {

/// Ordered key/value description of a run, enough to reproduce it.
using SpecEntries = std::vector<std::pair<std::string, std::string>>;

/// %.17g: every double round-trips, so equal runs give equal bytes.
std::string format_number(double x);

/// "# amm-lab <command> key=value ..." metadata line (no trailing newline).
std::string spec_comment(const std::string& command, const SpecEntries& entries);

/// Inverse of spec_comment: returns the command and entries, or throws
/// std::invalid_argument on a malformed line.
std::pair<std::string, SpecEntries> parse_spec_comment(const std::string& line);

/// Reads `key=value` lines; blank lines and lines starting with '#' are
/// skipped. Keys and values are trimmed.
SpecEntries read_config_file(const std::string& path);

}  // namespace amm_lab::cli
