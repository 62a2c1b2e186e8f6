#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace vpfp {

/// Scientific notation with 17 significant digits, '.' decimal separator.
std::string format_sci(double v);

/// Writes content to a temporary file in the same directory, then renames
/// it over the target (atomic on POSIX).
void atomic_write_file(const std::filesystem::path& path,
                       const std::string& content);

/// key=value configuration files: one pair per line, '#' comments, blank
/// lines ignored, whitespace trimmed.
std::map<std::string, std::string> parse_config_file(
    const std::filesystem::path& path);

std::vector<double> parse_double_list(const std::string& csv);

std::string join_csv_row(const std::vector<std::string>& cells);

}  // namespace vpfp
