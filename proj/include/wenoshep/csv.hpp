#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace wenoshep::csv {

/// Shortest form that still round-trips: 17 significant digits, %g style.
std::string format_double(double v);

/// Strict decimal/scientific parse of a whole field; throws
/// MalformedInputError with `context` on failure.
double parse_double(std::string_view field, const std::string& context);

std::vector<std::string_view> split(std::string_view line, char sep = ',');

/// File contents split into lines; a trailing '\r' is dropped from each line
/// and trailing empty lines are discarded.
std::vector<std::string> read_lines(const std::string& path);

/// Writes `content` to `path` in binary mode; throws std::runtime_error naming
/// the path on failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace wenoshep::csv
