#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

// Minimal RFC 4180 helpers shared by every CSV report. Fields are quoted only
// when they contain a comma, quote, CR or LF.
namespace askew::csv {

std::string escape(std::string_view field);

/// Joins already-formatted fields with commas, escaping each.
std::string join(const std::vector<std::string>& fields);

/// Splits one physical line. Quoted fields may not span lines.
std::vector<std::string> split(std::string_view line);

/// Reads all non-empty lines of a stream, stripping a trailing '\r'.
std::vector<std::string> read_lines(std::istream& in);

/// Shortest round-trip decimal representation; integral values print without
/// a fractional part ("3", not "3.0").
std::string format_real(double value);

/// Strict parse: the whole field must be consumed. Throws std::invalid_argument.
double parse_real(std::string_view text);
long long parse_integer(std::string_view text);

}  // namespace askew::csv
