#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace hopcall::csv {

/// Splits one CSV record. Fields may be double-quoted with "" escapes.
std::vector<std::string> split_record(std::string_view line);

/// Quotes the field only when it contains a comma, quote or newline.
std::string escape(std::string_view field);
/// ASCII lowercase; labels are case-insensitive on input.
std::string lowercase(std::string_view text);

/// Fixed three-decimal rendering used for every time column.
std::string format_time(double seconds);

/// Reads the next line without its terminator (accepts LF and CRLF).
bool read_line(std::istream& in, std::string& line);

double parse_real(const std::string& field, std::size_t line_no, std::string_view column);
long long parse_integer(const std::string& field, std::size_t line_no, std::string_view column);

}  // namespace hopcall::csv
