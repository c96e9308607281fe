#include "hopcall/csv.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>

#include "hopcall/error.hpp"

namespace hopcall::csv {

std::vector<std::string> split_record(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

std::string lowercase(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_time(double seconds) {
  char buf[64];
  double rounded = std::round(seconds * 1000.0) / 1000.0;
  if (rounded == 0.0) rounded = 0.0;  // no "-0.000"
  std::snprintf(buf, sizeof buf, "%.3f", rounded);
  return buf;
}

bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

double parse_real(const std::string& field, std::size_t line_no, std::string_view column) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty() || !std::isfinite(value)) {
    throw Error(ErrorCode::SchemaError, "line " + std::to_string(line_no) + ": " + std::string(column) +
                                            " is not a number: '" + field + "'");
  }
  return value;
}

long long parse_integer(const std::string& field, std::size_t line_no, std::string_view column) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw Error(ErrorCode::SchemaError, "line " + std::to_string(line_no) + ": " + std::string(column) +
                                            " is not an integer: '" + field + "'");
  }
  return value;
}

}  // namespace hopcall::csv
