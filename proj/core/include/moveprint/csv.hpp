#ifndef MOVEPRINT_CSV_HPP
#define MOVEPRINT_CSV_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace moveprint::csv {

// Splits one CSV record. Double-quoted fields may contain commas and escaped
// quotes (""). No multi-line fields.
std::vector<std::string> split_line(std::string_view line);

// Appends a field to a record under construction, quoting when needed.
void append_field(std::string& record, std::string_view field);

std::string join(const std::vector<std::string>& fields);

// Fixed-point decimal formatting, locale-free and bit-stable across runs.
std::string format_fixed(double value, int decimals);

// Shortest representation that parses back to the identical double.
std::string format_double(double value);

std::optional<std::int64_t> parse_int(std::string_view text);
std::optional<double> parse_double(std::string_view text);

}  // namespace moveprint::csv

#endif  // MOVEPRINT_CSV_HPP
