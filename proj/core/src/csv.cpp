#include "moveprint/csv.hpp"

#include <charconv>

namespace moveprint::csv {

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
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
    } else if (c == '"' && current.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else if (c == '\r' && i + 1 == line.size()) {
      // tolerate CRLF input
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

void append_field(std::string& record, std::string_view field) {
  if (!record.empty()) record.push_back(',');
  const bool needs_quotes =
      field.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs_quotes) {
    record.append(field);
    return;
  }
  record.push_back('"');
  for (const char c : field) {
    if (c == '"') record.push_back('"');
    record.push_back(c);
  }
  record.push_back('"');
}

std::string join(const std::vector<std::string>& fields) {
  std::string record;
  for (const auto& f : fields) append_field(record, f);
  return record;
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::fixed, decimals);
  return std::string(buf, res.ptr);
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::optional<std::int64_t> parse_int(std::string_view text) {
  std::int64_t out = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc{} || res.ptr != last) return std::nullopt;
  return out;
}

std::optional<double> parse_double(std::string_view text) {
  double out = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc{} || res.ptr != last) return std::nullopt;
  return out;
}

}  // namespace moveprint::csv
