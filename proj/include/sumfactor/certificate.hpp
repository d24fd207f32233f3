#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sumfactor/error.hpp"

namespace sumfactor {

/// Ordered key=value record followed by a citation list. Keys are unique.
struct Certificate {
  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<std::string> citations;

  void set(std::string key, std::string value) {
    for (auto& [k, v] : fields)
      if (k == key) {
        v = std::move(value);
        return;
      }
    fields.emplace_back(std::move(key), std::move(value));
  }

  std::optional<std::string> get(std::string_view key) const {
    for (const auto& [k, v] : fields)
      if (k == key) return v;
    return std::nullopt;
  }

  const std::string& at(std::string_view key) const {
    for (const auto& [k, v] : fields)
      if (k == key) return v;
    throw InvalidArgument("certificate has no field '" + std::string(key) + "'");
  }

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// One `key=value` line per field, then `citations:` and one `- ` line per citation.
inline std::string serialize(const Certificate& c) {
  std::string out;
  for (const auto& [k, v] : c.fields) out += k + "=" + v + "\n";
  out += "citations:\n";
  for (const auto& cite : c.citations) out += "- " + cite + "\n";
  return out;
}

inline Certificate parse_certificate(std::string_view text) {
  Certificate c;
  bool in_citations = false;
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (in_citations) {
      if (line.rfind("- ", 0) != 0) throw SyntaxError("line " + std::to_string(line_no) + ": expected '- <citation>'");
      c.citations.push_back(line.substr(2));
      continue;
    }
    if (line == "citations:") {
      in_citations = true;
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos || eq == 0)
      throw SyntaxError("line " + std::to_string(line_no) + ": expected key=value");
    std::string key = line.substr(0, eq);
    if (c.get(key)) throw SyntaxError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    c.fields.emplace_back(std::move(key), line.substr(eq + 1));
  }
  return c;
}

}  // namespace sumfactor
