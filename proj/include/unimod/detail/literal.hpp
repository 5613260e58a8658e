#ifndef UNIMOD_DETAIL_LITERAL_HPP
#define UNIMOD_DETAIL_LITERAL_HPP

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "unimod/error.hpp"

namespace unimod::detail {

inline std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

// Splits on `delim` at parenthesis depth zero.
inline std::vector<std::string_view> split_top_level(std::string_view text, char delim) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(') {
      ++depth;
    } else if (c == ')') {
      if (--depth < 0) throw Error(Errc::parse_error, "unbalanced ')' in '" + std::string(text) + "'");
    } else if (c == delim && depth == 0) {
      parts.push_back(trim(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) throw Error(Errc::parse_error, "unbalanced '(' in '" + std::string(text) + "'");
  parts.push_back(trim(text.substr(start)));
  return parts;
}

inline bool is_parenthesized(std::string_view text) {
  return text.size() >= 2 && text.front() == '(' && text.back() == ')';
}

inline std::int64_t parse_integer(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(Errc::parse_error, "expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace unimod::detail

#endif  // UNIMOD_DETAIL_LITERAL_HPP
