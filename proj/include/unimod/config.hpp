#ifndef UNIMOD_CONFIG_HPP
#define UNIMOD_CONFIG_HPP

// Ring catalog documents. The grammar is a small TOML subset:
//
//   # comment
//   timeout_secs = 60          global keys come before the first [[ring]]
//   max_card = 59049
//   format = "csv"
//   out = "report.csv"
//
//   [[ring]] kind="Zps" p=3 s=2
//   [[ring]]
//   kind = "ext"
//   p = 3
//   modulus = [1, 0, 1]        constant term first
//
// Several key=value pairs may share a line. Ring keys: kind (Zps, ext,
// chain, galois), p, s, modulus, e. Unknown or repeated keys are errors.

#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "unimod/error.hpp"
#include "unimod/ring.hpp"

namespace unimod {

struct CatalogConfig {
  std::vector<RingSpec> rings;
  std::uint64_t max_card = 59049;
  double timeout_secs = 60.0;
  std::string format = "csv";
  std::string out;

  RingOptions ring_options() const { return {max_card}; }
};

namespace detail {

using ValueType = std::variant<std::int64_t, double, std::string, std::vector<std::int64_t>>;

struct ConfigValue {
  ValueType value;
  int line = 0;
  int column = 0;
};

class ConfigLexer {
 public:
  explicit ConfigLexer(std::string_view text) : text_(text) {}

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(line_, column_, message); }

  bool consume(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    advance(token.size());
    return true;
  }

  std::string identifier() {
    skip_space();
    std::string out;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      out += text_[pos_];
      advance(1);
    }
    if (out.empty()) fail("expected a key or [[ring]]");
    return out;
  }

  ConfigValue value() {
    skip_inline_space();
    ConfigValue v{std::int64_t{0}, line_, column_};
    if (pos_ >= text_.size()) fail("expected a value");
    const char c = text_[pos_];
    if (c == '"') {
      advance(1);
      std::string s;
      while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n') {
        s += text_[pos_];
        advance(1);
      }
      if (pos_ >= text_.size() || text_[pos_] != '"') fail("unterminated string");
      advance(1);
      v.value = s;
    } else if (c == '[') {
      advance(1);
      std::vector<std::int64_t> list;
      skip_space();
      if (!consume("]")) {
        while (true) {
          const auto item = number();
          if (!std::holds_alternative<std::int64_t>(item)) fail("list entries must be integers");
          list.push_back(std::get<std::int64_t>(item));
          if (consume("]")) break;
          if (!consume(",")) fail("expected ',' or ']' in list");
        }
      }
      v.value = list;
    } else {
      v.value = std::visit([](auto x) -> ValueType { return x; }, number());
    }
    return v;
  }

 private:
  std::variant<std::int64_t, double> number() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) advance(1);
    bool fractional = false;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' || text_[pos_] == '_')) {
      fractional = fractional || text_[pos_] == '.';
      advance(1);
    }
    std::string digits;
    for (const char ch : text_.substr(start, pos_ - start))
      if (ch != '_') digits += ch;
    if (digits.empty() || digits == "-" || digits == "+") fail("expected a number");
    try {
      if (fractional) return std::stod(digits);
      std::size_t used = 0;
      const auto value = std::stoll(digits, &used);
      if (used != digits.size()) fail("malformed integer '" + digits + "'");
      return static_cast<std::int64_t>(value);
    } catch (const std::logic_error&) {
      fail("malformed number '" + digits + "'");
    }
  }

  void advance(std::size_t count) {
    for (std::size_t i = 0; i < count && pos_ < text_.size(); ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
      ++pos_;
    }
  }

  void skip_inline_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) advance(1);
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

struct RingSection {
  int line = 0;
  std::map<std::string, ConfigValue> keys;
};

inline std::int64_t integer_key(const RingSection& section, const std::string& key) {
  const auto& v = section.keys.at(key);
  if (!std::holds_alternative<std::int64_t>(v.value)) throw ParseError(v.line, v.column, key + " must be an integer");
  return std::get<std::int64_t>(v.value);
}

inline RingSpec ring_spec_from(const RingSection& section) {
  auto has = [&](const char* key) { return section.keys.count(key) > 0; };
  auto invalid = [&](const std::string& message) {
    return ValidationError(Errc::invalid_spec,
                           "ring at line " + std::to_string(section.line) + ": InvalidSpec: " + message);
  };
  if (!has("kind")) throw invalid("missing kind");
  const auto& kind_value = section.keys.at("kind");
  if (!std::holds_alternative<std::string>(kind_value.value)) {
    throw ParseError(kind_value.line, kind_value.column, "kind must be a string");
  }
  const auto& kind = std::get<std::string>(kind_value.value);
  if (!has("p")) throw invalid("missing p");

  RingSpec spec;
  spec.p = integer_key(section, "p");
  if (has("modulus")) {
    const auto& m = section.keys.at("modulus");
    if (!std::holds_alternative<std::vector<std::int64_t>>(m.value)) {
      throw ParseError(m.line, m.column, "modulus must be a list of integers");
    }
    spec.modulus = std::get<std::vector<std::int64_t>>(m.value);
  }
  if (has("s")) spec.s = integer_key(section, "s");
  if (has("e")) spec.e = integer_key(section, "e");

  auto forbid = [&](const char* key) {
    if (has(key)) throw invalid(std::string("key '") + key + "' does not apply to kind \"" + kind + "\"");
  };
  auto require = [&](const char* key) {
    if (!has(key)) throw invalid(std::string("kind \"") + kind + "\" needs key '" + key + "'");
  };
  if (kind == "Zps") {
    spec.kind = RingKind::integer_modulus;
    forbid("modulus");
    forbid("e");
  } else if (kind == "ext") {
    spec.kind = RingKind::field_extension;
    require("modulus");
    forbid("s");
    forbid("e");
  } else if (kind == "chain") {
    spec.kind = RingKind::chain;
    require("e");
    forbid("s");
  } else if (kind == "galois") {
    spec.kind = RingKind::galois;
    require("s");
    require("modulus");
    forbid("e");
  } else {
    throw ParseError(kind_value.line, kind_value.column, "unknown ring kind \"" + kind + "\"");
  }
  return spec;
}

}  // namespace detail

/// Parses the document without constructing rings.
inline CatalogConfig parse_config_syntax(std::string_view text, std::vector<int>* ring_lines = nullptr) {
  detail::ConfigLexer lexer(text);
  CatalogConfig config;
  std::vector<detail::RingSection> sections;
  std::map<std::string, int> seen_globals;

  while (!lexer.at_end()) {
    const int line = lexer.line();
    const int column = lexer.column();
    if (lexer.consume("[[")) {
      const auto name = lexer.identifier();
      if (name != "ring" || !lexer.consume("]]")) throw ParseError(line, column, "only [[ring]] sections are allowed");
      sections.push_back({line, {}});
      continue;
    }
    const auto key = lexer.identifier();
    if (!lexer.consume("=")) lexer.fail("expected '=' after '" + key + "'");
    auto value = lexer.value();

    if (!sections.empty()) {
      static const std::set<std::string> ring_keys{"kind", "p", "s", "modulus", "e"};
      if (!ring_keys.count(key)) throw ParseError(line, column, "unknown ring key '" + key + "'");
      auto& keys = sections.back().keys;
      if (keys.count(key)) throw ParseError(line, column, "duplicate key '" + key + "'");
      keys.emplace(key, std::move(value));
      continue;
    }

    if (seen_globals.count(key)) throw ParseError(line, column, "duplicate key '" + key + "'");
    seen_globals[key] = line;
    auto as_string = [&]() -> std::string {
      if (!std::holds_alternative<std::string>(value.value)) {
        throw ParseError(value.line, value.column, key + " must be a string");
      }
      return std::get<std::string>(value.value);
    };
    if (key == "timeout_secs") {
      if (const auto* i = std::get_if<std::int64_t>(&value.value)) {
        config.timeout_secs = static_cast<double>(*i);
      } else if (const auto* d = std::get_if<double>(&value.value)) {
        config.timeout_secs = *d;
      } else {
        throw ParseError(value.line, value.column, "timeout_secs must be a number");
      }
      if (config.timeout_secs <= 0) throw ParseError(value.line, value.column, "timeout_secs must be positive");
    } else if (key == "max_card") {
      const auto* i = std::get_if<std::int64_t>(&value.value);
      if (!i || *i <= 0) throw ParseError(value.line, value.column, "max_card must be a positive integer");
      config.max_card = static_cast<std::uint64_t>(*i);
    } else if (key == "format") {
      config.format = as_string();
      if (config.format != "csv" && config.format != "json") {
        throw ParseError(value.line, value.column, "format must be \"csv\" or \"json\"");
      }
    } else if (key == "out") {
      config.out = as_string();
    } else {
      throw ParseError(line, column, "unknown key '" + key + "'");
    }
  }

  for (const auto& section : sections) {
    config.rings.push_back(detail::ring_spec_from(section));
    if (ring_lines) ring_lines->push_back(section.line);
  }
  return config;
}

/// Parses and validates: at least one ring, and every ring constructs.
inline CatalogConfig parse_config(std::string_view text) {
  std::vector<int> lines;
  CatalogConfig config = parse_config_syntax(text, &lines);
  if (config.rings.empty()) throw ValidationError(Errc::invalid_spec, "catalog lists no [[ring]] entries");
  for (std::size_t i = 0; i < config.rings.size(); ++i) {
    try {
      LocalRing::make(config.rings[i], config.ring_options());
    } catch (const Error& err) {
      throw ValidationError(err.code(), "ring at line " + std::to_string(lines[i]) + ": " + err.what());
    }
  }
  return config;
}

/// Parses a single inline ring spec such as `kind="Zps" p=3 s=2`.
inline RingSpec parse_ring_spec(std::string_view text) {
  const auto config = parse_config_syntax("[[ring]] " + std::string(text));
  if (config.rings.size() != 1) throw Error(Errc::parse_error, "expected exactly one ring spec");
  return config.rings.front();
}

/// The catalog shipped as configs/default_catalog.toml.
inline std::string_view default_catalog_text() {
  return R"(# Default verification catalog: fields, prime powers, nilpotents and
# mixed characteristic.
timeout_secs = 60
max_card = 59049
format = "csv"

[[ring]] kind="Zps" p=3 s=1
[[ring]] kind="Zps" p=5 s=1
[[ring]] kind="Zps" p=7 s=1
[[ring]] kind="Zps" p=3 s=2
[[ring]] kind="Zps" p=5 s=2
[[ring]] kind="Zps" p=3 s=3
[[ring]] kind="ext" p=3 modulus=[1,0,1]
[[ring]] kind="ext" p=5 modulus=[2,0,1]
[[ring]] kind="ext" p=3 modulus=[1,2,0,1]
[[ring]] kind="chain" p=3 e=2
[[ring]] kind="chain" p=5 e=2
[[ring]] kind="galois" p=3 s=2 modulus=[2,1,1]
)";
}

}  // namespace unimod

#endif  // UNIMOD_CONFIG_HPP
