#ifndef UNIMOD_REPORT_HPP
#define UNIMOD_REPORT_HPP

// Row-oriented report rendering. CSV carries a header row whose first column
// is the schema tag; JSON is an array of objects with the same field names.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "unimod/error.hpp"
#include "unimod/orthosets.hpp"

namespace unimod {

inline constexpr std::string_view kSchemaVersion = "v1";

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

namespace detail {

inline std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string render_csv(const Table& table) {
  std::string out;
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += detail::csv_field(fields[i]);
    }
    out += '\n';
  };
  line(table.columns);
  for (const auto& row : table.rows) line(row);
  return out;
}

inline std::string render_json(const Table& table) {
  auto array = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json object;
    for (std::size_t i = 0; i < table.columns.size(); ++i) object[table.columns[i]] = row[i];
    array.push_back(std::move(object));
  }
  return array.dump(2) + "\n";
}

/// "key: value" blocks separated by blank lines.
inline std::string render_text(const Table& table) {
  std::size_t width = 0;
  for (const auto& c : table.columns) width = std::max(width, c.size());
  std::ostringstream out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (r) out << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      out << std::left << std::setw(static_cast<int>(width)) << table.columns[i] << "  " << table.rows[r][i] << '\n';
    }
  }
  return out.str();
}

inline std::string render(const Table& table, std::string_view format) {
  if (format == "csv") return render_csv(table);
  if (format == "json") return render_json(table);
  if (format == "text") return render_text(table);
  throw Error(Errc::parse_error, "unknown output format '" + std::string(format) + "'");
}

/// Fixed v1 columns. `elapsed_ms` is empty unless timings are requested so
/// that sequential runs stay byte-identical.
inline Table verification_table(const std::vector<VerificationRow>& rows, bool with_timings) {
  Table table;
  table.columns = {"schema",        "ring",          "card_R",       "card_M",        "form",
                   "det",           "det_class",     "disc_class",   "theoretical_S", "brute_force_S",
                   "match",         "witness_size",  "inclusion_maximal", "node_count", "elapsed_ms"};
  auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
  for (const auto& row : rows) {
    std::string elapsed;
    if (with_timings) {
      std::ostringstream ms;
      ms << std::fixed << std::setprecision(3) << row.elapsed_seconds * 1000.0;
      elapsed = ms.str();
    }
    table.rows.push_back({std::string(kSchemaVersion), row.ring_label, std::to_string(row.ring_card),
                          std::to_string(row.ideal_card), row.form_label, row.det,
                          std::string(square_class_name(row.det_square)),
                          std::string(square_class_name(row.disc_square)), std::to_string(row.theoretical),
                          std::to_string(row.brute_force), flag(row.match()), std::to_string(row.witness_size),
                          flag(row.inclusion_maximal), std::to_string(row.node_count), elapsed});
  }
  return table;
}

/// Rows ordered by (ring label, form label); stable for equal keys.
inline void sort_rows(std::vector<VerificationRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const VerificationRow& a, const VerificationRow& b) {
    return std::tie(a.ring_label, a.form_label) < std::tie(b.ring_label, b.form_label);
  });
}

/// Writes to a sibling temporary and renames, so readers never see a
/// partial report.
inline void write_atomically(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::validation_error, "cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(Errc::validation_error, "failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace unimod

#endif  // UNIMOD_REPORT_HPP
