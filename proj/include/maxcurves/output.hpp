#pragma once

// CSV / JSON-lines emitters. Integers are written in decimal, fields in a
// fixed order, so identical inputs give byte-identical output.

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "maxcurves/exact_arith.hpp"

namespace maxcurves {

enum class Format { Csv, Jsonl };

struct OutputRecord {
  std::int64_t q = 0;
  std::int64_t a1 = 0;
  std::uint64_t n = 0;
  Source source = Source::OrdinarySearch;

  static OutputRecord from(const MaximalTriple& t) { return {t.q, t.a1, t.n, t.source}; }
  friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

inline const std::vector<std::string>& record_columns() {
  static const std::vector<std::string> columns{"q", "a1", "n", "source"};
  return columns;
}

std::string to_csv(const OutputRecord& r);
nlohmann::ordered_json to_json(const OutputRecord& r);
// Throws std::invalid_argument on missing keys or an unknown source tag.
OutputRecord record_from_json(const nlohmann::json& j);

using Cell = std::variant<std::int64_t, std::uint64_t, bool, std::string>;

// Writes a header (CSV only) on construction, then one line per row.
class TableWriter {
 public:
  TableWriter(std::ostream& out, Format format, std::vector<std::string> columns);

  void row(const std::vector<Cell>& cells);
  void record(const OutputRecord& r);

 private:
  std::ostream& out_;
  Format format_;
  std::vector<std::string> columns_;
};

}  // namespace maxcurves
