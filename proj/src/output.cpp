#include "maxcurves/output.hpp"

#include <stdexcept>

namespace maxcurves {

namespace {

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else {
          return std::to_string(v);
        }
      },
      c);
}

}  // namespace

std::string to_csv(const OutputRecord& r) {
  return std::to_string(r.q) + ',' + std::to_string(r.a1) + ',' + std::to_string(r.n) + ',' +
         to_string(r.source);
}

nlohmann::ordered_json to_json(const OutputRecord& r) {
  nlohmann::ordered_json j;
  j["q"] = r.q;
  j["a1"] = r.a1;
  j["n"] = r.n;
  j["source"] = to_string(r.source);
  return j;
}

OutputRecord record_from_json(const nlohmann::json& j) {
  for (const auto& key : record_columns()) {
    if (!j.contains(key)) throw std::invalid_argument("record is missing key '" + key + "'");
  }
  const auto source = parse_source(j.at("source").get<std::string>());
  if (!source) throw std::invalid_argument("unknown source tag");
  return {j.at("q").get<std::int64_t>(), j.at("a1").get<std::int64_t>(),
          j.at("n").get<std::uint64_t>(), *source};
}

TableWriter::TableWriter(std::ostream& out, Format format, std::vector<std::string> columns)
    : out_(out), format_(format), columns_(std::move(columns)) {
  if (format_ == Format::Csv) {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      if (i) out_ << ',';
      out_ << columns_[i];
    }
    out_ << '\n';
  }
}

void TableWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != columns_.size()) throw std::logic_error("row width mismatch");
  if (format_ == Format::Csv) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cell_text(cells[i]);
    }
    out_ << '\n';
    return;
  }
  nlohmann::ordered_json j;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::visit([&](const auto& v) { j[columns_[i]] = v; }, cells[i]);
  }
  out_ << j.dump() << '\n';
}

void TableWriter::record(const OutputRecord& r) {
  if (format_ == Format::Csv) {
    out_ << to_csv(r) << '\n';
  } else {
    out_ << to_json(r).dump() << '\n';
  }
}

}  // namespace maxcurves
