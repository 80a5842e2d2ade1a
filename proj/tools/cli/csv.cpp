#include "csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "lexlab/error.hpp"

namespace lexlab::cli {

std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t k = 0; k < header.size(); ++k)
    if (header[k] == name) return k;
  throw IngestionError("CSV has no column '" + name + "'");
}

std::vector<double> CsvTable::numeric_column(const std::string& name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string& cell = rows[r].at(c);
    double v = 0.0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size())
      throw IngestionError("column '" + name + "' holds non-numeric '" + cell + "'", r + 2);
    out.push_back(v);
  }
  return out;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path.string());
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) os << ',';
      os << cells[k];
    }
    os << '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
  if (!os) throw Error("failed writing " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IngestionError("cannot open '" + path.string() + "'");
  CsvTable t;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (t.header.empty()) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size())
      throw IngestionError("expected " + std::to_string(t.header.size()) + " fields, got " +
                               std::to_string(cells.size()),
                           line_no);
    t.rows.push_back(std::move(cells));
  }
  if (t.header.empty()) throw IngestionError("'" + path.string() + "' is empty");
  return t;
}

}  // namespace lexlab::cli
