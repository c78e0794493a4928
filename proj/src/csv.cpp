#include "rmt/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rmt {

const char* const kCsvHeader =
    "k,consensus_error_sq,grad_norm_mean,f_gap,ds,s_norm_max,m_norm_max,"
    "tracking_residual,tube_ok";

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const std::vector<IterateRecord>& records, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (f == nullptr) throw std::runtime_error("write_csv: cannot open " + path);
  std::fprintf(f, "%s\n", kCsvHeader);
  for (const IterateRecord& r : records) {
    std::fprintf(f, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", r.k,
                 r.consensus_error_sq, r.grad_norm_mean, r.f_gap, r.ds,
                 r.s_norm_max, r.m_norm_max, r.tracking_residual,
                 r.tube_ok ? 1 : 0);
  }
  if (std::fclose(f) != 0) throw std::runtime_error("write_csv: write failed");
}

std::size_t CsvTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw std::runtime_error("csv: no column named " + name);
}

CsvTable read_csv_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open " + path);
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("csv: empty file " + path);
  std::istringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) table.columns.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != table.columns.size())
      throw std::runtime_error("csv: ragged row in " + path);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<IterateRecord> read_records(const std::string& path) {
  CsvTable t = read_csv_table(path);
  const std::size_t ik = t.column_index("k");
  const std::size_t ice = t.column_index("consensus_error_sq");
  const std::size_t ign = t.column_index("grad_norm_mean");
  const std::size_t ifg = t.column_index("f_gap");
  const std::size_t ids = t.column_index("ds");
  const std::size_t isn = t.column_index("s_norm_max");
  const std::size_t imn = t.column_index("m_norm_max");
  const std::size_t itr = t.column_index("tracking_residual");
  const std::size_t itb = t.column_index("tube_ok");
  std::vector<IterateRecord> out;
  out.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    IterateRecord r;
    r.k = std::size_t(row[ik]);
    r.consensus_error_sq = row[ice];
    r.grad_norm_mean = row[ign];
    r.f_gap = row[ifg];
    r.ds = row[ids];
    r.s_norm_max = row[isn];
    r.m_norm_max = row[imn];
    r.tracking_residual = row[itr];
    r.tube_ok = row[itb] != 0.0;
    out.push_back(r);
  }
  return out;
}

}  // namespace rmt
