#pragma once

#include <string>
#include <vector>

#include "rmt/iterate_record.hpp"

namespace rmt {

// Column schema of trajectory CSVs, fixed so downstream tooling can rely on it.
extern const char* const kCsvHeader;

// Reals carry 17 significant digits so parsing back is exact; tube_ok is 0/1.
void write_csv(const std::vector<IterateRecord>& records, const std::string& path);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::size_t column_index(const std::string& name) const;  // throws if absent
};

CsvTable read_csv_table(const std::string& path);

std::vector<IterateRecord> read_records(const std::string& path);

std::string format_real(double v);  // the 17-digit rendering used everywhere

}  // namespace rmt
