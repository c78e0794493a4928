#pragma once

#include <string>
#include <vector>

namespace rmt {

// Integer powers of ten spanning [ymin, ymax]; both endpoints rounded
// outward. Inputs must be positive.
std::vector<int> log_ticks(double ymin, double ymax);

// Log-scale line chart of one CSV column against k, one polyline per file,
// legend entries named by file stem. Non-positive values are skipped (log
// axis). Throws on a CSV with no data rows.
void emit_svg_chart(const std::vector<std::string>& csv_paths,
                    const std::string& field, const std::string& out_path);

}  // namespace rmt
