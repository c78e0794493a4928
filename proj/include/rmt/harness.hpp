#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rmt/algorithms.hpp"
#include "rmt/csv.hpp"
#include "rmt/svg.hpp"
#include "rmt/topology.hpp"

namespace rmt {

struct RunConfig {
  AlgoConfig algo;
  GraphKind graph = GraphKind::ring;
  double er_p = 0.5;
  std::size_t nodes = 16;
  std::size_t d = 10;
  std::size_t r = 5;
  std::size_t samples = 1000;  // rows per agent
  double delta = 0.8;
  double sigma0 = 1.0;
  std::size_t record_every = 1;
  std::string out_path;
  std::string svg_path;
  void validate() const;
};

std::string graph_name(GraphKind g);
GraphKind graph_from_name(const std::string& s);

struct RunOutcome {
  RunSummary summary;
  std::vector<IterateRecord> written;  // rows emitted to the CSV
};

// Builds the problem, graph and mixing matrix from the config, runs the
// algorithm, and writes the trajectory CSV (rounds 0, j, 2j, ... plus the
// terminal round) and optional SVG.
RunOutcome run_experiment(const RunConfig& cfg);

struct SweepCell {
  std::string value;
  long iters_to_tol = -1;  // -1 when the tolerance was never reached
  double final_ds = 0.0;
  double final_fgap = 0.0;
  std::string csv_path;
  bool failed = false;
  std::string error;
};

// Runs the base config once per value of the swept parameter (beta, alpha-hat
// or algo), sharing the problem instance and initial states across cells, and
// writes per-cell CSVs plus a summary CSV "<stem>_summary.csv". A failing
// cell is reported and does not abort the others.
std::vector<SweepCell> sweep(const RunConfig& base, const std::string& axis,
                             const std::vector<std::string>& values,
                             const std::string& stem);

void write_sweep_summary(const std::vector<SweepCell>& cells, const std::string& path);

// All four algorithms on the shared problem and initial states.
std::vector<SweepCell> compare(const RunConfig& base, const std::string& stem);

int selftest(std::ostream& out);

int cli_main(int argc, const char* const* argv);

}  // namespace rmt
