#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "rmt/iterate_record.hpp"
#include "rmt/manifold.hpp"
#include "rmt/problem.hpp"
#include "rmt/topology.hpp"

namespace rmt {

enum class Algo { dprgd, dprgt, drgtm, rmtracking };
enum class MomentumInit { zero, gradient };
enum class GradPoint { current, next };

std::string algo_name(Algo a);
Algo algo_from_name(const std::string& s);

struct AlgoConfig {
  Algo algo = Algo::rmtracking;
  double alpha_hat = 0.02;
  double beta = 0.0;
  int t = 1;
  std::size_t max_iters = 10000;
  double tol_ds = 1e-6;  // negative disables early termination
  MomentumInit momentum_init = MomentumInit::gradient;
  GradPoint grad_point = GradPoint::current;
  std::uint64_t seed = 0;
  void validate() const;  // throws ConfigError
};

struct AgentState {
  StiefelPoint x;
  Matrix s;       // gradient tracker
  Matrix m;       // momentum (kept by every method; only some update it)
  Matrix g_prev;  // Riemannian gradient of f_i at the current x
};

struct NetworkState {
  std::vector<AgentState> agents;
  std::size_t k = 0;
  const MixingMatrix* mixing = nullptr;
  double alpha = 0.0;  // n * alpha_hat / sum_i m_i
  AlgoConfig cfg;
  // Reference value of the conserved tracker quantity at round 0; the
  // tracking residual is the drift from this.
  Matrix tracker_offset;
  // Set by the last step: stacked norm of the applied direction and the step
  // size actually used (dprgd shrinks it per round).
  double last_step_dir_norm = 0.0;
  double last_step_alpha = 0.0;
};

// Draws the initial frames and seeds trackers: s_0 = grad f_i(x_0),
// m_0 = 0 or grad f_i(x_0) per momentum_init.
NetworkState init(const EigProblem& p, const MixingMatrix& m, const AlgoConfig& c);

void step(const EigProblem& p, NetworkState& ns);
void step_dprgd(const EigProblem& p, NetworkState& ns);
void step_dprgt(const EigProblem& p, NetworkState& ns);
void step_drgtm(const EigProblem& p, NetworkState& ns);
void step_rmtracking(const EigProblem& p, NetworkState& ns);

// Current value of the conserved quantity minus its round-0 reference.
// Identically zero for dprgd.
Matrix tracker_deviation(const NetworkState& ns);

enum class StopReason { tolerance, max_iters };
std::string stop_reason_name(StopReason r);

struct RunSummary {
  std::size_t final_round = 0;
  StopReason reason = StopReason::max_iters;
  IterateRecord final_record;
  std::size_t contraction_violations = 0;  // per-round consensus contraction monitor
  int min_consensus_steps_diag = 0;
};

using RecordSink = std::function<void(const IterateRecord&)>;

// Runs until ds <= tol_ds or max_iters rounds, emitting one record per round
// (round 0 included) to the sink. Errors mid-run propagate after the partial
// trajectory has been emitted.
RunSummary run(const EigProblem& p, const MixingMatrix& m, const AlgoConfig& c,
               const RecordSink& sink);

}  // namespace rmt
