#pragma once

#include <vector>

#include "rmt/algorithms.hpp"
#include "rmt/iterate_record.hpp"
#include "rmt/manifold.hpp"
#include "rmt/problem.hpp"
#include "rmt/topology.hpp"

namespace rmt {

// Manifold projection of the Euclidean average. Throws ProjectionNotUnique
// when the points are spread so far that the average loses rank.
StiefelPoint induced_mean(const std::vector<StiefelPoint>& xs);

// (1/n) sum_i ||x_i - induced_mean||_F^2
double consensus_error(const std::vector<StiefelPoint>& xs);

// (1/4) sum_ij (w_t)_ij ||x_i - x_j||_F^2
double consensus_potential(const std::vector<StiefelPoint>& xs, const MixingMatrix& m);

// Norm of the Riemannian gradient of the global objective at xbar.
double grad_norm_at_mean(const EigProblem& p, const StiefelPoint& xbar);

// d_s(x, y) = sqrt(2r - 2 sum_i sigma_i(xT y)), the subspace-alignment
// distance modulo the orthogonal group.
double procrustes_distance(const StiefelPoint& x, const StiefelPoint& y);

struct BoundConstants {
  double l_g = 0.0;
  double r_monitor = 2.0;  // proximal smoothness radius used by the monitors
  double gamma = 1.0;
};

struct BoundReport {
  double m_norm_max = 0.0;
  double m_bound = 0.0;
  bool m_ok = true;
  double s_norm_max = 0.0;
  double s_bound = 0.0;
  bool s_ok = true;
  double mean_gap = 0.0;  // || average(x) - induced_mean ||_F
  bool tube_ok = true;    // mean_gap <= gamma / 2
};

BoundReport bound_monitors(const NetworkState& ns, const BoundConstants& c);

std::vector<StiefelPoint> agent_points(const NetworkState& ns);

// Snapshot of the standard metrics; every field matches the standalone call.
IterateRecord record(const NetworkState& ns, const EigProblem& p, const Solution& sol);

// Mean of consensus_error_sq over the trailing fraction of a trajectory.
double plateau_consensus(const std::vector<IterateRecord>& records, double fraction = 0.1);

}  // namespace rmt
