#include "rmt/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "rmt/errors.hpp"
#include "rmt/linalg.hpp"

namespace rmt {

namespace {

Matrix euclidean_average(const std::vector<StiefelPoint>& xs) {
  if (xs.empty()) throw DimensionError("mean of zero points");
  Matrix avg(xs[0].d(), xs[0].r());
  for (const StiefelPoint& x : xs) {
    if (!x.value.same_shape(avg)) throw DimensionError("mean: inconsistent shapes");
    avg += x.value;
  }
  avg *= 1.0 / double(xs.size());
  return avg;
}

}  // namespace

StiefelPoint induced_mean(const std::vector<StiefelPoint>& xs) {
  return manifold_project(euclidean_average(xs));
}

double consensus_error(const std::vector<StiefelPoint>& xs) {
  StiefelPoint xbar = induced_mean(xs);
  double acc = 0.0;
  for (const StiefelPoint& x : xs) acc += (x.value - xbar.value).frobenius_norm_sq();
  return acc / double(xs.size());
}

double consensus_potential(const std::vector<StiefelPoint>& xs, const MixingMatrix& m) {
  if (xs.size() != m.n()) throw DimensionError("consensus_potential: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j)
      acc += m.w_t(i, j) * (xs[i].value - xs[j].value).frobenius_norm_sq();
  return 0.25 * acc;
}

double grad_norm_at_mean(const EigProblem& p, const StiefelPoint& xbar) {
  Matrix mean_grad = matmul(p.gram_total, xbar.value);
  mean_grad *= -1.0 / double(p.n);
  return riemannian_gradient(xbar, mean_grad).value.frobenius_norm();
}

double procrustes_distance(const StiefelPoint& x, const StiefelPoint& y) {
  if (!x.value.same_shape(y.value)) throw DimensionError("procrustes: shape mismatch");
  const double r = double(x.r());
  std::vector<double> sig = linalg::singular_values(matmul_tn(x.value, y.value));
  double sum = 0.0;
  for (double s : sig) sum += s;
  return std::sqrt(std::max(0.0, 2.0 * r - 2.0 * sum));
}

std::vector<StiefelPoint> agent_points(const NetworkState& ns) {
  std::vector<StiefelPoint> xs;
  xs.reserve(ns.agents.size());
  for (const AgentState& a : ns.agents) xs.push_back(a.x);
  return xs;
}

BoundReport bound_monitors(const NetworkState& ns, const BoundConstants& c) {
  BoundReport rep;
  const double denom = 1.0 - ns.cfg.beta;
  rep.m_bound = c.l_g / denom;
  rep.s_bound = 4.0 * c.l_g / denom;
  for (const AgentState& a : ns.agents) {
    rep.m_norm_max = std::max(rep.m_norm_max, a.m.frobenius_norm());
    rep.s_norm_max = std::max(rep.s_norm_max, a.s.frobenius_norm());
  }
  rep.m_ok = rep.m_norm_max <= rep.m_bound;
  rep.s_ok = rep.s_norm_max <= rep.s_bound;

  std::vector<StiefelPoint> xs = agent_points(ns);
  Matrix avg(xs[0].d(), xs[0].r());
  for (const StiefelPoint& x : xs) avg += x.value;
  avg *= 1.0 / double(xs.size());
  StiefelPoint xbar = induced_mean(xs);
  rep.mean_gap = (avg - xbar.value).frobenius_norm();
  rep.tube_ok = rep.mean_gap <= 0.5 * c.gamma;
  return rep;
}

IterateRecord record(const NetworkState& ns, const EigProblem& p, const Solution& sol) {
  std::vector<StiefelPoint> xs = agent_points(ns);
  StiefelPoint xbar = induced_mean(xs);

  IterateRecord rec;
  rec.k = ns.k;
  rec.consensus_error_sq = consensus_error(xs);
  rec.grad_norm_mean = grad_norm_at_mean(p, xbar);
  rec.f_gap = global_objective(p, xbar) - sol.f_star;
  rec.ds = procrustes_distance(xbar, sol.x_star);
  for (const AgentState& a : ns.agents) {
    rec.s_norm_max = std::max(rec.s_norm_max, a.s.frobenius_norm());
    rec.m_norm_max = std::max(rec.m_norm_max, a.m.frobenius_norm());
  }
  rec.tracking_residual =
      ns.cfg.algo == Algo::dprgd ? 0.0 : tracker_deviation(ns).frobenius_norm();

  Matrix avg(xs[0].d(), xs[0].r());
  for (const StiefelPoint& x : xs) avg += x.value;
  avg *= 1.0 / double(xs.size());
  rec.tube_ok = (avg - xbar.value).frobenius_norm() <= 0.5;
  return rec;
}

double plateau_consensus(const std::vector<IterateRecord>& records, double fraction) {
  if (records.empty()) throw DimensionError("plateau_consensus: no records");
  const std::size_t count = std::max<std::size_t>(
      1, std::size_t(std::ceil(fraction * double(records.size()))));
  double acc = 0.0;
  for (std::size_t i = records.size() - count; i < records.size(); ++i)
    acc += records[i].consensus_error_sq;
  return acc / double(count);
}

}  // namespace rmt
