#include "rmt/algorithms.hpp"

#include <cmath>
#include <utility>

#include "rmt/errors.hpp"
#include "rmt/metrics.hpp"

namespace rmt {

std::string algo_name(Algo a) {
  switch (a) {
    case Algo::dprgd: return "dprgd";
    case Algo::dprgt: return "dprgt";
    case Algo::drgtm: return "drgtm";
    case Algo::rmtracking: return "rmtracking";
  }
  return "?";
}

Algo algo_from_name(const std::string& s) {
  if (s == "dprgd") return Algo::dprgd;
  if (s == "dprgt") return Algo::dprgt;
  if (s == "drgtm") return Algo::drgtm;
  if (s == "rmtracking") return Algo::rmtracking;
  throw ConfigError("unknown algorithm: " + s);
}

std::string stop_reason_name(StopReason r) {
  return r == StopReason::tolerance ? "tolerance" : "max_iters";
}

void AlgoConfig::validate() const {
  if (!(alpha_hat > 0.0)) throw ConfigError("alpha_hat must be > 0");
  if (!(beta >= 0.0 && beta < 1.0)) throw ConfigError("beta must be in [0, 1)");
  if (t < 1) throw ConfigError("t must be >= 1");
}

namespace {

Matrix average_of(const std::vector<AgentState>& agents, Matrix AgentState::* field) {
  Matrix avg(agents[0].s.rows(), agents[0].s.cols());
  for (const AgentState& a : agents) avg += a.*field;
  avg *= 1.0 / double(agents.size());
  return avg;
}

std::vector<Matrix> collect(const std::vector<AgentState>& agents,
                            Matrix AgentState::* field) {
  std::vector<Matrix> out;
  out.reserve(agents.size());
  for (const AgentState& a : agents) out.push_back(a.*field);
  return out;
}

std::vector<Matrix> collect_x(const std::vector<AgentState>& agents) {
  std::vector<Matrix> out;
  out.reserve(agents.size());
  for (const AgentState& a : agents) out.push_back(a.x.value);
  return out;
}

StiefelPoint project_step(const Matrix& target, std::size_t round) {
  try {
    return manifold_project(target);
  } catch (const ProjectionNotUnique& e) {
    throw ProjectionNotUnique(e.sigma_min, std::string(e.what()) + " (round " +
                                               std::to_string(round + 1) + ")");
  }
}

Matrix riem_grad_value(const EigProblem& p, std::size_t i, const StiefelPoint& x) {
  return riemannian_gradient(x, local_gradient(p, i, x)).value;
}

}  // namespace

NetworkState init(const EigProblem& p, const MixingMatrix& m, const AlgoConfig& c) {
  c.validate();
  p.validate();
  if (m.n() != p.n) throw DimensionError("init: mixing size != agent count");
  if (m.t != c.t) throw ConfigError("init: mixing matrix was built for a different t");

  NetworkState ns;
  ns.cfg = c;
  ns.mixing = &m;
  ns.alpha = double(p.n) * c.alpha_hat / double(p.total_rows());
  ns.k = 0;

  std::mt19937_64 rng(c.seed);
  ns.agents.reserve(p.n);
  for (std::size_t i = 0; i < p.n; ++i) {
    AgentState a;
    a.x = random_stiefel(p.d, p.r, rng);
    a.g_prev = riem_grad_value(p, i, a.x);
    a.s = a.g_prev;
    a.m = (c.momentum_init == MomentumInit::gradient) ? a.g_prev : Matrix(p.d, p.r);
    ns.agents.push_back(std::move(a));
  }

  switch (c.algo) {
    case Algo::rmtracking:
      ns.tracker_offset = average_of(ns.agents, &AgentState::s) -
                          average_of(ns.agents, &AgentState::m);
      break;
    case Algo::dprgt:
    case Algo::drgtm:
      ns.tracker_offset = average_of(ns.agents, &AgentState::s) -
                          average_of(ns.agents, &AgentState::g_prev);
      break;
    case Algo::dprgd:
      ns.tracker_offset = Matrix(p.d, p.r);
      break;
  }
  return ns;
}

Matrix tracker_deviation(const NetworkState& ns) {
  switch (ns.cfg.algo) {
    case Algo::rmtracking:
      return average_of(ns.agents, &AgentState::s) -
             average_of(ns.agents, &AgentState::m) - ns.tracker_offset;
    case Algo::dprgt:
    case Algo::drgtm:
      return average_of(ns.agents, &AgentState::s) -
             average_of(ns.agents, &AgentState::g_prev) - ns.tracker_offset;
    case Algo::dprgd:
      break;
  }
  return Matrix(ns.agents[0].x.d(), ns.agents[0].x.r());
}

void step_dprgd(const EigProblem& p, NetworkState& ns) {
  const double alpha_k = ns.alpha / std::sqrt(double(ns.k + 1));
  std::vector<Matrix> mixed_x = mix(*ns.mixing, collect_x(ns.agents));
  double dir_sq = 0.0;
  for (std::size_t i = 0; i < ns.agents.size(); ++i) {
    AgentState& a = ns.agents[i];
    dir_sq += a.g_prev.frobenius_norm_sq();
    axpy_into(-alpha_k, a.g_prev, mixed_x[i]);
    a.x = project_step(mixed_x[i], ns.k);
    a.g_prev = riem_grad_value(p, i, a.x);
  }
  ns.last_step_dir_norm = std::sqrt(dir_sq);
  ns.last_step_alpha = alpha_k;
  ++ns.k;
}

void step_dprgt(const EigProblem& p, NetworkState& ns) {
  std::vector<Matrix> mixed_x = mix(*ns.mixing, collect_x(ns.agents));
  std::vector<Matrix> mixed_s = mix(*ns.mixing, collect(ns.agents, &AgentState::s));
  double dir_sq = 0.0;
  for (std::size_t i = 0; i < ns.agents.size(); ++i) {
    AgentState& a = ns.agents[i];
    TangentVector v = tangent_project(a.x, a.s);
    dir_sq += v.value.frobenius_norm_sq();
    axpy_into(-ns.alpha, v.value, mixed_x[i]);
    StiefelPoint xn = project_step(mixed_x[i], ns.k);
    Matrix gn = riem_grad_value(p, i, xn);
    Matrix sn = std::move(mixed_s[i]);
    sn += gn;
    sn -= a.g_prev;
    a.x = std::move(xn);
    a.s = std::move(sn);
    a.g_prev = std::move(gn);
  }
  ns.last_step_dir_norm = std::sqrt(dir_sq);
  ns.last_step_alpha = ns.alpha;
  ++ns.k;
}

void step_drgtm(const EigProblem& p, NetworkState& ns) {
  std::vector<Matrix> mixed_x = mix(*ns.mixing, collect_x(ns.agents));
  std::vector<Matrix> mixed_s = mix(*ns.mixing, collect(ns.agents, &AgentState::s));
  const double beta = ns.cfg.beta;
  double dir_sq = 0.0;
  for (std::size_t i = 0; i < ns.agents.size(); ++i) {
    AgentState& a = ns.agents[i];
    TangentVector v = tangent_project(a.x, a.s);
    Matrix mn = a.m;
    mn *= beta;
    mn += v.value;
    dir_sq += mn.frobenius_norm_sq();
    axpy_into(-ns.alpha, mn, mixed_x[i]);
    StiefelPoint xn = project_step(mixed_x[i], ns.k);
    Matrix gn = riem_grad_value(p, i, xn);
    Matrix sn = std::move(mixed_s[i]);
    sn += gn;
    sn -= a.g_prev;
    a.x = std::move(xn);
    a.s = std::move(sn);
    a.m = std::move(mn);
    a.g_prev = std::move(gn);
  }
  ns.last_step_dir_norm = std::sqrt(dir_sq);
  ns.last_step_alpha = ns.alpha;
  ++ns.k;
}

void step_rmtracking(const EigProblem& p, NetworkState& ns) {
  std::vector<Matrix> mixed_x = mix(*ns.mixing, collect_x(ns.agents));
  std::vector<Matrix> mixed_s = mix(*ns.mixing, collect(ns.agents, &AgentState::s));
  const double beta = ns.cfg.beta;
  double dir_sq = 0.0;
  for (std::size_t i = 0; i < ns.agents.size(); ++i) {
    AgentState& a = ns.agents[i];
    TangentVector v = tangent_project(a.x, a.s);
    dir_sq += v.value.frobenius_norm_sq();
    axpy_into(-ns.alpha, v.value, mixed_x[i]);
    StiefelPoint xn = project_step(mixed_x[i], ns.k);

    // Momentum accumulates raw local gradients; the tracker mixes and takes
    // the momentum increment instead of the plain gradient difference.
    Matrix g_eval;
    Matrix g_next;
    if (ns.cfg.grad_point == GradPoint::current) {
      g_eval = a.g_prev;
      g_next = riem_grad_value(p, i, xn);
    } else {
      g_eval = riem_grad_value(p, i, xn);
      g_next = g_eval;
    }
    Matrix mn = a.m;
    mn *= beta;
    mn += g_eval;
    Matrix sn = std::move(mixed_s[i]);
    sn += mn;
    sn -= a.m;
    a.x = std::move(xn);
    a.s = std::move(sn);
    a.m = std::move(mn);
    a.g_prev = std::move(g_next);
  }
  ns.last_step_dir_norm = std::sqrt(dir_sq);
  ns.last_step_alpha = ns.alpha;
  ++ns.k;
}

void step(const EigProblem& p, NetworkState& ns) {
  switch (ns.cfg.algo) {
    case Algo::dprgd: step_dprgd(p, ns); return;
    case Algo::dprgt: step_dprgt(p, ns); return;
    case Algo::drgtm: step_drgtm(p, ns); return;
    case Algo::rmtracking: step_rmtracking(p, ns); return;
  }
}

RunSummary run(const EigProblem& p, const MixingMatrix& m, const AlgoConfig& c,
               const RecordSink& sink) {
  Solution sol = exact_solution(p);
  NetworkState ns = init(p, m, c);

  RunSummary summary;
  try {
    summary.min_consensus_steps_diag = min_consensus_steps(m, p.n);
  } catch (const SpectralGapError&) {
    summary.min_consensus_steps_diag = -1;
  }

  IterateRecord rec = record(ns, p, sol);
  if (sink) sink(rec);

  const double n_agents = double(p.n);
  const double rho = std::pow(m.sigma2, m.t) * 2.0;
  bool hit_tol = false;
  while (ns.k < c.max_iters) {
    if (rec.ds <= c.tol_ds) {
      hit_tol = true;
      break;
    }
    const double prev_spread = std::sqrt(rec.consensus_error_sq * n_agents);
    step(p, ns);
    rec = record(ns, p, sol);
    if (sink) sink(rec);

    const double spread = std::sqrt(rec.consensus_error_sq * n_agents);
    const double bound =
        rho * prev_spread + 2.0 * ns.last_step_alpha * ns.last_step_dir_norm;
    if (spread > bound + 1e-12 * (1.0 + bound)) ++summary.contraction_violations;
  }
  if (!hit_tol && rec.ds <= c.tol_ds) hit_tol = true;

  summary.final_round = ns.k;
  summary.reason = hit_tol ? StopReason::tolerance : StopReason::max_iters;
  summary.final_record = rec;
  return summary;
}

}  // namespace rmt
