#include <cmath>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "rmt/algorithms.hpp"
#include "rmt/harness.hpp"
#include "rmt/kernels.hpp"
#include "rmt/linalg.hpp"
#include "rmt/manifold.hpp"
#include "rmt/metrics.hpp"
#include "rmt/problem.hpp"
#include "rmt/topology.hpp"

namespace rmt {

namespace {

struct Reporter {
  std::ostream& out;
  int fails = 0;
  void operator()(bool ok, const std::string& name) {
    out << (ok ? "ok - " : "FAIL - ") << name << "\n";
    if (!ok) ++fails;
  }
};

bool kernel_equivalence() {
  if (!kernels::backend_supported(kernels::Backend::avx2)) return true;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t n = 129;
  std::vector<double> a(n), b(n), y0(n), y1(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = normal(rng);
    b[i] = normal(rng);
    y0[i] = y1[i] = normal(rng);
  }
  const kernels::Backend saved = kernels::active();
  kernels::set_backend(kernels::Backend::scalar);
  const double d0 = kernels::dot(a.data(), b.data(), n);
  kernels::axpy(0.37, a.data(), y0.data(), n);
  kernels::set_backend(kernels::Backend::avx2);
  const double d1 = kernels::dot(a.data(), b.data(), n);
  kernels::axpy(0.37, a.data(), y1.data(), n);
  kernels::set_backend(saved);
  if (std::fabs(d0 - d1) > 1e-12 * (1.0 + std::fabs(d0))) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (std::fabs(y0[i] - y1[i]) > 1e-13 * (1.0 + std::fabs(y0[i]))) return false;
  return true;
}

bool svd_reconstructs() {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a(8, 3);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 3; ++j) a(i, j) = normal(rng);
  linalg::Svd f = linalg::svd(a);
  Matrix us = f.u;
  for (std::size_t i = 0; i < us.rows(); ++i)
    for (std::size_t j = 0; j < us.cols(); ++j) us(i, j) *= f.sigma[j];
  return (matmul(us, f.vt) - a).frobenius_norm() <= 1e-12 * a.frobenius_norm();
}

bool projection_examples() {
  Matrix y(2, 1);
  y(0, 0) = 3.0;
  y(1, 0) = 4.0;
  StiefelPoint p = manifold_project(y);
  if (std::fabs(p.value(0, 0) - 0.6) > 1e-15) return false;
  if (std::fabs(p.value(1, 0) - 0.8) > 1e-15) return false;
  std::mt19937_64 rng(3);
  StiefelPoint x = random_stiefel(6, 2, rng);
  if (!check_on_manifold(x.value, 1e-12)) return false;
  Matrix u(6, 2);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 2; ++j) u(i, j) = normal(rng);
  TangentVector v = tangent_project(x, u);
  TangentVector vv = tangent_project(x, v.value);
  return (vv.value - v.value).frobenius_norm() <= 1e-12;
}

bool ring4_sigma2() {
  Graph g = build_graph(GraphKind::ring, 4, GraphParams{}, 0);
  MixingMatrix m = metropolis_weights(g);
  if (std::fabs(m.sigma2 - 1.0 / 3.0) > 1e-12) return false;
  for (std::size_t i = 0; i < 4; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < 4; ++j) row += m.w(i, j);
    if (std::fabs(row - 1.0) > 1e-12) return false;
  }
  MixingMatrix synthetic;
  synthetic.sigma2 = 0.9;
  return min_consensus_steps(synthetic, 16) == 27;
}

bool gradient_finite_difference() {
  EigProblem p = generate_synthetic(2, 6, 4, 2, 0.5, 1.0, 5);
  std::mt19937_64 rng(9);
  StiefelPoint x = random_stiefel(4, 2, rng);
  Matrix g = local_gradient(p, 0, x);
  const double h = 1e-5;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      StiefelPoint xp = x, xm = x;
      xp.value(i, j) += h;
      xm.value(i, j) -= h;
      const double fd =
          (local_objective(p, 0, xp) - local_objective(p, 0, xm)) / (2.0 * h);
      if (std::fabs(fd - g(i, j)) > 1e-6 * (1.0 + std::fabs(g(i, j)))) return false;
    }
  }
  return true;
}

bool spectrum_shaping() {
  EigProblem p = generate_synthetic(2, 8, 3, 1, 0.25, 1.0, 17);
  Matrix stacked(16, 3);
  for (std::size_t i = 0; i < 8; ++i) {
    std::copy(p.blocks[0].row(i), p.blocks[0].row(i) + 3, stacked.row(i));
    std::copy(p.blocks[1].row(i), p.blocks[1].row(i) + 3, stacked.row(8 + i));
  }
  std::vector<double> sig = linalg::singular_values(stacked);
  return std::fabs(sig[0] - 1.0) <= 1e-8 && std::fabs(sig[1] - 0.5) <= 1e-8 &&
         std::fabs(sig[2] - 0.25) <= 1e-8;
}

bool procrustes_examples() {
  Matrix e1(2, 1), e2(2, 1);
  e1(0, 0) = 1.0;
  e2(1, 0) = 1.0;
  const double d = procrustes_distance(StiefelPoint{e1}, StiefelPoint{e2});
  if (std::fabs(d - std::sqrt(2.0)) > 1e-12) return false;
  Matrix me1(2, 1);
  me1(0, 0) = -1.0;
  return procrustes_distance(StiefelPoint{e1}, StiefelPoint{me1}) <= 1e-7;
}

bool consensus_example() {
  Matrix e1(2, 1), e2(2, 1);
  e1(0, 0) = 1.0;
  e2(1, 0) = 1.0;
  const double ce = consensus_error({StiefelPoint{e1}, StiefelPoint{e2}});
  return std::fabs(ce - (2.0 - std::sqrt(2.0))) <= 1e-12;
}

MixingMatrix single_node_mixing() {
  MixingMatrix m;
  m.w = Matrix::identity(1);
  m.w_t = m.w;
  m.t = 1;
  m.sigma2 = 0.0;
  return m;
}

bool momentum_closed_form() {
  EigProblem p = generate_synthetic(1, 6, 4, 2, 0.5, 1.0, 23);
  MixingMatrix mm = single_node_mixing();
  AlgoConfig c;
  c.algo = Algo::rmtracking;
  c.alpha_hat = 0.01;
  c.beta = 0.5;
  c.momentum_init = MomentumInit::zero;
  c.seed = 4;
  NetworkState ns = init(p, mm, c);
  ns.alpha = 0.0;  // freeze the iterates, momentum keeps accumulating
  const Matrix g0 = ns.agents[0].g_prev;
  for (std::size_t k = 1; k <= 10; ++k) {
    step(p, ns);
    const double coef = (1.0 - std::pow(c.beta, double(k))) / (1.0 - c.beta);
    if ((ns.agents[0].m - coef * g0).frobenius_norm() > 1e-12) return false;
  }
  return true;
}

bool beta_zero_equivalence() {
  EigProblem p = generate_synthetic(4, 8, 5, 2, 0.6, 2.0, 31);
  Graph g = build_graph(GraphKind::ring, 4, GraphParams{}, 0);
  MixingMatrix mm = metropolis_weights(g);
  AlgoConfig c;
  c.alpha_hat = 0.02;
  c.beta = 0.0;
  c.seed = 8;
  c.algo = Algo::drgtm;
  NetworkState a = init(p, mm, c);
  c.algo = Algo::dprgt;
  NetworkState b = init(p, mm, c);
  for (int k = 0; k < 20; ++k) {
    step(p, a);
    step(p, b);
    for (std::size_t i = 0; i < 4; ++i)
      if ((a.agents[i].x.value - b.agents[i].x.value).frobenius_norm() > 1e-12)
        return false;
  }
  return true;
}

bool tracker_conservation() {
  EigProblem p = generate_synthetic(4, 8, 5, 2, 0.6, 2.0, 31);
  Graph g = build_graph(GraphKind::ring, 4, GraphParams{}, 0);
  MixingMatrix mm = metropolis_weights(g);
  AlgoConfig c;
  c.algo = Algo::rmtracking;
  c.alpha_hat = 0.02;
  c.beta = 0.9;
  c.seed = 8;
  NetworkState ns = init(p, mm, c);
  for (int k = 0; k < 50; ++k) {
    step(p, ns);
    if (tracker_deviation(ns).frobenius_norm() > 1e-10) return false;
  }
  return true;
}

}  // namespace

int selftest(std::ostream& out) {
  Reporter check{out};
  check(kernel_equivalence(), "kernel backends agree");
  check(svd_reconstructs(), "svd reconstructs its input");
  check(projection_examples(), "manifold projections");
  check(ring4_sigma2(), "mixing matrix spectra");
  check(gradient_finite_difference(), "local gradient matches finite differences");
  check(spectrum_shaping(), "synthetic spectrum shaping");
  check(procrustes_examples(), "procrustes distances");
  check(consensus_example(), "consensus error");
  check(momentum_closed_form(), "momentum closed form");
  check(beta_zero_equivalence(), "beta=0 momentum tracking degenerates to dprgt");
  check(tracker_conservation(), "tracker conservation");
  out << (check.fails == 0 ? "selftest passed\n"
                           : "selftest FAILED (" + std::to_string(check.fails) +
                                 " checks)\n");
  return check.fails == 0 ? 0 : 1;
}

}  // namespace rmt
