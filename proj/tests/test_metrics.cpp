#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "rmt/algorithms.hpp"
#include "rmt/errors.hpp"
#include "rmt/metrics.hpp"
#include "rmt/problem.hpp"
#include "rmt/topology.hpp"

using rmt::Matrix;
using rmt::StiefelPoint;

namespace {

StiefelPoint axis(std::size_t d, std::size_t which) {
  StiefelPoint x;
  x.value = Matrix(d, 1);
  x.value(which, 0) = 1.0;
  return x;
}

StiefelPoint stiefel(std::size_t d, std::size_t r, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  return rmt::random_stiefel(d, r, g);
}

}  // namespace

TEST_CASE("consensus error of two orthogonal axes is 2 - sqrt(2)") {
  std::vector<StiefelPoint> xs = {axis(2, 0), axis(2, 1)};
  CHECK(rmt::consensus_error(xs) == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));

  StiefelPoint mean = rmt::induced_mean(xs);
  const double inv = 1.0 / std::sqrt(2.0);
  CHECK(mean.value(0, 0) == doctest::Approx(inv).epsilon(1e-12));
  CHECK(mean.value(1, 0) == doctest::Approx(inv).epsilon(1e-12));
}

TEST_CASE("consensus error is zero iff all agents coincide") {
  StiefelPoint x = stiefel(6, 3, 40);
  std::vector<StiefelPoint> same(5, x);
  CHECK(rmt::consensus_error(same) <= 1e-28);

  std::vector<StiefelPoint> mixed = {x, stiefel(6, 3, 41), stiefel(6, 3, 42)};
  CHECK(rmt::consensus_error(mixed) > 1e-4);

  // Permutation invariance.
  std::vector<StiefelPoint> swapped = {mixed[2], mixed[0], mixed[1]};
  CHECK(rmt::consensus_error(swapped) == doctest::Approx(rmt::consensus_error(mixed)).epsilon(1e-13));
}

TEST_CASE("induced mean of an antipodal pair is not defined") {
  StiefelPoint plus = axis(2, 0);
  StiefelPoint minus = axis(2, 0);
  minus.value(0, 0) = -1.0;
  std::vector<StiefelPoint> xs = {plus, minus};
  CHECK_THROWS_AS(rmt::induced_mean(xs), rmt::ProjectionNotUnique);
}

TEST_CASE("consensus potential on the two-agent complete graph") {
  rmt::Graph g = rmt::build_graph(rmt::GraphKind::complete, 2, rmt::GraphParams{}, 0);
  rmt::MixingMatrix m = rmt::metropolis_weights(g);
  std::vector<StiefelPoint> xs = {axis(2, 0), axis(2, 1)};
  // (1/4) * 2 * w_01 * ||e1 - e2||^2 = (1/4) * 2 * (1/2) * 2 = 1/2.
  CHECK(rmt::consensus_potential(xs, m) == doctest::Approx(0.5).epsilon(1e-12));

  std::vector<StiefelPoint> same = {axis(2, 0), axis(2, 0)};
  CHECK(rmt::consensus_potential(same, m) == 0.0);
}

TEST_CASE("procrustes distance on worked examples") {
  CHECK(rmt::procrustes_distance(axis(2, 0), axis(2, 1)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  StiefelPoint x = stiefel(7, 3, 50);
  CHECK(rmt::procrustes_distance(x, x) <= 1e-7);

  StiefelPoint flipped = x;
  flipped.value *= -1.0;
  CHECK(rmt::procrustes_distance(x, flipped) <= 1e-7);

  CHECK(rmt::procrustes_distance(x, stiefel(7, 3, 51)) ==
        doctest::Approx(rmt::procrustes_distance(stiefel(7, 3, 51), x)).epsilon(1e-12));
}

TEST_CASE("procrustes distance matches brute force for r = 1 and r = 2") {
  for (std::uint64_t seed = 60; seed < 70; ++seed) {
    StiefelPoint x1 = stiefel(5, 1, seed);
    StiefelPoint y1 = stiefel(5, 1, seed + 100);
    CHECK(std::abs(rmt::procrustes_distance(x1, y1) -
                   oracle::procrustes_bruteforce(x1.value, y1.value)) <= 1e-4);

    StiefelPoint x2 = stiefel(6, 2, seed);
    StiefelPoint y2 = stiefel(6, 2, seed + 200);
    CHECK(std::abs(rmt::procrustes_distance(x2, y2) -
                   oracle::procrustes_bruteforce(x2.value, y2.value)) <= 1e-4);
  }
}

TEST_CASE("procrustes distance satisfies the triangle inequality") {
  for (std::uint64_t seed = 80; seed < 110; ++seed) {
    StiefelPoint x = stiefel(6, 3, seed);
    StiefelPoint y = stiefel(6, 3, seed + 1000);
    StiefelPoint z = stiefel(6, 3, seed + 2000);
    CHECK(rmt::procrustes_distance(x, z) <=
          rmt::procrustes_distance(x, y) + rmt::procrustes_distance(y, z) + 1e-9);
  }
}

TEST_CASE("gradient norm vanishes at the exact solution") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    rmt::EigProblem p = rmt::generate_synthetic(4, 60, 8, 3, 0.75, std::sqrt(240.0), seed);
    rmt::Solution sol = rmt::exact_solution(p);
    CHECK(rmt::grad_norm_at_mean(p, sol.x_star) <= 1e-8);
    CHECK(rmt::global_objective(p, sol.x_star) - sol.f_star == 0.0);
    // The minimized Frobenius distance cancels to zero under a square root,
    // so the self-distance floor is sqrt(eps), not eps.
    CHECK(rmt::procrustes_distance(sol.x_star, sol.x_star) <= 1e-7);
  }
}

TEST_CASE("record composes the standalone metrics bit for bit") {
  rmt::EigProblem p = rmt::generate_synthetic(4, 50, 6, 2, 0.7, std::sqrt(200.0), 7);
  rmt::Graph g = rmt::build_graph(rmt::GraphKind::ring, 4, rmt::GraphParams{}, 0);
  rmt::MixingMatrix m = rmt::metropolis_weights(g);
  rmt::Solution sol = rmt::exact_solution(p);
  rmt::AlgoConfig c;
  c.algo = rmt::Algo::rmtracking;
  c.beta = 0.9;
  c.alpha_hat = 0.02;
  c.seed = 14;
  rmt::NetworkState ns = rmt::init(p, m, c);
  for (int round = 0; round < 5; ++round) rmt::step(p, ns);

  rmt::IterateRecord rec = rmt::record(ns, p, sol);
  std::vector<StiefelPoint> xs = rmt::agent_points(ns);
  StiefelPoint xbar = rmt::induced_mean(xs);

  CHECK(rec.k == 5);
  CHECK(rec.consensus_error_sq == rmt::consensus_error(xs));
  CHECK(rec.grad_norm_mean == rmt::grad_norm_at_mean(p, xbar));
  CHECK(rec.f_gap == rmt::global_objective(p, xbar) - sol.f_star);
  CHECK(rec.ds == rmt::procrustes_distance(xbar, sol.x_star));
  CHECK(rec.tracking_residual == rmt::tracker_deviation(ns).frobenius_norm());

  double s_max = 0.0;
  double m_max = 0.0;
  for (const rmt::AgentState& a : ns.agents) {
    s_max = std::max(s_max, a.s.frobenius_norm());
    m_max = std::max(m_max, a.m.frobenius_norm());
  }
  CHECK(rec.s_norm_max == s_max);
  CHECK(rec.m_norm_max == m_max);

  Matrix avg(6, 2);
  for (const StiefelPoint& x : xs) avg += x.value;
  avg *= 1.0 / 4.0;
  CHECK(rec.tube_ok == ((avg - xbar.value).frobenius_norm() <= 0.5));
}

TEST_CASE("bound monitors on a zero problem and a standard run") {
  rmt::EigProblem zero;
  zero.n = 2;
  zero.d = 3;
  zero.r = 1;
  zero.delta = 0.5;
  zero.sigma0 = 1.0;
  zero.blocks.assign(2, Matrix(3, 3));
  zero.rebuild_grams();
  rmt::Graph g2 = rmt::build_graph(rmt::GraphKind::ring, 2, rmt::GraphParams{}, 0);
  rmt::MixingMatrix m2 = rmt::metropolis_weights(g2);
  rmt::AlgoConfig c;
  c.algo = rmt::Algo::rmtracking;
  c.beta = 0.9;
  c.alpha_hat = 0.02;
  c.seed = 5;
  rmt::NetworkState ns = rmt::init(zero, m2, c);
  // Two random unit vectors can average outside the tube; the monitor checks
  // are about the zero gradients, so start consensual.
  ns.agents[1].x = ns.agents[0].x;
  rmt::BoundConstants bc;
  bc.l_g = rmt::lipschitz_constants(zero).l_g;
  rmt::BoundReport rep = rmt::bound_monitors(ns, bc);
  CHECK(rep.m_ok);
  CHECK(rep.s_ok);
  CHECK(rep.tube_ok);
  CHECK(rep.m_bound == 0.0);
  CHECK(rep.m_norm_max == 0.0);

  rmt::EigProblem p = rmt::generate_synthetic(4, 50, 6, 2, 0.7, std::sqrt(200.0), 7);
  rmt::Graph g4 = rmt::build_graph(rmt::GraphKind::ring, 4, rmt::GraphParams{}, 0);
  rmt::MixingMatrix m4 = rmt::metropolis_weights(g4);
  rmt::NetworkState run_state = rmt::init(p, m4, c);
  rmt::BoundConstants pc;
  pc.l_g = rmt::lipschitz_constants(p).l_g;
  for (int round = 0; round < 50; ++round) {
    rmt::step(p, run_state);
    rmt::BoundReport r = rmt::bound_monitors(run_state, pc);
    CHECK(r.m_norm_max <= 10.0 * pc.l_g);
    CHECK(r.m_bound == doctest::Approx(pc.l_g / (1.0 - c.beta)).epsilon(1e-12));
    CHECK(r.s_bound == doctest::Approx(4.0 * pc.l_g / (1.0 - c.beta)).epsilon(1e-12));
  }
  // Once the network is near consensus the averaged iterate sits in the tube.
  CHECK(rmt::bound_monitors(run_state, pc).tube_ok);
}

TEST_CASE("plateau averages the trailing fraction") {
  std::vector<rmt::IterateRecord> recs(100);
  for (std::size_t i = 0; i < 100; ++i) {
    recs[i].k = i;
    recs[i].consensus_error_sq = double(i);
  }
  CHECK(rmt::plateau_consensus(recs) == doctest::Approx(94.5).epsilon(1e-15));
  CHECK(rmt::plateau_consensus(recs, 0.5) == doctest::Approx(74.5).epsilon(1e-15));
  std::vector<rmt::IterateRecord> one(1);
  one[0].consensus_error_sq = 3.25;
  CHECK(rmt::plateau_consensus(one) == 3.25);
  CHECK_THROWS_AS(rmt::plateau_consensus({}), rmt::DimensionError);
}
