#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "rmt/errors.hpp"
#include "rmt/topology.hpp"

using rmt::Graph;
using rmt::GraphKind;
using rmt::GraphParams;
using rmt::Matrix;
using rmt::MixingMatrix;

namespace {

const GraphParams kDefaults;

bool doubly_stochastic(const Matrix& w, double tol) {
  for (std::size_t i = 0; i < w.rows(); ++i) {
    double row = 0.0;
    double col = 0.0;
    for (std::size_t j = 0; j < w.cols(); ++j) {
      if (w(i, j) < 0.0) return false;
      if (std::abs(w(i, j) - w(j, i)) > tol) return false;
      row += w(i, j);
      col += w(j, i);
    }
    if (std::abs(row - 1.0) > tol || std::abs(col - 1.0) > tol) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("ring graphs have the expected edge sets") {
  Graph r4 = rmt::build_graph(GraphKind::ring, 4, kDefaults, 0);
  REQUIRE(r4.edges.size() == 4);
  CHECK(r4.has_edge(0, 1));
  CHECK(r4.has_edge(1, 2));
  CHECK(r4.has_edge(2, 3));
  CHECK(r4.has_edge(0, 3));
  CHECK_FALSE(r4.has_edge(0, 2));
  for (std::size_t deg : r4.degree) CHECK(deg == 2);

  Graph r2 = rmt::build_graph(GraphKind::ring, 2, kDefaults, 0);
  CHECK(r2.edges.size() == 1);
  CHECK(r2.has_edge(0, 1));

  Graph r3 = rmt::build_graph(GraphKind::ring, 3, kDefaults, 0);
  CHECK(r3.edges.size() == 3);

  CHECK_THROWS_AS(rmt::build_graph(GraphKind::ring, 1, kDefaults, 0), rmt::DimensionError);
}

TEST_CASE("complete and star graphs") {
  Graph k5 = rmt::build_graph(GraphKind::complete, 5, kDefaults, 0);
  CHECK(k5.edges.size() == 10);
  for (std::size_t deg : k5.degree) CHECK(deg == 4);

  Graph s6 = rmt::build_graph(GraphKind::star, 6, kDefaults, 0);
  CHECK(s6.edges.size() == 5);
  CHECK(s6.degree[0] == 5);
  for (std::size_t i = 1; i < 6; ++i) {
    CHECK(s6.degree[i] == 1);
    CHECK(s6.has_edge(0, i));
  }
  CHECK_FALSE(s6.has_edge(1, 2));
}

TEST_CASE("erdos-renyi generation is seeded, connected and validated") {
  Graph a = rmt::build_graph(GraphKind::erdos_renyi, 12, kDefaults, 7);
  Graph b = rmt::build_graph(GraphKind::erdos_renyi, 12, kDefaults, 7);
  CHECK(a.edges == b.edges);
  CHECK(rmt::is_connected(a));

  Graph c = rmt::build_graph(GraphKind::erdos_renyi, 12, kDefaults, 8);
  CHECK(rmt::is_connected(c));

  GraphParams sparse;
  sparse.er_p = 1e-9;
  CHECK_THROWS_AS(rmt::build_graph(GraphKind::erdos_renyi, 8, sparse, 1),
                  rmt::GraphGenerationFailed);

  GraphParams zero;
  zero.er_p = 0.0;
  CHECK_THROWS_AS(rmt::build_graph(GraphKind::erdos_renyi, 8, zero, 1), rmt::ConfigError);
}

TEST_CASE("is_connected agrees with a union-find oracle") {
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + std::size_t(coin(g) * 9.0);
    Graph graph;
    graph.kind = GraphKind::erdos_renyi;
    graph.n = n;
    graph.degree.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (coin(g) < 0.25) {
          graph.edges.emplace_back(i, j);
          ++graph.degree[i];
          ++graph.degree[j];
        }
      }
    }
    CHECK(rmt::is_connected(graph) == oracle::connected_union_find(n, graph.edges));
  }
}

TEST_CASE("metropolis weights satisfy the mixing invariants on every kind") {
  std::mt19937_64 seeds(3);
  for (GraphKind kind : {GraphKind::ring, GraphKind::complete, GraphKind::star,
                         GraphKind::erdos_renyi}) {
    for (std::size_t n : {2u, 3u, 5u, 16u, 33u, 64u}) {
      CAPTURE(int(kind));
      CAPTURE(n);
      Graph g = rmt::build_graph(kind, n, kDefaults, seeds());
      MixingMatrix m = rmt::metropolis_weights(g);
      CHECK(doubly_stochastic(m.w, 1e-12));
      CHECK(m.sigma2 >= 0.0);
      CHECK(m.sigma2 < 1.0);
      CHECK(m.t == 1);
      // Off-graph entries are exactly zero.
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!g.has_edge(i, j)) CHECK(m.w(i, j) == 0.0);
    }
  }
}

TEST_CASE("known spectral gaps") {
  Graph r4 = rmt::build_graph(GraphKind::ring, 4, kDefaults, 0);
  MixingMatrix m4 = rmt::metropolis_weights(r4);
  CHECK(std::abs(m4.sigma2 - 1.0 / 3.0) <= 1e-12);

  // Two nodes: w = [[1/2, 1/2], [1/2, 1/2]] has eigenvalues {1, 0}.
  Graph r2 = rmt::build_graph(GraphKind::ring, 2, kDefaults, 0);
  MixingMatrix m2 = rmt::metropolis_weights(r2);
  CHECK(m2.sigma2 <= 1e-12);
  CHECK(rmt::min_consensus_steps(m2, 2) == 1);

  Graph disconnected;
  disconnected.kind = GraphKind::ring;
  disconnected.n = 4;
  disconnected.degree.assign(4, 0);
  CHECK_THROWS_AS(rmt::metropolis_weights(disconnected), rmt::ConfigError);
}

TEST_CASE("min_consensus_steps matches brute force enumeration") {
  MixingMatrix m;
  m.w = Matrix::identity(2);
  m.w_t = m.w;

  m.sigma2 = 1.0 / 3.0;
  CHECK(rmt::min_consensus_steps(m, 4) == 2);
  CHECK(rmt::min_consensus_steps(m, 4) == oracle::consensus_steps_bruteforce(1.0 / 3.0, 4));

  m.sigma2 = 0.9;
  CHECK(rmt::min_consensus_steps(m, 16) == 27);
  CHECK(rmt::min_consensus_steps(m, 16) == oracle::consensus_steps_bruteforce(0.9, 16));

  std::mt19937_64 g(9);
  std::uniform_real_distribution<double> unit(0.05, 0.99);
  for (int trial = 0; trial < 50; ++trial) {
    m.sigma2 = unit(g);
    const std::size_t n = 2 + std::size_t(unit(g) * 60.0);
    CHECK(rmt::min_consensus_steps(m, n) == oracle::consensus_steps_bruteforce(m.sigma2, n));
  }

  m.sigma2 = 1.0;
  CHECK_THROWS_AS(rmt::min_consensus_steps(m, 4), rmt::SpectralGapError);
}

TEST_CASE("with_consensus_steps caches the t-th power") {
  Graph r5 = rmt::build_graph(GraphKind::ring, 5, kDefaults, 0);
  MixingMatrix m1 = rmt::metropolis_weights(r5);
  MixingMatrix m2 = rmt::with_consensus_steps(m1, 2);
  CHECK(m2.t == 2);
  CHECK(oracle::frob_diff(m2.w_t, rmt::matmul(m1.w, m1.w)) <= 1e-15);
  CHECK(oracle::max_abs_diff(m2.w, m1.w) == 0.0);

  std::mt19937_64 g(11);
  std::vector<Matrix> blocks;
  for (int i = 0; i < 5; ++i) blocks.push_back(oracle::random_matrix(4, 2, g));
  std::vector<Matrix> twice = rmt::mix(m1, rmt::mix(m1, blocks));
  std::vector<Matrix> once = rmt::mix(m2, blocks);
  for (int i = 0; i < 5; ++i)
    CHECK(oracle::frob_diff(once[i], twice[i]) <= 1e-13);

  CHECK_THROWS_AS(rmt::with_consensus_steps(m1, 0), rmt::ConfigError);
}

TEST_CASE("mixing preserves the average and contracts the spread") {
  std::mt19937_64 g(13);
  Graph ring = rmt::build_graph(GraphKind::ring, 6, kDefaults, 0);
  MixingMatrix m = rmt::metropolis_weights(ring);

  std::vector<Matrix> blocks;
  for (int i = 0; i < 6; ++i) blocks.push_back(oracle::random_matrix(3, 2, g));

  auto average = [](const std::vector<Matrix>& bs) {
    Matrix avg(bs[0].rows(), bs[0].cols());
    for (const Matrix& b : bs) avg += b;
    avg *= 1.0 / double(bs.size());
    return avg;
  };
  auto spread = [&](const std::vector<Matrix>& bs) {
    Matrix avg = average(bs);
    double acc = 0.0;
    for (const Matrix& b : bs) acc += oracle::frob_diff(b, avg) * oracle::frob_diff(b, avg);
    return std::sqrt(acc);
  };

  std::vector<Matrix> mixed = rmt::mix(m, blocks);
  CHECK(oracle::frob_diff(average(mixed), average(blocks)) <= 1e-13);
  CHECK(spread(mixed) <= m.sigma2 * spread(blocks) + 1e-12);

  // A consensual network is a fixed point.
  std::vector<Matrix> same(6, blocks[0]);
  std::vector<Matrix> still = rmt::mix(m, same);
  for (const Matrix& b : still) CHECK(oracle::frob_diff(b, blocks[0]) <= 1e-14);

  std::vector<Matrix> out;
  rmt::mix_into(m, blocks, out);
  for (int i = 0; i < 6; ++i) CHECK(oracle::max_abs_diff(out[i], mixed[i]) == 0.0);

  std::vector<Matrix> short_list(5, blocks[0]);
  CHECK_THROWS_AS(rmt::mix(m, short_list), rmt::DimensionError);
}
