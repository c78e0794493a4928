#include "rmt/topology.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <string>

#include "rmt/errors.hpp"
#include "rmt/linalg.hpp"

namespace rmt {

namespace {

void finalize(Graph& g) {
  std::sort(g.edges.begin(), g.edges.end());
  g.degree.assign(g.n, 0);
  for (const auto& [i, j] : g.edges) {
    ++g.degree[i];
    ++g.degree[j];
  }
}

}  // namespace

bool Graph::has_edge(std::size_t i, std::size_t j) const {
  if (i == j) return false;
  if (i > j) std::swap(i, j);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

Graph build_graph(GraphKind kind, std::size_t n, const GraphParams& params,
                  std::uint64_t seed) {
  if (n < 2) throw DimensionError("build_graph needs n >= 2");
  Graph g;
  g.kind = kind;
  g.n = n;
  switch (kind) {
    case GraphKind::ring:
      for (std::size_t i = 0; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
      if (n > 2) g.edges.emplace_back(std::size_t{0}, n - 1);
      break;
    case GraphKind::complete:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) g.edges.emplace_back(i, j);
      break;
    case GraphKind::star:
      for (std::size_t i = 1; i < n; ++i) g.edges.emplace_back(std::size_t{0}, i);
      break;
    case GraphKind::erdos_renyi: {
      if (!(params.er_p > 0.0 && params.er_p <= 1.0))
        throw ConfigError("erdos_renyi needs p in (0, 1]");
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      for (int attempt = 0; attempt < 1000; ++attempt) {
        g.edges.clear();
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i + 1; j < n; ++j)
            if (unif(rng) < params.er_p) g.edges.emplace_back(i, j);
        finalize(g);
        if (is_connected(g)) return g;
      }
      throw GraphGenerationFailed(
          "no connected Erdos-Renyi sample in 1000 attempts (p = " +
          std::to_string(params.er_p) + ", n = " + std::to_string(n) + ")");
    }
  }
  finalize(g);
  return g;
}

bool is_connected(const Graph& g) {
  if (g.n == 0) return false;
  std::vector<std::vector<std::size_t>> adj(g.n);
  for (const auto& [i, j] : g.edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::vector<char> seen(g.n, 0);
  std::queue<std::size_t> q;
  q.push(0);
  seen[0] = 1;
  std::size_t count = 1;
  while (!q.empty()) {
    std::size_t u = q.front();
    q.pop();
    for (std::size_t v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        q.push(v);
      }
    }
  }
  return count == g.n;
}

MixingMatrix metropolis_weights(const Graph& g) {
  if (!is_connected(g)) throw ConfigError("metropolis_weights needs a connected graph");
  const std::size_t n = g.n;
  MixingMatrix m;
  m.w = Matrix(n, n);
  for (const auto& [i, j] : g.edges) {
    const double wij = 1.0 / (1.0 + double(std::max(g.degree[i], g.degree[j])));
    m.w(i, j) = wij;
    m.w(j, i) = wij;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) off += m.w(i, j);
    m.w(i, i) = 1.0 - off;
  }
  m.w_t = m.w;
  m.t = 1;

  linalg::SymEig eig = linalg::eigen_sym(m.w);
  std::vector<double> mags(eig.values.size());
  for (std::size_t i = 0; i < mags.size(); ++i) mags[i] = std::fabs(eig.values[i]);
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  m.sigma2 = mags.size() > 1 ? mags[1] : 0.0;
  return m;
}

MixingMatrix with_consensus_steps(const MixingMatrix& m, int t) {
  if (t < 1) throw ConfigError("consensus steps must be >= 1");
  MixingMatrix out;
  out.w = m.w;
  out.sigma2 = m.sigma2;
  out.t = t;
  out.w_t = m.w;
  for (int k = 1; k < t; ++k) out.w_t = matmul(out.w_t, m.w);
  return out;
}

int min_consensus_steps(const MixingMatrix& m, std::size_t n) {
  if (m.sigma2 == 0.0) return 1;
  if (m.sigma2 >= 1.0)
    throw SpectralGapError("mixing matrix has no spectral gap: sigma2 = " +
                           std::to_string(m.sigma2));
  const double target = 1.0 / (4.0 * std::sqrt(double(n)));
  double pw = m.sigma2;
  int t = 1;
  while (pw > target) {
    ++t;
    pw *= m.sigma2;
    if (t > 10'000'000)
      throw SpectralGapError("spectral gap too small to reach consensus target");
  }
  return t;
}

void mix_into(const MixingMatrix& m, const std::vector<Matrix>& blocks,
              std::vector<Matrix>& out) {
  const std::size_t n = m.n();
  if (blocks.size() != n) throw DimensionError("mix: block count != mixing size");
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = Matrix(blocks[0].rows(), blocks[0].cols());
    const double* wrow = m.w_t.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (!blocks[j].same_shape(blocks[0]))
        throw DimensionError("mix: inconsistent block shapes");
      if (wrow[j] != 0.0)
        kernels::axpy(wrow[j], blocks[j].data(), out[i].data(), out[i].size());
    }
  }
}

std::vector<Matrix> mix(const MixingMatrix& m, const std::vector<Matrix>& blocks) {
  std::vector<Matrix> out;
  mix_into(m, blocks, out);
  return out;
}

}  // namespace rmt
