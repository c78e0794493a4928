#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rmt/matrix.hpp"

namespace rmt {

enum class GraphKind { ring, complete, star, erdos_renyi };

struct Graph {
  GraphKind kind = GraphKind::ring;
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j, sorted
  std::vector<std::size_t> degree;
  bool has_edge(std::size_t i, std::size_t j) const;
};

struct GraphParams {
  double er_p = 0.5;  // edge probability, erdos_renyi only
};

// Deterministic in (kind, n, params, seed). Erdos-Renyi redraws until the
// sample is connected, capped at 1000 attempts (GraphGenerationFailed).
Graph build_graph(GraphKind kind, std::size_t n, const GraphParams& params,
                  std::uint64_t seed);

bool is_connected(const Graph& g);

// Doubly stochastic mixing matrix with w_t = w^t cached for t gossip rounds
// per optimization round. sigma2 is the second-largest absolute eigenvalue
// of w (w is symmetric, so this is its second singular value).
struct MixingMatrix {
  Matrix w;
  Matrix w_t;
  int t = 1;
  double sigma2 = 0.0;
  std::size_t n() const { return w.rows(); }
};

// Metropolis-Hastings weights: w_ij = 1/(1 + max(deg_i, deg_j)) on edges,
// diagonal takes the slack. Requires a connected graph.
MixingMatrix metropolis_weights(const Graph& g);

MixingMatrix with_consensus_steps(const MixingMatrix& m, int t);

// Smallest t with sigma2^t <= 1/(4 sqrt(n)); returns 1 when sigma2 = 0.
// Throws SpectralGapError when sigma2 >= 1.
int min_consensus_steps(const MixingMatrix& m, std::size_t n);

// One synchronous gossip exchange: out[i] = sum_j (w_t)_ij blocks[j].
std::vector<Matrix> mix(const MixingMatrix& m, const std::vector<Matrix>& blocks);
void mix_into(const MixingMatrix& m, const std::vector<Matrix>& blocks,
              std::vector<Matrix>& out);

}  // namespace rmt
