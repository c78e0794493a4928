#pragma once

// Shared helpers for the test binaries: random data and brute-force
// reference implementations kept deliberately naive.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "rmt/manifold.hpp"
#include "rmt/matrix.hpp"

namespace oracle {

inline rmt::Matrix random_matrix(std::size_t p, std::size_t q, std::mt19937_64& g,
                                 double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  rmt::Matrix a(p, q);
  for (std::size_t i = 0; i < a.size(); ++i) a.data()[i] = dist(g);
  return a;
}

inline rmt::Matrix random_symmetric(std::size_t n, std::mt19937_64& g) {
  rmt::Matrix a = random_matrix(n, n, g);
  return rmt::sym_part(a);
}

inline double frob_diff(const rmt::Matrix& a, const rmt::Matrix& b) {
  return (a - b).frobenius_norm();
}

inline double max_abs_diff(const rmt::Matrix& a, const rmt::Matrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

inline double offdiag_max(const rmt::Matrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

inline double identity_error(const rmt::Matrix& a) {
  return frob_diff(a, rmt::Matrix::identity(a.rows()));
}

// min_O ||x - y O||_F by exhaustive search over the orthogonal group:
// {+1, -1} for r = 1, rotations and reflections on an angle grid for r = 2.
inline double procrustes_bruteforce(const rmt::Matrix& x, const rmt::Matrix& y,
                                    std::size_t grid = 5000) {
  const std::size_t r = x.cols();
  double best = 1e300;
  if (r == 1) {
    for (double o : {1.0, -1.0}) best = std::min(best, frob_diff(x, y * o));
    return best;
  }
  for (std::size_t g = 0; g < grid; ++g) {
    const double th = 2.0 * std::numbers::pi * double(g) / double(grid);
    const double c = std::cos(th);
    const double s = std::sin(th);
    for (int refl = 0; refl < 2; ++refl) {
      rmt::Matrix o(2, 2);
      o(0, 0) = c;
      o(1, 0) = s;
      if (refl == 0) {
        o(0, 1) = -s;
        o(1, 1) = c;
      } else {
        o(0, 1) = s;
        o(1, 1) = -c;
      }
      best = std::min(best, frob_diff(x, rmt::matmul(y, o)));
    }
  }
  return best;
}

// Union-find connectivity, independent of the BFS in the library.
inline bool connected_union_find(std::size_t n,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& [i, j] : edges) parent[find(i)] = find(j);
  for (std::size_t i = 1; i < n; ++i)
    if (find(i) != find(0)) return false;
  return true;
}

// Smallest t with sigma2^t <= 1/(4 sqrt(n)), by plain repeated multiplication.
inline int consensus_steps_bruteforce(double sigma2, std::size_t n) {
  const double target = 1.0 / (4.0 * std::sqrt(double(n)));
  double pw = sigma2;
  int t = 1;
  while (pw > target) {
    ++t;
    pw *= sigma2;
  }
  return t;
}

}  // namespace oracle
