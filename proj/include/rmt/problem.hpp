#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rmt/manifold.hpp"
#include "rmt/matrix.hpp"

namespace rmt {

// Distributed eigenvector benchmark: agent i holds an m_i x d data block A_i
// and the local objective f_i(x) = -1/2 tr(xT A_iT A_i x). The network
// objective is f = (1/n) sum_i f_i, minimized over d x r orthonormal frames.
struct EigProblem {
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t r = 0;
  double delta = 0.0;
  double sigma0 = 0.0;
  std::uint64_t seed = 0;
  std::vector<Matrix> blocks;       // A_i
  std::vector<Matrix> gram_blocks;  // B_i = A_iT A_i, cached
  Matrix gram_total;                // sum_i B_i = AT A

  std::vector<std::size_t> block_rows() const;
  std::size_t total_rows() const;
  void rebuild_grams();
  void validate() const;
};

// Gaussian rows reshaped so the stacked matrix has singular values
// sigma0 * delta^(j/2), j = 0..d-1, then split contiguously into n blocks of
// m rows each. Deterministic in the arguments.
EigProblem generate_synthetic(std::size_t n, std::size_t m, std::size_t d,
                              std::size_t r, double delta, double sigma0,
                              std::uint64_t seed);

// Euclidean gradient of f_i at x: -B_i x.
Matrix local_gradient(const EigProblem& p, std::size_t i, const StiefelPoint& x);

double local_objective(const EigProblem& p, std::size_t i, const StiefelPoint& x);
double global_objective(const EigProblem& p, const StiefelPoint& x);

struct Solution {
  StiefelPoint x_star;            // top-r eigenvectors of AT A
  double f_star = 0.0;            // global objective at x_star
  std::vector<double> eigenvalues;  // of AT A, descending
};

// Throws DegenerateSpectrum when eigenvalue r-1 and r tie within 1e-12
// relative, since the optimizer frame is not unique then.
Solution exact_solution(const EigProblem& p);

struct LipschitzConstants {
  double l = 0.0;    // max_i ||B_i||_2
  double l_f = 0.0;  // l * sqrt(r)
  double l_g = 0.0;  // l + l_f (proximal smoothness constant 1)
};
LipschitzConstants lipschitz_constants(const EigProblem& p);

// Plain-text round trip: one header line "n d r delta sigma0 seed m_1 .. m_n",
// then the blocks row by row, 17 significant digits.
void save_problem(const EigProblem& p, const std::string& path);
EigProblem load_problem(const std::string& path);

}  // namespace rmt
