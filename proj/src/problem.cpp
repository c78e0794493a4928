#include "rmt/problem.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "rmt/errors.hpp"
#include "rmt/linalg.hpp"

namespace rmt {

std::vector<std::size_t> EigProblem::block_rows() const {
  std::vector<std::size_t> out(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) out[i] = blocks[i].rows();
  return out;
}

std::size_t EigProblem::total_rows() const {
  std::size_t total = 0;
  for (const Matrix& b : blocks) total += b.rows();
  return total;
}

void EigProblem::rebuild_grams() {
  gram_blocks.clear();
  gram_blocks.reserve(blocks.size());
  gram_total = Matrix(d, d);
  for (const Matrix& b : blocks) {
    gram_blocks.push_back(matmul_tn(b, b));
    gram_total += gram_blocks.back();
  }
}

void EigProblem::validate() const {
  if (n < 1 || blocks.size() != n) throw DimensionError("problem: bad block count");
  if (r < 1 || r > d) throw DimensionError("problem: needs 1 <= r <= d");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("problem: delta in (0, 1)");
  if (!(sigma0 > 0.0)) throw ConfigError("problem: sigma0 > 0");
  for (const Matrix& b : blocks) {
    if (b.cols() != d) throw DimensionError("problem: block width != d");
    if (b.rows() < d) throw DimensionError("problem: block has fewer than d rows");
    if (!b.all_finite()) throw ConfigError("problem: non-finite data");
  }
}

EigProblem generate_synthetic(std::size_t n, std::size_t m, std::size_t d,
                              std::size_t r, double delta, double sigma0,
                              std::uint64_t seed) {
  if (n < 1) throw DimensionError("generate_synthetic: n >= 1");
  if (m < d) throw DimensionError("generate_synthetic: m >= d");
  if (r < 1 || r > d) throw DimensionError("generate_synthetic: 1 <= r <= d");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("generate_synthetic: delta in (0, 1)");
  if (!(sigma0 > 0.0)) throw ConfigError("generate_synthetic: sigma0 > 0");

  const std::size_t total = n * m;
  Matrix a0(total, d);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < d; ++j) a0(i, j) = normal(rng);

  // Rescale each right-singular direction so sigma_j -> sigma0 * delta^(j/2)
  // without touching the left factor: A V diag(new/old) VT.
  linalg::SymEig eig = linalg::eigen_sym(matmul_tn(a0, a0));
  std::vector<double> old_sigma(d);
  for (std::size_t j = 0; j < d; ++j) old_sigma[j] = std::sqrt(std::max(eig.values[j], 0.0));
  if (!(old_sigma[d - 1] > 1e-12 * old_sigma[0]))
    throw DegenerateSpectrum("generate_synthetic: sampled data is rank deficient");

  Matrix scale(d, d);
  for (std::size_t j = 0; j < d; ++j)
    scale(j, j) = sigma0 * std::pow(delta, 0.5 * double(j)) / old_sigma[j];
  Matrix shaper = matmul(matmul(eig.vectors, scale), eig.vectors.transposed());
  Matrix a = matmul(a0, shaper);

  EigProblem p;
  p.n = n;
  p.d = d;
  p.r = r;
  p.delta = delta;
  p.sigma0 = sigma0;
  p.seed = seed;
  p.blocks.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix block(m, d);
    for (std::size_t k = 0; k < m; ++k)
      std::copy(a.row(i * m + k), a.row(i * m + k) + d, block.row(k));
    p.blocks.push_back(std::move(block));
  }
  p.rebuild_grams();
  p.validate();
  return p;
}

Matrix local_gradient(const EigProblem& p, std::size_t i, const StiefelPoint& x) {
  if (i >= p.n) throw DimensionError("local_gradient: agent index out of range");
  if (x.d() != p.d || x.r() != p.r) throw DimensionError("local_gradient: shape mismatch");
  Matrix g = matmul(p.gram_blocks[i], x.value);
  g *= -1.0;
  return g;
}

double local_objective(const EigProblem& p, std::size_t i, const StiefelPoint& x) {
  if (i >= p.n) throw DimensionError("local_objective: agent index out of range");
  return -0.5 * frob_inner(x.value, matmul(p.gram_blocks[i], x.value));
}

double global_objective(const EigProblem& p, const StiefelPoint& x) {
  if (x.d() != p.d || x.r() != p.r) throw DimensionError("global_objective: shape mismatch");
  return -0.5 / double(p.n) * frob_inner(x.value, matmul(p.gram_total, x.value));
}

Solution exact_solution(const EigProblem& p) {
  linalg::SymEig eig = linalg::eigen_sym(p.gram_total);
  if (p.r < p.d) {
    const double gap = eig.values[p.r - 1] - eig.values[p.r];
    if (!(gap > 1e-12 * std::max(1.0, std::fabs(eig.values[0]))))
      throw DegenerateSpectrum("exact_solution: eigenvalues r-1 and r tie");
  }
  Matrix xs(p.d, p.r);
  for (std::size_t i = 0; i < p.d; ++i)
    for (std::size_t j = 0; j < p.r; ++j) xs(i, j) = eig.vectors(i, j);
  Solution sol;
  sol.x_star = StiefelPoint{std::move(xs)};
  sol.eigenvalues = eig.values;
  sol.f_star = global_objective(p, sol.x_star);
  return sol;
}

LipschitzConstants lipschitz_constants(const EigProblem& p) {
  LipschitzConstants c;
  for (const Matrix& b : p.gram_blocks) {
    linalg::SymEig eig = linalg::eigen_sym(b);
    c.l = std::max(c.l, std::fabs(eig.values[0]));
  }
  c.l_f = c.l * std::sqrt(double(p.r));
  c.l_g = c.l + c.l_f;
  return c;
}

void save_problem(const EigProblem& p, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (f == nullptr) throw std::runtime_error("save_problem: cannot open " + path);
  std::fprintf(f, "%zu %zu %zu %.17g %.17g %" PRIu64, p.n, p.d, p.r, p.delta,
               p.sigma0, p.seed);
  for (const Matrix& b : p.blocks) std::fprintf(f, " %zu", b.rows());
  std::fputc('\n', f);
  for (const Matrix& b : p.blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i) {
      for (std::size_t j = 0; j < b.cols(); ++j)
        std::fprintf(f, j == 0 ? "%.17g" : " %.17g", b(i, j));
      std::fputc('\n', f);
    }
  }
  if (std::fclose(f) != 0) throw std::runtime_error("save_problem: write failed");
}

EigProblem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_problem: cannot open " + path);
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("load_problem: empty file");
  std::istringstream hs(header);
  EigProblem p;
  if (!(hs >> p.n >> p.d >> p.r >> p.delta >> p.sigma0 >> p.seed))
    throw std::runtime_error("load_problem: malformed header");
  std::vector<std::size_t> rows(p.n);
  for (std::size_t i = 0; i < p.n; ++i)
    if (!(hs >> rows[i])) throw std::runtime_error("load_problem: missing block sizes");
  p.blocks.reserve(p.n);
  for (std::size_t i = 0; i < p.n; ++i) {
    Matrix b(rows[i], p.d);
    for (std::size_t k = 0; k < rows[i]; ++k)
      for (std::size_t j = 0; j < p.d; ++j)
        if (!(in >> b(k, j))) throw std::runtime_error("load_problem: truncated data");
    p.blocks.push_back(std::move(b));
  }
  p.rebuild_grams();
  p.validate();
  return p;
}

}  // namespace rmt
