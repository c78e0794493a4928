#include "rmt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rmt/errors.hpp"
#include "rmt/kernels.hpp"

namespace rmt::linalg {

namespace {

constexpr int kMaxSweeps = 64;

double off_diag_norm_sq(const Matrix& a) {
  double acc = 0.0;
  for (std::size_t p = 0; p + 1 < a.rows(); ++p)
    for (std::size_t q = p + 1; q < a.cols(); ++q) acc += a(p, q) * a(p, q);
  return acc;
}

// Jacobi rotation parameters diagonalizing [[app, apq], [apq, aqq]].
void jacobi_cs(double app, double aqq, double apq, double& c, double& s, double& t) {
  const double tau = (aqq - app) / (2.0 * apq);
  t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                   : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
  c = 1.0 / std::sqrt(1.0 + t * t);
  s = t * c;
}

std::vector<std::size_t> sort_order_desc(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  return idx;
}

// Flip rows of a row-major basis so each one's largest-magnitude entry is
// positive. Removes the sign ambiguity of eigen/singular vectors.
void fix_row_signs(Matrix& basis) {
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    double* r = basis.row(i);
    std::size_t arg = 0;
    for (std::size_t j = 1; j < basis.cols(); ++j)
      if (std::fabs(r[j]) > std::fabs(r[arg])) arg = j;
    if (r[arg] < 0.0) kernels::scal(-1.0, r, basis.cols());
  }
}

}  // namespace

SymEig eigen_sym(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("eigen_sym needs a square matrix");
  const std::size_t n = a.rows();
  Matrix w = sym_part(a);
  Matrix vt = Matrix::identity(n);  // rows are eigenvector candidates

  const double base = w.frobenius_norm_sq();
  const double tol = base * 1e-28;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diag_norm_sq(w) <= tol) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = w(p, q);
        if (apq == 0.0) continue;
        double c, s, t;
        jacobi_cs(w(p, p), w(q, q), apq, c, s, t);
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = w(k, p);
          const double akq = w(k, q);
          w(k, p) = w(p, k) = c * akp - s * akq;
          w(k, q) = w(q, k) = s * akp + c * akq;
        }
        w(p, p) -= t * apq;
        w(q, q) += t * apq;
        w(p, q) = w(q, p) = 0.0;
        kernels::rot(vt.row(p), vt.row(q), n, c, s);
      }
    }
  }

  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = w(i, i);
  const auto order = sort_order_desc(diag);

  SymEig out;
  out.values.resize(n);
  Matrix sorted_vt(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] = diag[order[i]];
    std::copy(vt.row(order[i]), vt.row(order[i]) + n, sorted_vt.row(i));
  }
  fix_row_signs(sorted_vt);
  out.vectors = sorted_vt.transposed();
  return out;
}

Svd svd(const Matrix& a) {
  if (a.rows() < a.cols()) throw DimensionError("svd expects rows >= cols");
  const std::size_t p = a.rows();
  const std::size_t q = a.cols();
  if (q == 0) throw DimensionError("svd of an empty matrix");

  Matrix w = a.transposed();  // rows of w are columns of a
  Matrix vt = Matrix::identity(q);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < q; ++i) {
      for (std::size_t j = i + 1; j < q; ++j) {
        const double aii = kernels::dot(w.row(i), w.row(i), p);
        const double ajj = kernels::dot(w.row(j), w.row(j), p);
        const double aij = kernels::dot(w.row(i), w.row(j), p);
        if (aii == 0.0 || ajj == 0.0) continue;
        if (std::fabs(aij) <= 1e-15 * std::sqrt(aii * ajj)) continue;
        double c, s, t;
        jacobi_cs(aii, ajj, aij, c, s, t);
        kernels::rot(w.row(i), w.row(j), p, c, s);
        kernels::rot(vt.row(i), vt.row(j), q, c, s);
        rotated = true;
      }
    }
    if (!rotated) break;
    if (sweep == kMaxSweeps - 1)
      throw std::runtime_error("svd: Jacobi sweeps did not converge");
  }

  std::vector<double> norms(q);
  for (std::size_t i = 0; i < q; ++i)
    norms[i] = std::sqrt(kernels::dot(w.row(i), w.row(i), p));
  const auto order = sort_order_desc(norms);

  Svd out;
  out.sigma.resize(q);
  out.u = Matrix(p, q);
  out.vt = Matrix(q, q);
  for (std::size_t i = 0; i < q; ++i) {
    const std::size_t src = order[i];
    out.sigma[i] = norms[src];
    std::copy(vt.row(src), vt.row(src) + q, out.vt.row(i));
    if (norms[src] > 0.0) {
      const double inv = 1.0 / norms[src];
      const double* col = w.row(src);
      for (std::size_t k = 0; k < p; ++k) out.u(k, i) = col[k] * inv;
    }
  }
  return out;
}

std::vector<double> singular_values(const Matrix& a) {
  const Matrix& m = a;
  if (m.rows() >= m.cols()) return svd(m).sigma;
  return svd(m.transposed()).sigma;
}

Matrix qr_orthonormal(const Matrix& a) {
  if (a.rows() < a.cols()) throw DimensionError("qr_orthonormal expects rows >= cols");
  const std::size_t p = a.rows();
  const std::size_t q = a.cols();

  Matrix r = a;
  Matrix vs(q, p);  // reflector k lives in vs.row(k)[k..p)
  std::vector<double> dsign(q, 1.0);

  for (std::size_t k = 0; k < q; ++k) {
    double normx_sq = 0.0;
    for (std::size_t i = k; i < p; ++i) normx_sq += r(i, k) * r(i, k);
    const double normx = std::sqrt(normx_sq);
    if (normx == 0.0) continue;
    const double alpha = (r(k, k) >= 0.0) ? -normx : normx;
    dsign[k] = (alpha >= 0.0) ? 1.0 : -1.0;

    double* v = vs.row(k);
    for (std::size_t i = k; i < p; ++i) v[i] = r(i, k);
    v[k] -= alpha;
    double vnorm_sq = 0.0;
    for (std::size_t i = k; i < p; ++i) vnorm_sq += v[i] * v[i];
    if (vnorm_sq == 0.0) continue;
    const double inv = 1.0 / std::sqrt(vnorm_sq);
    for (std::size_t i = k; i < p; ++i) v[i] *= inv;

    for (std::size_t j = k; j < q; ++j) {
      double proj = 0.0;
      for (std::size_t i = k; i < p; ++i) proj += v[i] * r(i, j);
      proj *= 2.0;
      for (std::size_t i = k; i < p; ++i) r(i, j) -= proj * v[i];
    }
  }

  Matrix qm(p, q);
  for (std::size_t j = 0; j < q; ++j) qm(j, j) = 1.0;
  for (std::size_t k = q; k-- > 0;) {
    const double* v = vs.row(k);
    for (std::size_t j = 0; j < q; ++j) {
      double proj = 0.0;
      for (std::size_t i = k; i < p; ++i) proj += v[i] * qm(i, j);
      proj *= 2.0;
      for (std::size_t i = k; i < p; ++i) qm(i, j) -= proj * v[i];
    }
  }
  for (std::size_t j = 0; j < q; ++j) {
    if (dsign[j] < 0.0)
      for (std::size_t i = 0; i < p; ++i) qm(i, j) = -qm(i, j);
  }
  return qm;
}

}  // namespace rmt::linalg
