#include "rmt/matrix.hpp"

#include <cmath>

#include "rmt/errors.hpp"

namespace rmt {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (!same_shape(o)) throw DimensionError("matrix += shape mismatch");
  kernels::axpy(1.0, o.data(), data(), size());
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (!same_shape(o)) throw DimensionError("matrix -= shape mismatch");
  kernels::axpy(-1.0, o.data(), data(), size());
  return *this;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

Matrix operator+(Matrix a, const Matrix& b) {
  a += b;
  return a;
}

Matrix operator-(Matrix a, const Matrix& b) {
  a -= b;
  return a;
}

Matrix operator*(Matrix a, double s) {
  a *= s;
  return a;
}

Matrix operator*(double s, Matrix a) {
  a *= s;
  return a;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matmul shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* arow = a.row(i);
    double* crow = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      kernels::axpy(arow[k], b.row(k), crow, b.cols());
    }
  }
  return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("matmul_tn shape mismatch");
  Matrix c(a.cols(), b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    const double* arow = a.row(k);
    for (std::size_t i = 0; i < a.cols(); ++i) {
      kernels::axpy(arow[i], b.row(k), c.row(i), b.cols());
    }
  }
  return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw DimensionError("matmul_nt shape mismatch");
  Matrix c(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j)
      c(i, j) = kernels::dot(a.row(i), b.row(j), a.cols());
  return c;
}

double frob_inner(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) throw DimensionError("frob_inner shape mismatch");
  return kernels::dot(a.data(), b.data(), a.size());
}

void axpy_into(double alpha, const Matrix& x, Matrix& y) {
  if (!x.same_shape(y)) throw DimensionError("axpy_into shape mismatch");
  kernels::axpy(alpha, x.data(), y.data(), x.size());
}

Matrix sym_part(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("sym_part needs a square matrix");
  Matrix s(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      s(i, j) = 0.5 * (a(i, j) + a(j, i));
  return s;
}

}  // namespace rmt
