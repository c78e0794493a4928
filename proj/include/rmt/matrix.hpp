#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "rmt/kernels.hpp"

namespace rmt {

// Dense row-major matrix of doubles. Fixed shape after construction,
// value semantics, zero-initialized.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool same_shape(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double a) {
    kernels::scal(a, data(), size());
    return *this;
  }

  Matrix transposed() const;
  void set_zero() { std::fill(data_.begin(), data_.end(), 0.0); }

  double frobenius_norm_sq() const { return kernels::dot(data(), data(), size()); }
  double frobenius_norm() const { return std::sqrt(frobenius_norm_sq()); }
  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);

Matrix matmul(const Matrix& a, const Matrix& b);     // a * b
Matrix matmul_tn(const Matrix& a, const Matrix& b);  // aT * b
Matrix matmul_nt(const Matrix& a, const Matrix& b);  // a * bT

// tr(aT b), the Frobenius inner product.
double frob_inner(const Matrix& a, const Matrix& b);

// y += alpha * x
void axpy_into(double alpha, const Matrix& x, Matrix& y);

// (a + aT) / 2
Matrix sym_part(const Matrix& a);

}  // namespace rmt
