#pragma once

#include <vector>

#include "rmt/matrix.hpp"

namespace rmt::linalg {

// Eigendecomposition of a symmetric matrix (cyclic Jacobi). Eigenvalues sorted
// in descending order; vectors.col(j) is the unit eigenvector for values[j],
// sign-fixed so the entry of largest magnitude is positive.
struct SymEig {
  std::vector<double> values;
  Matrix vectors;
};
SymEig eigen_sym(const Matrix& a);

// Thin SVD a = u * diag(sigma) * vt of a p x q matrix with p >= q, computed by
// one-sided Jacobi on the columns. sigma sorted descending, u is p x q with
// orthonormal columns (columns matching sigma[j] = 0 are left zero), vt is q x q
// orthogonal.
struct Svd {
  Matrix u;
  std::vector<double> sigma;
  Matrix vt;
};
Svd svd(const Matrix& a);

// Singular values only, sorted descending. Accepts any shape.
std::vector<double> singular_values(const Matrix& a);

// Thin Q factor of a p x q matrix with p >= q and full column rank, with the
// sign convention diag(R) > 0 so the factor is unique.
Matrix qr_orthonormal(const Matrix& a);

}  // namespace rmt::linalg
