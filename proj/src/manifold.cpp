#include "rmt/manifold.hpp"

#include <cmath>
#include <string>

#include "rmt/errors.hpp"
#include "rmt/linalg.hpp"

namespace rmt {

bool check_on_manifold(const Matrix& x, double tol) {
  if (x.rows() < x.cols() || x.cols() == 0) return false;
  Matrix g = matmul_tn(x, x);
  for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
  return g.frobenius_norm() <= tol;
}

TangentVector tangent_project(const StiefelPoint& x, const Matrix& u) {
  if (!u.same_shape(x.value)) throw DimensionError("tangent_project shape mismatch");
  Matrix v = u;
  v -= matmul(x.value, sym_part(matmul_tn(x.value, u)));
  return TangentVector{x, std::move(v)};
}

StiefelPoint manifold_project(const Matrix& y, double tol_rank) {
  if (y.rows() < y.cols() || y.cols() == 0)
    throw DimensionError("manifold_project needs a tall matrix");
  linalg::Svd f = linalg::svd(y);
  const double smin = f.sigma.back();
  if (!(smin > tol_rank)) {
    throw ProjectionNotUnique(
        smin, "manifold projection not unique: sigma_min = " + std::to_string(smin));
  }
  return StiefelPoint{matmul(f.u, f.vt)};
}

TangentVector riemannian_gradient(const StiefelPoint& x, const Matrix& euclidean_grad) {
  return tangent_project(x, euclidean_grad);
}

double normal_residual(const StiefelPoint& x, const Matrix& s) {
  TangentVector t = tangent_project(x, s);
  Matrix n = s;
  n -= t.value;
  return n.frobenius_norm();
}

StiefelPoint random_stiefel(std::size_t d, std::size_t r, std::mt19937_64& rng) {
  if (r == 0 || r > d) throw DimensionError("random_stiefel needs 1 <= r <= d");
  Matrix g(d, r);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < r; ++j) g(i, j) = normal(rng);
  return StiefelPoint{linalg::qr_orthonormal(g)};
}

}  // namespace rmt
