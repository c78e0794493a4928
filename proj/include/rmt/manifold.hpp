#pragma once

#include <cstdint>
#include <random>

#include "rmt/matrix.hpp"

namespace rmt {

// A d x r matrix with orthonormal columns. Constructed only by operations that
// guarantee the constraint; check_on_manifold() verifies it explicitly.
struct StiefelPoint {
  Matrix value;
  std::size_t d() const { return value.rows(); }
  std::size_t r() const { return value.cols(); }
};

// Tangent vector at a point, kept together with its anchor.
struct TangentVector {
  StiefelPoint anchor;
  Matrix value;
};

bool check_on_manifold(const Matrix& x, double tol = 1e-10);

// P_x(u) = u - x sym(xT u), the orthogonal projection onto the tangent space.
TangentVector tangent_project(const StiefelPoint& x, const Matrix& u);

// Nearest point on the manifold: the polar factor of y. Throws
// ProjectionNotUnique when sigma_min(y) <= tol_rank.
StiefelPoint manifold_project(const Matrix& y, double tol_rank = 1e-8);

// Riemannian gradient from a Euclidean one: tangent projection at x.
TangentVector riemannian_gradient(const StiefelPoint& x, const Matrix& euclidean_grad);

// Norm of the normal component of s at x, i.e. ||s - P_x(s)||_F.
double normal_residual(const StiefelPoint& x, const Matrix& s);

// Uniform-ish random point: thin Q factor of a Gaussian d x r draw.
StiefelPoint random_stiefel(std::size_t d, std::size_t r, std::mt19937_64& rng);

}  // namespace rmt
