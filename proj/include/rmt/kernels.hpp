#pragma once

#include <cstddef>
#include <string>

namespace rmt::kernels {

enum class Backend { scalar, avx2 };

// Active compute backend. Defaults to the widest instruction set the CPU
// supports; the environment variable RMT_KERNEL_BACKEND=scalar|avx2 overrides
// the initial pick, and set_backend() switches it at runtime (tests use this).
Backend active();
bool backend_supported(Backend b);
void set_backend(Backend b);  // throws std::runtime_error if unsupported here
std::string backend_name(Backend b);

double dot(const double* a, const double* b, std::size_t n);

// y += a * x
void axpy(double a, const double* x, double* y, std::size_t n);

// x *= a
void scal(double a, double* x, std::size_t n);

// Plane rotation: x'[i] = c*x[i] - s*y[i], y'[i] = s*x[i] + c*y[i].
void rot(double* x, double* y, std::size_t n, double c, double s);

}  // namespace rmt::kernels
