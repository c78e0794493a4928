#include "rmt/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

namespace rmt::kernels {

namespace detail {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal_scalar(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void rot_scalar(double* x, double* y, std::size_t n, double c, double s) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

#if RMT_HAVE_AVX2
double dot_avx2(const double* a, const double* b, std::size_t n);
void axpy_avx2(double a, const double* x, double* y, std::size_t n);
void scal_avx2(double a, double* x, std::size_t n);
void rot_avx2(double* x, double* y, std::size_t n, double c, double s);
bool cpu_has_avx2();
#endif

}  // namespace detail

namespace {

struct Table {
  Backend id;
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scal)(double, double*, std::size_t);
  void (*rot)(double*, double*, std::size_t, double, double);
};

const Table scalar_table{Backend::scalar, detail::dot_scalar, detail::axpy_scalar,
                         detail::scal_scalar, detail::rot_scalar};

#if RMT_HAVE_AVX2
const Table avx2_table{Backend::avx2, detail::dot_avx2, detail::axpy_avx2,
                       detail::scal_avx2, detail::rot_avx2};
#endif

const Table* pick_default() {
  const char* env = std::getenv("RMT_KERNEL_BACKEND");
  if (env != nullptr) {
    const std::string v(env);
    if (v == "scalar") return &scalar_table;
#if RMT_HAVE_AVX2
    if (v == "avx2" && detail::cpu_has_avx2()) return &avx2_table;
#endif
  }
#if RMT_HAVE_AVX2
  if (detail::cpu_has_avx2()) return &avx2_table;
#endif
  return &scalar_table;
}

const Table*& current() {
  static const Table* t = pick_default();
  return t;
}

}  // namespace

Backend active() { return current()->id; }

bool backend_supported(Backend b) {
  if (b == Backend::scalar) return true;
#if RMT_HAVE_AVX2
  return detail::cpu_has_avx2();
#else
  return false;
#endif
}

void set_backend(Backend b) {
  if (!backend_supported(b)) {
    throw std::runtime_error("kernel backend not supported on this machine: " +
                             backend_name(b));
  }
  if (b == Backend::scalar) {
    current() = &scalar_table;
    return;
  }
#if RMT_HAVE_AVX2
  current() = &avx2_table;
#endif
}

std::string backend_name(Backend b) {
  return b == Backend::scalar ? "scalar" : "avx2";
}

double dot(const double* a, const double* b, std::size_t n) {
  return current()->dot(a, b, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  current()->axpy(a, x, y, n);
}

void scal(double a, double* x, std::size_t n) { current()->scal(a, x, n); }

void rot(double* x, double* y, std::size_t n, double c, double s) {
  current()->rot(x, y, n, c, s);
}

}  // namespace rmt::kernels
