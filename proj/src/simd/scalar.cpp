#include <algorithm>
#include <cmath>

#include "cinf/simd/kernels.hpp"

namespace cinf::simd {
namespace {

void fir(const double* taps, std::size_t n_taps, const double* padded, double* out,
         std::size_t n_out) {
  for (std::size_t i = 0; i < n_out; ++i) {
    const double* x = padded + i + n_taps - 1;
    double acc = 0.0;
    for (std::size_t k = 0; k < n_taps; ++k) acc += taps[k] * x[-static_cast<std::ptrdiff_t>(k)];
    out[i] = acc;
  }
}

void add(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

void sub(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

void scale(const double* a, double factor, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * factor;
}

void clip(const double* a, double limit, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::min(std::max(a[i], -limit), limit);
}

double sum(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i];
  return acc;
}

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double max_abs(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i]));
  return m;
}

Moments central_moments(const double* a, std::size_t n, double mean) {
  Moments m;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - mean;
    const double d2 = d * d;
    m.m2 += d2;
    m.m4 += d2 * d2;
  }
  return m;
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
  static const KernelTable table{"scalar", fir, add, sub, scale, clip, sum, dot, max_abs,
                                 central_moments};
  return table;
}

}  // namespace cinf::simd
