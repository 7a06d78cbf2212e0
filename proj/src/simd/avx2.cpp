// Compiled with -mavx2 -ffp-contract=off. FIR and elementwise kernels use
// separate multiply and add so each output lane reproduces the scalar
// reference's rounding sequence exactly.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "cinf/simd/kernels.hpp"

namespace cinf::simd {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void fir(const double* taps, std::size_t n_taps, const double* padded, double* out,
         std::size_t n_out) {
  const std::size_t last = n_taps - 1;
  std::size_t i = 0;
  for (; i + 16 <= n_out; i += 16) {
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    __m256d a2 = _mm256_setzero_pd();
    __m256d a3 = _mm256_setzero_pd();
    const double* base = padded + i + last;
    for (std::size_t k = 0; k < n_taps; ++k) {
      const __m256d h = _mm256_broadcast_sd(taps + k);
      const double* x = base - k;
      a0 = _mm256_add_pd(a0, _mm256_mul_pd(h, _mm256_loadu_pd(x)));
      a1 = _mm256_add_pd(a1, _mm256_mul_pd(h, _mm256_loadu_pd(x + 4)));
      a2 = _mm256_add_pd(a2, _mm256_mul_pd(h, _mm256_loadu_pd(x + 8)));
      a3 = _mm256_add_pd(a3, _mm256_mul_pd(h, _mm256_loadu_pd(x + 12)));
    }
    _mm256_storeu_pd(out + i, a0);
    _mm256_storeu_pd(out + i + 4, a1);
    _mm256_storeu_pd(out + i + 8, a2);
    _mm256_storeu_pd(out + i + 12, a3);
  }
  for (; i + 4 <= n_out; i += 4) {
    __m256d a0 = _mm256_setzero_pd();
    const double* base = padded + i + last;
    for (std::size_t k = 0; k < n_taps; ++k) {
      a0 = _mm256_add_pd(a0, _mm256_mul_pd(_mm256_broadcast_sd(taps + k), _mm256_loadu_pd(base - k)));
    }
    _mm256_storeu_pd(out + i, a0);
  }
  for (; i < n_out; ++i) {
    const double* x = padded + i + last;
    double acc = 0.0;
    for (std::size_t k = 0; k < n_taps; ++k) acc += taps[k] * x[-static_cast<std::ptrdiff_t>(k)];
    out[i] = acc;
  }
}

void add(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] + b[i];
}

void sub(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] - b[i];
}

void scale(const double* a, double factor, double* out, std::size_t n) {
  const __m256d f = _mm256_set1_pd(factor);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), f));
  for (; i < n; ++i) out[i] = a[i] * factor;
}

void clip(const double* a, double limit, double* out, std::size_t n) {
  const __m256d hi = _mm256_set1_pd(limit);
  const __m256d lo = _mm256_set1_pd(-limit);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_min_pd(_mm256_max_pd(_mm256_loadu_pd(a + i), lo), hi));
  for (; i < n; ++i) out[i] = std::min(std::max(a[i], -limit), limit);
}

double sum(const double* a, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd();
  __m256d s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    s0 = _mm256_add_pd(s0, _mm256_loadu_pd(a + i));
    s1 = _mm256_add_pd(s1, _mm256_loadu_pd(a + i + 4));
  }
  double acc = hsum(_mm256_add_pd(s0, s1));
  for (; i < n; ++i) acc += a[i];
  return acc;
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd();
  __m256d s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    s0 = _mm256_add_pd(s0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    s1 = _mm256_add_pd(s1, _mm256_mul_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4)));
  }
  double acc = hsum(_mm256_add_pd(s0, s1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double max_abs(const double* a, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, _mm256_andnot_pd(sign, _mm256_loadu_pd(a + i)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double r = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) r = std::max(r, std::fabs(a[i]));
  return r;
}

Moments central_moments(const double* a, std::size_t n, double mean) {
  const __m256d mu = _mm256_set1_pd(mean);
  __m256d s2 = _mm256_setzero_pd();
  __m256d s4 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), mu);
    const __m256d d2 = _mm256_mul_pd(d, d);
    s2 = _mm256_add_pd(s2, d2);
    s4 = _mm256_add_pd(s4, _mm256_mul_pd(d2, d2));
  }
  Moments m{hsum(s2), hsum(s4)};
  for (; i < n; ++i) {
    const double d = a[i] - mean;
    const double d2 = d * d;
    m.m2 += d2;
    m.m4 += d2 * d2;
  }
  return m;
}

}  // namespace

const KernelTable& avx2_table() noexcept {
  static const KernelTable table{"avx2", fir, add, sub, scale, clip, sum, dot, max_abs,
                                 central_moments};
  return table;
}

}  // namespace cinf::simd
