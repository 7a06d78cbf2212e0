#pragma once

// Data-parallel inner loops behind Signal arithmetic, FIR filtering and the
// moment/peak metrics. Every kernel has a scalar reference implementation;
// vector variants must agree with it bit-for-bit for elementwise kernels and
// FIR, and to rounding for reductions (they reassociate sums).

#include <cstddef>
#include <string_view>

namespace cinf::simd {

struct Moments {
  double m2 = 0.0;  // sum of (x - mean)^2
  double m4 = 0.0;  // sum of (x - mean)^4
};

struct KernelTable {
  std::string_view name;

  // out[i] = sum_k taps[k] * padded[i + n_taps - 1 - k], k ascending.
  // padded holds n_taps - 1 history samples followed by the input.
  void (*fir)(const double* taps, std::size_t n_taps, const double* padded, double* out,
              std::size_t n_out);

  void (*add)(const double* a, const double* b, double* out, std::size_t n);
  void (*sub)(const double* a, const double* b, double* out, std::size_t n);
  void (*scale)(const double* a, double factor, double* out, std::size_t n);
  void (*clip)(const double* a, double limit, double* out, std::size_t n);

  double (*sum)(const double* a, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*max_abs)(const double* a, std::size_t n);
  Moments (*central_moments)(const double* a, std::size_t n, double mean);
};

const KernelTable& scalar_kernels() noexcept;

/// AVX2 variants, or nullptr when not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_kernels() noexcept;

/// Table used by the library. Chosen once: AVX2 when available, unless the
/// environment variable CINF_SIMD=scalar forces the reference path.
const KernelTable& active() noexcept;

}  // namespace cinf::simd
