#include "cinf/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

#include "cinf/error.hpp"

namespace cinf {
namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

RealFft::RealFft(std::size_t n) : n_(n) {
  if (n == 0) throw InvalidArgument("FFT length must be positive");
  std::lock_guard lock(planner_mutex());
  real_ = fftw_alloc_real(n);
  auto* spec = fftw_alloc_complex(n / 2 + 1);
  spec_ = spec;
  const int len = static_cast<int>(n);
  fwd_ = fftw_plan_dft_r2c_1d(len, real_, spec, FFTW_ESTIMATE);
  inv_ = fftw_plan_dft_c2r_1d(len, spec, real_, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(inv_));
  fftw_free(real_);
  fftw_free(spec_);
}

std::vector<std::complex<double>> RealFft::forward(std::span<const double> in) {
  if (in.size() != n_) throw InvalidArgument("FFT input length mismatch");
  std::copy(in.begin(), in.end(), real_);
  fftw_execute(static_cast<fftw_plan>(fwd_));
  auto* spec = static_cast<fftw_complex*>(spec_);
  std::vector<std::complex<double>> out(n_ / 2 + 1);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = {spec[k][0], spec[k][1]};
  return out;
}

std::vector<double> RealFft::inverse(std::span<const std::complex<double>> bins) {
  if (bins.size() != n_ / 2 + 1) throw InvalidArgument("inverse FFT bin count mismatch");
  auto* spec = static_cast<fftw_complex*>(spec_);
  for (std::size_t k = 0; k < bins.size(); ++k) {
    spec[k][0] = bins[k].real();
    spec[k][1] = bins[k].imag();
  }
  // c2r destroys its input, which is our own scratch buffer.
  fftw_execute(static_cast<fftw_plan>(inv_));
  std::vector<double> out(real_, real_ + n_);
  const double norm = 1.0 / static_cast<double>(n_);
  for (double& v : out) v *= norm;
  return out;
}

std::vector<std::complex<double>> rfft(std::span<const double> in) {
  RealFft fft(in.size());
  return fft.forward(in);
}

std::vector<double> irfft(std::span<const std::complex<double>> bins, std::size_t n) {
  RealFft fft(n);
  return fft.inverse(bins);
}

}  // namespace cinf
