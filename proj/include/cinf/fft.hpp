#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cinf {

/// Real-input FFT of fixed length backed by FFTW. Planning is serialised
/// internally; a plan may then be executed from its owning thread.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const noexcept { return n_; }

  /// n/2 + 1 bins, unnormalised.
  std::vector<std::complex<double>> forward(std::span<const double> in);

  /// Inverse of forward(), scaled by 1/n so inverse(forward(x)) == x.
  std::vector<double> inverse(std::span<const std::complex<double>> bins);

 private:
  std::size_t n_;
  double* real_;
  void* spec_;
  void* fwd_;
  void* inv_;
};

std::vector<std::complex<double>> rfft(std::span<const double> in);
std::vector<double> irfft(std::span<const std::complex<double>> bins, std::size_t n);

}  // namespace cinf
