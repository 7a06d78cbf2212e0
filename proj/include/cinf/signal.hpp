#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cinf/error.hpp"

namespace cinf {

class FilterKernel;

/// Sample times of a uniformly sampled sequence. Always derived from a rate.
class TimeGrid {
 public:
  TimeGrid(double sample_rate, double start_time = 0.0);

  double start_time() const noexcept { return start_; }
  double step() const noexcept { return step_; }
  double at(std::size_t index) const noexcept { return start_ + step_ * static_cast<double>(index); }

 private:
  double start_;
  double step_;
};

/// Uniformly sampled, real-valued sample sequence.
///
/// A Signal is an immutable value: the sample rate is strictly positive and
/// every sample is finite. Both are checked on construction, so anything
/// holding a Signal can rely on them. Empty signals are legal.
class Signal {
 public:
  Signal(std::vector<double> samples, double sample_rate);

  static Signal zeros(std::size_t length, double sample_rate);

  std::span<const double> samples() const noexcept { return samples_; }
  const std::vector<double>& values() const noexcept { return samples_; }
  std::vector<double> release() && noexcept { return std::move(samples_); }

  double sample_rate() const noexcept { return rate_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }
  double operator[](std::size_t i) const noexcept { return samples_[i]; }
  double duration() const noexcept { return static_cast<double>(samples_.size()) / rate_; }
  TimeGrid grid() const { return TimeGrid(rate_); }

  /// Copy of samples [first, first + count), clamped to the signal end.
  Signal slice(std::size_t first, std::size_t count) const;

  friend bool operator==(const Signal&, const Signal&) = default;

 private:
  std::vector<double> samples_;
  double rate_;
};

/// Throws MismatchError unless both signals share length and rate.
void require_compatible(const Signal& a, const Signal& b, const char* what);

Signal add(const Signal& a, const Signal& b);
Signal subtract(const Signal& a, const Signal& b);
Signal scale(const Signal& s, double factor);
Signal negate(const Signal& s);
Signal zeros_like(const Signal& s);

/// output[k] = input[k - n] for k >= n, zero before; length preserved.
Signal delay(const Signal& s, std::size_t n_samples);

/// Anti-alias filter then keep every factor-th sample.
Signal decimate(const Signal& s, std::size_t factor, const FilterKernel& anti_alias);

}  // namespace cinf
