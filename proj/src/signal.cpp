#include "cinf/signal.hpp"

#include <cmath>
#include <string>

#include "cinf/filters.hpp"
#include "cinf/simd/kernels.hpp"

namespace cinf {

TimeGrid::TimeGrid(double sample_rate, double start_time) : start_(start_time) {
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate))
    throw InvalidArgument("sample rate must be positive and finite");
  step_ = 1.0 / sample_rate;
}

Signal::Signal(std::vector<double> samples, double sample_rate)
    : samples_(std::move(samples)), rate_(sample_rate) {
  if (!(rate_ > 0.0) || !std::isfinite(rate_)) throw InvalidArgument("sample rate must be positive and finite");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i]))
      throw InvalidArgument("non-finite sample at index " + std::to_string(i));
  }
}

Signal Signal::zeros(std::size_t length, double sample_rate) {
  return Signal(std::vector<double>(length, 0.0), sample_rate);
}

Signal Signal::slice(std::size_t first, std::size_t count) const {
  if (first >= samples_.size()) return Signal({}, rate_);
  const std::size_t n = std::min(count, samples_.size() - first);
  return Signal(std::vector<double>(samples_.begin() + static_cast<std::ptrdiff_t>(first),
                                    samples_.begin() + static_cast<std::ptrdiff_t>(first + n)),
                rate_);
}

void require_compatible(const Signal& a, const Signal& b, const char* what) {
  if (a.size() != b.size())
    throw MismatchError(std::string(what) + ": length mismatch (" + std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()) + ")");
  if (a.sample_rate() != b.sample_rate())
    throw MismatchError(std::string(what) + ": sample rate mismatch");
}

Signal add(const Signal& a, const Signal& b) {
  require_compatible(a, b, "add");
  std::vector<double> out(a.size());
  simd::active().add(a.samples().data(), b.samples().data(), out.data(), out.size());
  return Signal(std::move(out), a.sample_rate());
}

Signal subtract(const Signal& a, const Signal& b) {
  require_compatible(a, b, "subtract");
  std::vector<double> out(a.size());
  simd::active().sub(a.samples().data(), b.samples().data(), out.data(), out.size());
  return Signal(std::move(out), a.sample_rate());
}

Signal scale(const Signal& s, double factor) {
  if (!std::isfinite(factor)) throw InvalidArgument("scale factor must be finite");
  std::vector<double> out(s.size());
  simd::active().scale(s.samples().data(), factor, out.data(), out.size());
  return Signal(std::move(out), s.sample_rate());
}

Signal negate(const Signal& s) { return scale(s, -1.0); }

Signal zeros_like(const Signal& s) { return Signal::zeros(s.size(), s.sample_rate()); }

Signal delay(const Signal& s, std::size_t n_samples) {
  std::vector<double> out(s.size(), 0.0);
  if (n_samples < s.size()) {
    std::copy(s.samples().begin(), s.samples().end() - static_cast<std::ptrdiff_t>(n_samples),
              out.begin() + static_cast<std::ptrdiff_t>(n_samples));
  }
  return Signal(std::move(out), s.sample_rate());
}

Signal decimate(const Signal& s, std::size_t factor, const FilterKernel& anti_alias) {
  if (factor == 0) throw InvalidArgument("decimation factor must be at least 1");
  const std::vector<double> filtered = apply(anti_alias, s.samples());
  std::vector<double> out;
  out.reserve(filtered.size() / factor + 1);
  for (std::size_t i = 0; i < filtered.size(); i += factor) out.push_back(filtered[i]);
  return Signal(std::move(out), s.sample_rate() / static_cast<double>(factor));
}

}  // namespace cinf
