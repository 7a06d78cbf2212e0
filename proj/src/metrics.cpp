#include "cinf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "cinf/fft.hpp"
#include "cinf/simd/kernels.hpp"

namespace cinf {

double PsdEstimate::bin_width() const noexcept {
  return frequencies.size() < 2 ? 0.0 : frequencies[1] - frequencies[0];
}

double PsdEstimate::band_power(double f_lo, double f_hi) const {
  double acc = 0.0;
  for (std::size_t k = 0; k < frequencies.size(); ++k)
    if (frequencies[k] >= f_lo && frequencies[k] <= f_hi) acc += densities[k];
  return acc * bin_width();
}

double mean(const Signal& s) {
  if (s.empty()) throw InvalidArgument("mean of an empty signal");
  return simd::active().sum(s.samples().data(), s.size()) / static_cast<double>(s.size());
}

double variance(const Signal& s) {
  const double m = mean(s);
  return simd::active().central_moments(s.samples().data(), s.size(), m).m2 / static_cast<double>(s.size());
}

double rms(const Signal& s) {
  if (s.empty()) throw InvalidArgument("rms of an empty signal");
  const double* p = s.samples().data();
  return std::sqrt(simd::active().dot(p, p, s.size()) / static_cast<double>(s.size()));
}

double peak_abs(const Signal& s) { return simd::active().max_abs(s.samples().data(), s.size()); }

PsdEstimate psd_welch(const Signal& s, std::size_t segment_length, double overlap_fraction) {
  if (segment_length < 2) throw InvalidArgument("Welch segment length must be at least 2");
  if (segment_length > s.size()) throw InvalidArgument("Welch segment longer than the signal");
  if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0)) throw InvalidArgument("overlap must lie in [0, 1)");

  const std::size_t n = segment_length;
  const double fs = s.sample_rate();
  std::vector<double> window(n);
  double wss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
    wss += window[i] * window[i];
  }
  const std::size_t hop = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(static_cast<double>(n) * (1.0 - overlap_fraction))));

  PsdEstimate psd;
  psd.segment_length = n;
  psd.overlap_fraction = overlap_fraction;
  const std::size_t bins = n / 2 + 1;
  psd.frequencies.resize(bins);
  psd.densities.assign(bins, 0.0);
  for (std::size_t k = 0; k < bins; ++k) psd.frequencies[k] = fs * static_cast<double>(k) / static_cast<double>(n);

  RealFft fft(n);
  std::vector<double> seg(n);
  std::size_t count = 0;
  for (std::size_t start = 0; start + n <= s.size(); start += hop) {
    const auto x = s.samples().subspan(start, n);
    const double m = simd::active().sum(x.data(), n) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) seg[i] = (x[i] - m) * window[i];
    const auto spec = fft.forward(seg);
    for (std::size_t k = 0; k < bins; ++k) psd.densities[k] += std::norm(spec[k]);
    ++count;
  }
  const double norm = 1.0 / (fs * wss * static_cast<double>(count));
  for (std::size_t k = 0; k < bins; ++k) {
    const bool edge = k == 0 || (n % 2 == 0 && k == bins - 1);
    psd.densities[k] *= norm * (edge ? 1.0 : 2.0);
  }
  return psd;
}

double kurtosis(const Signal& s) {
  if (s.size() < 4) throw InvalidArgument("kurtosis needs at least 4 samples");
  const double m = mean(s);
  const simd::Moments mo = simd::active().central_moments(s.samples().data(), s.size(), m);
  const double n = static_cast<double>(s.size());
  const double m2 = mo.m2 / n;
  if (!(m2 > 0.0)) throw InvalidArgument("kurtosis of a zero-variance signal");
  return (mo.m4 / n) / (m2 * m2);
}

SnrReport baseband_snr(const Signal& processed, const Signal& clean_reference, Band band, const SnrOptions& options) {
  require_compatible(processed, clean_reference, "baseband_snr");
  const double fs = processed.sample_rate();
  if (!(band.high > band.low) || !(band.low >= 0.0) || !(band.high < fs / 2.0))
    throw InvalidArgument("band must satisfy 0 <= low < high < rate/2");

  const FilterKernel filter =
      band.low == 0.0 ? design_windowed_sinc_lowpass(band.high, fs, options.band_filter_taps, options.kaiser_beta)
                      : design_windowed_sinc_bandpass(band.low, band.high, fs, options.band_filter_taps, options.kaiser_beta);
  const std::vector<double> p = apply(filter, processed.samples());
  const std::vector<double> r = apply(filter, clean_reference.samples());
  const std::size_t n = p.size();
  const std::size_t settle = std::max(options.settle, options.band_filter_taps);
  const auto& k = simd::active();

  long lag = 0;
  if (options.max_lag > 0) {
    const long w = static_cast<long>(options.max_lag) + 1;
    double best = -std::numeric_limits<double>::infinity();
    for (long l = -w; l <= w; ++l) {
      // sum_n p[n] r[n - l] over n with both indices >= settle.
      const std::size_t n0 = settle + static_cast<std::size_t>(std::max(l, 0L));
      const std::size_t r0 = n0 - static_cast<std::size_t>(l);
      if (n0 >= n || r0 >= n) continue;
      const std::size_t len = std::min(n - n0, n - r0);
      const double c = k.dot(p.data() + n0, r.data() + r0, len);
      if (c > best) {
        best = c;
        lag = l;
      }
    }
    if (std::labs(lag) > static_cast<long>(options.max_lag))
      throw AlignmentError("baseband_snr: correlation peak outside the +/-" + std::to_string(options.max_lag) +
                           " sample search window");
  }

  const std::size_t n0 = settle + static_cast<std::size_t>(std::max(lag, 0L));
  const std::size_t r0 = n0 - static_cast<std::size_t>(lag);
  if (n0 >= n || r0 >= n) throw InvalidArgument("baseband_snr: signal shorter than the settle period");
  const std::size_t len = std::min(n - n0, n - r0);
  std::vector<double> diff(len);
  k.sub(p.data() + n0, r.data() + r0, diff.data(), len);

  SnrReport rep;
  rep.band = band;
  rep.lag = lag;
  rep.signal_power = k.dot(r.data() + r0, r.data() + r0, len) / static_cast<double>(len);
  rep.noise_power = k.dot(diff.data(), diff.data(), len) / static_cast<double>(len);
  if (rep.noise_power <= 0.0) {
    rep.snr_db = kSnrCapDb;
  } else {
    rep.snr_db = std::min(kSnrCapDb, 10.0 * std::log10(rep.signal_power / rep.noise_power));
  }
  return rep;
}

double shannon_capacity(double snr_db, double bandwidth) {
  if (!(bandwidth > 0.0)) throw InvalidArgument("bandwidth must be positive");
  if (std::isinf(snr_db) && snr_db < 0.0) return 0.0;
  return bandwidth * std::log2(1.0 + std::pow(10.0, snr_db / 10.0));
}

double crest_factor(const Signal& s) {
  if (s.empty()) throw InvalidArgument("crest factor of an empty signal");
  const double r = rms(s);
  if (!(r > 0.0)) throw InvalidArgument("crest factor of an all-zero signal");
  return peak_abs(s) / r;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("slope fit needs matching series of >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw InvalidArgument("log-log fit needs positive values");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Histogram histogram(const Signal& s, std::size_t bins) {
  if (bins == 0) throw InvalidArgument("histogram needs at least one bin");
  Histogram h;
  h.counts.assign(bins, 0);
  if (s.empty()) return h;
  const auto [lo, hi] = std::minmax_element(s.samples().begin(), s.samples().end());
  h.low = *lo;
  h.high = *hi;
  const double width = (h.high - h.low) / static_cast<double>(bins);
  for (double v : s.samples()) {
    std::size_t b = width > 0.0 ? static_cast<std::size_t>((v - h.low) / width) : 0;
    h.counts[std::min(b, bins - 1)]++;
  }
  return h;
}

void write_psd_csv(const PsdEstimate& psd, std::ostream& out) {
  out << "frequency_hz,density\n";
  out.precision(12);
  for (std::size_t k = 0; k < psd.frequencies.size(); ++k) out << psd.frequencies[k] << ',' << psd.densities[k] << '\n';
}

void write_histogram_csv(const Histogram& h, std::ostream& out) {
  out << "bin_low,bin_high,count\n";
  out.precision(12);
  const double width = h.counts.empty() ? 0.0 : (h.high - h.low) / static_cast<double>(h.counts.size());
  for (std::size_t b = 0; b < h.counts.size(); ++b)
    out << h.low + width * static_cast<double>(b) << ',' << h.low + width * static_cast<double>(b + 1) << ','
        << h.counts[b] << '\n';
}

}  // namespace cinf
