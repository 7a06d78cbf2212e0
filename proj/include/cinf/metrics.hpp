#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "cinf/filters.hpp"
#include "cinf/signal.hpp"

namespace cinf {

inline constexpr double kSnrCapDb = 200.0;

struct Band {
  double low = 0.0;   // Hz; 0 selects a lowpass band filter
  double high = 0.0;  // Hz

  friend bool operator==(const Band&, const Band&) = default;
};

struct PsdEstimate {
  std::vector<double> frequencies;  // Hz, one-sided grid
  std::vector<double> densities;    // power per Hz
  std::size_t segment_length = 0;
  double overlap_fraction = 0.0;
  std::string window = "hann";

  double bin_width() const noexcept;
  /// Integral of the density over [f_lo, f_hi] (whole bins).
  double band_power(double f_lo, double f_hi) const;
};

struct SnrReport {
  double snr_db = 0.0;
  double signal_power = 0.0;
  double noise_power = 0.0;
  Band band;
  long lag = 0;  // samples the processed signal trails the reference by
};

struct SnrOptions {
  std::size_t max_lag = 0;         // alignment search window, +/- samples
  std::size_t settle = 0;          // leading samples excluded after filtering
  std::size_t band_filter_taps = 255;
  double kaiser_beta = 8.0;
};

double mean(const Signal& s);
double variance(const Signal& s);
double rms(const Signal& s);
double peak_abs(const Signal& s);

/// Hann-windowed, mean-detrended, averaged periodogram (one-sided density).
PsdEstimate psd_welch(const Signal& s, std::size_t segment_length, double overlap_fraction);

/// Standardised fourth moment (Gaussian -> 3). Needs >= 4 samples and
/// nonzero variance.
double kurtosis(const Signal& s);

/// Both inputs filtered to `band`; the processed signal is aligned to the
/// reference by the cross-correlation peak within +/- max_lag, then
/// noise = processed - reference. SNR is capped at kSnrCapDb.
SnrReport baseband_snr(const Signal& processed, const Signal& clean_reference, Band band,
                       const SnrOptions& options = {});

/// B log2(1 + 10^(snr_db/10)) bits per second.
double shannon_capacity(double snr_db, double bandwidth);

/// max|x| / rms.
double crest_factor(const Signal& s);

/// Linear least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

struct Histogram {
  double low = 0.0;
  double high = 0.0;
  std::vector<std::size_t> counts;
};

Histogram histogram(const Signal& s, std::size_t bins);

void write_psd_csv(const PsdEstimate& psd, std::ostream& out);
void write_histogram_csv(const Histogram& h, std::ostream& out);

}  // namespace cinf
