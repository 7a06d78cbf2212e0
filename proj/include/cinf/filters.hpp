#pragma once

// Linear filter design and application.
//
// A FilterKernel is either a set of FIR taps or a cascade of second-order
// recursive sections. Kernels are immutable after design; apply() keeps its
// filter state per call, starting from zero.

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cinf/signal.hpp"

namespace cinf {

/// y = (b0 + b1 z^-1 + b2 z^-2) / (1 + a1 z^-1 + a2 z^-2) x
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;

  friend bool operator==(const Biquad&, const Biquad&) = default;
};

enum class KernelForm { fir_taps, recursive_sections };

/// How a kernel was produced; echoed in reports and kernel JSON.
struct DesignInfo {
  std::string method = "custom";
  std::map<std::string, double> parameters;

  friend bool operator==(const DesignInfo&, const DesignInfo&) = default;
};

class FilterKernel {
 public:
  /// Single unit tap: passes any signal through unchanged.
  static FilterKernel identity();

  /// Nominal delay defaults to (n-1)/2 for symmetric or antisymmetric taps
  /// and to the mean group delay over [0, rate/4) otherwise.
  static FilterKernel fir(std::vector<double> taps, DesignInfo info = {});

  /// Rejects sections with poles on or outside the unit circle.
  static FilterKernel recursive(std::vector<Biquad> sections, double nominal_group_delay,
                                DesignInfo info = {});

  KernelForm form() const noexcept { return form_; }
  std::span<const double> taps() const noexcept { return taps_; }
  std::span<const Biquad> sections() const noexcept { return sections_; }
  double nominal_group_delay() const noexcept { return nominal_delay_; }
  const DesignInfo& design() const noexcept { return info_; }

  /// True for FIR kernels whose taps are (anti)symmetric about the centre.
  bool linear_phase() const noexcept { return linear_phase_; }

  /// Frequency response at normalised angular frequency omega (rad/sample).
  std::complex<double> response(double omega) const;

  friend bool operator==(const FilterKernel&, const FilterKernel&) = default;

 private:
  FilterKernel() = default;

  KernelForm form_ = KernelForm::fir_taps;
  std::vector<double> taps_;
  std::vector<Biquad> sections_;
  double nominal_delay_ = 0.0;
  bool linear_phase_ = false;
  DesignInfo info_;
};

/// Tap-level complementary bandpass/bandstop pair: the two impulse responses
/// sum to a pure delay of shared_delay samples.
struct ComplementaryPair {
  FilterKernel bandpass = FilterKernel::identity();
  FilterKernel bandstop = FilterKernel::identity();
  std::size_t shared_delay = 0;
  double low_edge = 0.0;
  double high_edge = 0.0;
  double sample_rate = 0.0;
};

/// Single-pole lowpass y[n] = (1-a) x[n] + a y[n-1] with its -3 dB point at
/// `corner`. Requires 0 < corner < rate/2.
FilterKernel design_first_order_lowpass(double corner, double rate);

/// All-pole lowpass from the analog Bessel prototype (orders 2..8), with the
/// analog -3 dB point at `corner` and poles mapped by z = exp(s/rate).
FilterKernel design_bessel_like_lowpass(double corner, int order, double rate);

/// Kaiser-windowed sinc lowpass, unit DC gain. n_taps must be odd.
FilterKernel design_windowed_sinc_lowpass(double cutoff, double rate, std::size_t n_taps,
                                          double kaiser_beta = 8.0);

/// Kaiser-windowed sinc bandpass for [low_edge, high_edge]. n_taps must be odd.
FilterKernel design_windowed_sinc_bandpass(double low_edge, double high_edge, double rate,
                                           std::size_t n_taps, double kaiser_beta = 8.0);

/// Bandpass by windowed sinc; bandstop = delayed delta minus bandpass taps.
ComplementaryPair design_complementary_pair(double low_edge, double high_edge, double rate,
                                            std::size_t n_taps, double kaiser_beta = 8.0);

/// `stages` boxcars of `length` taps each, unit DC gain.
FilterKernel design_moving_average_cascade(std::size_t length, std::size_t stages);

/// Cascade of identical first-order allpass sections (c + z^-1)/(1 + c z^-1).
/// With -1 < c < 0 low frequencies are delayed more than high ones, so an
/// impulse is spread into a down-chirp.
FilterKernel design_dispersive_allpass(std::size_t n_sections, double coefficient);

/// FIR kernels compose by convolving taps; recursive kernels by concatenating
/// sections. Mixed forms are rejected.
FilterKernel cascade(const FilterKernel& first, const FilterKernel& second);

/// True when |H| stays within `tolerance` of 1 on a dense frequency grid.
bool is_allpass(const FilterKernel& kernel, double tolerance = 1e-6);

/// Causal filtering from zero initial state; length and rate preserved.
Signal apply(const FilterKernel& kernel, const Signal& s);

/// Same as apply() but on a raw sample buffer.
std::vector<double> apply(const FilterKernel& kernel, std::span<const double> samples);

/// -d(phase)/d(omega) in samples at `freq` hertz. Linear-phase FIR kernels
/// report their centre delay exactly.
double group_delay(const FilterKernel& kernel, double freq, double rate);

/// Mean of group_delay over `points` frequencies spanning [f_lo, f_hi].
double mean_group_delay(const FilterKernel& kernel, double f_lo, double f_hi, double rate,
                        std::size_t points = 64);

/// |H| at `freq` hertz.
double magnitude(const FilterKernel& kernel, double freq, double rate);

}  // namespace cinf
