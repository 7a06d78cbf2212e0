#pragma once

// Seeded waveform and noise synthesis. Every generator is a pure function of
// its arguments: identical inputs give bit-identical output.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "cinf/filters.hpp"
#include "cinf/signal.hpp"

namespace cinf {

struct ChirpSpec {
  double f_start = 0.0;  // Hz
  double f_end = 0.0;    // Hz
  double duration = 0.0; // s
  double amplitude = 1.0;
};

struct OfdmSpec {
  std::size_t n_subcarriers = 64;  // power of two (FFT size)
  std::size_t symbol_count = 1;
  int constellation_order = 4;     // 4, 16 or 64 point square QAM
  double active_fraction = 1.0;    // of the N/2 - 1 usable positive bins
  std::size_t first_subcarrier = 1;
  std::size_t cyclic_prefix = 0;
  std::uint64_t seed = 0;
};

enum class AmplitudeLaw { fixed, exponential, pareto };

AmplitudeLaw amplitude_law_from_string(std::string_view name);
std::string_view to_string(AmplitudeLaw law);

struct ImpulsiveNoiseSpec {
  double arrival_rate = 1.0;  // events per second
  AmplitudeLaw law = AmplitudeLaw::fixed;
  double amplitude = 1.0;     // fixed value, exponential mean, or Pareto scale
  double tail_index = 2.5;    // Pareto only; must exceed 1
  bool bipolar = true;        // random sign per event
  FilterKernel pulse_shape = FilterKernel::identity();
  std::uint64_t seed = 0;
};

struct GaussianNoiseSpec {
  double sigma = 1.0;
  std::uint64_t seed = 0;
};

struct ImpulseEvent {
  std::size_t index = 0;
  double amplitude = 0.0;
};

/// Number of samples covering `duration` seconds at `rate`.
std::size_t sample_count(double duration, double rate);

Signal gen_tone(double frequency, double amplitude, double phase, double rate, double duration);

/// Constant-envelope chirp whose instantaneous frequency moves linearly
/// from f_start to f_end. Frequencies must lie in (0, rate/2).
Signal gen_linear_chirp(const ChirpSpec& spec, double rate);

/// Real OFDM symbols from conjugate-symmetric subcarrier loading, scaled to
/// unit expected mean square. Active bins form a contiguous block starting
/// at first_subcarrier.
Signal gen_ofdm_burst(const OfdmSpec& spec, double rate);

/// Edges (Hz) of the band occupied by the active subcarriers.
std::pair<double, double> ofdm_band(const OfdmSpec& spec, double rate);

/// Poisson arrivals quantised to the nearest sample, with drawn amplitudes.
std::vector<ImpulseEvent> draw_impulse_events(const ImpulsiveNoiseSpec& spec, double rate, double duration);

/// Event train (coincident events add) convolved with spec.pulse_shape.
Signal gen_impulsive_noise(const ImpulsiveNoiseSpec& spec, double rate, double duration);

Signal gen_gaussian_noise(const GaussianNoiseSpec& spec, double rate, double duration);

/// Pass `s` through an allpass kernel; rejects kernels that are not allpass.
Signal disperse_impulse_to_chirp(const Signal& s, const FilterKernel& dispersion);

/// Convolve an event train with a (typically 1st or 2nd order) response.
Signal morph_event_train(const Signal& events, const FilterKernel& response);

}  // namespace cinf
