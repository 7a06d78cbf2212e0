#include "cinf/generators.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>

#include "cinf/fft.hpp"

namespace cinf {
namespace {

constexpr double kPi = std::numbers::pi;

void check_rate(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw InvalidArgument("sample rate must be positive");
}

void check_duration(double duration) {
  if (!(duration >= 0.0) || !std::isfinite(duration)) throw InvalidArgument("duration must be non-negative");
}

double qam_level(std::uint64_t index, int per_axis) {
  return 2.0 * static_cast<double>(index) - static_cast<double>(per_axis - 1);
}

}  // namespace

AmplitudeLaw amplitude_law_from_string(std::string_view name) {
  if (name == "fixed") return AmplitudeLaw::fixed;
  if (name == "exponential") return AmplitudeLaw::exponential;
  if (name == "pareto" || name == "two-sided-pareto") return AmplitudeLaw::pareto;
  throw InvalidArgument("unknown amplitude distribution '" + std::string(name) + "'");
}

std::string_view to_string(AmplitudeLaw law) {
  switch (law) {
    case AmplitudeLaw::fixed: return "fixed";
    case AmplitudeLaw::exponential: return "exponential";
    case AmplitudeLaw::pareto: return "pareto";
  }
  return "fixed";
}

std::size_t sample_count(double duration, double rate) {
  check_rate(rate);
  check_duration(duration);
  return static_cast<std::size_t>(std::llround(duration * rate));
}

Signal gen_tone(double frequency, double amplitude, double phase, double rate, double duration) {
  const std::size_t n = sample_count(duration, rate);
  std::vector<double> x(n);
  const double w = 2.0 * kPi * frequency / rate;
  for (std::size_t i = 0; i < n; ++i) x[i] = amplitude * std::sin(w * static_cast<double>(i) + phase);
  return Signal(std::move(x), rate);
}

Signal gen_linear_chirp(const ChirpSpec& spec, double rate) {
  check_rate(rate);
  const double nyquist = rate / 2.0;
  if (!(spec.f_start > 0.0 && spec.f_start < nyquist && spec.f_end > 0.0 && spec.f_end < nyquist))
    throw InvalidArgument("chirp frequencies must lie in (0, rate/2)");
  if (!(spec.duration > 0.0)) throw InvalidArgument("chirp duration must be positive");
  const std::size_t n = sample_count(spec.duration, rate);
  const double sweep = (spec.f_end - spec.f_start) / spec.duration;  // Hz/s
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate;
    x[i] = spec.amplitude * std::sin(2.0 * kPi * (spec.f_start * t + 0.5 * sweep * t * t));
  }
  return Signal(std::move(x), rate);
}

namespace {

std::size_t ofdm_active_count(const OfdmSpec& spec) {
  const std::size_t usable = spec.n_subcarriers / 2 - 1;
  const auto n = static_cast<std::size_t>(std::llround(spec.active_fraction * static_cast<double>(usable)));
  return std::max<std::size_t>(1, std::min(n, usable));
}

void validate(const OfdmSpec& spec) {
  const std::size_t n = spec.n_subcarriers;
  if (n < 4 || (n & (n - 1)) != 0) throw InvalidArgument("n_subcarriers must be a power of two >= 4");
  if (spec.symbol_count == 0) throw InvalidArgument("symbol_count must be positive");
  if (spec.constellation_order != 4 && spec.constellation_order != 16 && spec.constellation_order != 64)
    throw InvalidArgument("constellation_order must be 4, 16 or 64");
  if (!(spec.active_fraction > 0.0 && spec.active_fraction <= 1.0))
    throw InvalidArgument("active_fraction must lie in (0, 1]");
  if (spec.first_subcarrier < 1 || spec.first_subcarrier + ofdm_active_count(spec) > n / 2)
    throw InvalidArgument("active subcarriers must fit strictly between DC and Nyquist");
  if (spec.cyclic_prefix > n) throw InvalidArgument("cyclic prefix longer than a symbol");
}

}  // namespace

std::pair<double, double> ofdm_band(const OfdmSpec& spec, double rate) {
  validate(spec);
  const double bin = rate / static_cast<double>(spec.n_subcarriers);
  const std::size_t first = spec.first_subcarrier;
  return {bin * static_cast<double>(first), bin * static_cast<double>(first + ofdm_active_count(spec) - 1)};
}

Signal gen_ofdm_burst(const OfdmSpec& spec, double rate) {
  check_rate(rate);
  validate(spec);
  const std::size_t n = spec.n_subcarriers;
  const std::size_t active = ofdm_active_count(spec);
  const int per_axis = spec.constellation_order == 4 ? 2 : (spec.constellation_order == 16 ? 4 : 8);
  const double qam_norm = std::sqrt(2.0 * (spec.constellation_order - 1) / 3.0);
  // irfft scales by 1/N; mean square of the result is 2*active/N^2 per unit symbol energy.
  const double gain = static_cast<double>(n) / std::sqrt(2.0 * static_cast<double>(active));

  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, static_cast<std::uint64_t>(per_axis - 1));
  RealFft fft(n);
  std::vector<double> out;
  out.reserve(spec.symbol_count * (n + spec.cyclic_prefix));
  std::vector<std::complex<double>> bins(n / 2 + 1);
  for (std::size_t s = 0; s < spec.symbol_count; ++s) {
    std::fill(bins.begin(), bins.end(), std::complex<double>{0.0, 0.0});
    for (std::size_t k = 0; k < active; ++k) {
      const double re = qam_level(pick(rng), per_axis) / qam_norm;
      const double im = qam_level(pick(rng), per_axis) / qam_norm;
      bins[spec.first_subcarrier + k] = {re, im};
    }
    std::vector<double> symbol = fft.inverse(bins);
    for (double& v : symbol) v *= gain;
    out.insert(out.end(), symbol.end() - static_cast<std::ptrdiff_t>(spec.cyclic_prefix), symbol.end());
    out.insert(out.end(), symbol.begin(), symbol.end());
  }
  return Signal(std::move(out), rate);
}

std::vector<ImpulseEvent> draw_impulse_events(const ImpulsiveNoiseSpec& spec, double rate, double duration) {
  const std::size_t n = sample_count(duration, rate);
  if (!(spec.arrival_rate > 0.0) || !std::isfinite(spec.arrival_rate))
    throw InvalidArgument("arrival rate must be positive");
  if (!(spec.amplitude >= 0.0) || !std::isfinite(spec.amplitude))
    throw InvalidArgument("impulse amplitude must be non-negative");
  if (spec.law == AmplitudeLaw::pareto && !(spec.tail_index > 1.0))
    throw InvalidArgument("Pareto tail index must exceed 1 for a finite mean amplitude");

  std::mt19937_64 rng(spec.seed);
  std::exponential_distribution<double> gap(spec.arrival_rate);
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);

  std::vector<ImpulseEvent> events;
  double t = gap(rng);
  while (t < duration) {
    const auto index = static_cast<std::size_t>(std::llround(t * rate));
    double a = spec.amplitude;
    if (spec.law == AmplitudeLaw::exponential) {
      a = spec.amplitude * expo(rng);
    } else if (spec.law == AmplitudeLaw::pareto) {
      a = spec.amplitude * std::pow(1.0 - unit(rng), -1.0 / spec.tail_index);
    }
    if (spec.bipolar && coin(rng)) a = -a;
    if (index < n) events.push_back({index, a});
    t += gap(rng);
  }
  return events;
}

Signal gen_impulsive_noise(const ImpulsiveNoiseSpec& spec, double rate, double duration) {
  const std::vector<ImpulseEvent> events = draw_impulse_events(spec, rate, duration);
  std::vector<double> train(sample_count(duration, rate), 0.0);
  for (const ImpulseEvent& e : events) train[e.index] += e.amplitude;
  return apply(spec.pulse_shape, Signal(std::move(train), rate));
}

Signal gen_gaussian_noise(const GaussianNoiseSpec& spec, double rate, double duration) {
  if (!(spec.sigma >= 0.0) || !std::isfinite(spec.sigma)) throw InvalidArgument("sigma must be non-negative");
  const std::size_t n = sample_count(duration, rate);
  std::vector<double> x(n, 0.0);
  if (spec.sigma > 0.0) {
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal(0.0, spec.sigma);
    for (double& v : x) v = normal(rng);
  }
  return Signal(std::move(x), rate);
}

Signal disperse_impulse_to_chirp(const Signal& s, const FilterKernel& dispersion) {
  if (!is_allpass(dispersion)) throw InvalidArgument("dispersion kernel is not allpass");
  return apply(dispersion, s);
}

Signal morph_event_train(const Signal& events, const FilterKernel& response) { return apply(response, events); }

}  // namespace cinf
