#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "cinf/fft.hpp"
#include "cinf/filters.hpp"
#include "cinf/generators.hpp"
#include "cinf/metrics.hpp"

using namespace cinf;

namespace {

// Frequency (Hz) of the largest rfft bin of a Hann-windowed segment.
double peak_frequency(const Signal& s, std::size_t first, std::size_t n) {
  std::vector<double> seg(n);
  for (std::size_t i = 0; i < n; ++i)
    seg[i] = s[first + i] * (0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n)));
  const auto spec = rfft(seg);
  std::size_t best = 0;
  for (std::size_t k = 1; k < spec.size(); ++k)
    if (std::abs(spec[k]) > std::abs(spec[best])) best = k;
  return s.sample_rate() * static_cast<double>(best) / static_cast<double>(n);
}

}  // namespace

TEST_CASE("sample_count") {
  CHECK(sample_count(1.0, 100.0) == 100);
  CHECK(sample_count(0.0, 100.0) == 0);
  CHECK_THROWS_AS(sample_count(-1.0, 100.0), InvalidArgument);
  CHECK_THROWS_AS(sample_count(1.0, 0.0), InvalidArgument);
}

TEST_CASE("degenerate chirps") {
  const double fs = 1000.0;
  const Signal c = gen_linear_chirp({50.0, 50.0, 1.0, 0.8}, fs);
  const Signal t = gen_tone(50.0, 0.8, 0.0, fs, 1.0);
  REQUIRE(c.size() == t.size());
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == doctest::Approx(t[i]).epsilon(1e-9).scale(1.0));
  CHECK(peak_abs(gen_linear_chirp({50.0, 200.0, 1.0, 0.0}, fs)) == 0.0);
  CHECK_THROWS_AS(gen_linear_chirp({50.0, 600.0, 1.0, 1.0}, fs), InvalidArgument);
}

TEST_CASE("chirp ridge endpoints") {
  const double fs = 8192.0;
  const Signal c = gen_linear_chirp({0.05 * fs, 0.2 * fs, 4.0, 1.0}, fs);
  const std::size_t n = 256;
  const double bin = fs / static_cast<double>(n);
  // Short segments at the ends: the ridge frequency moves < 1 bin across each.
  CHECK(std::abs(peak_frequency(c, 0, n) - 0.05 * fs) <= bin);
  CHECK(std::abs(peak_frequency(c, c.size() - n, n) - 0.2 * fs) <= bin);
  CHECK(crest_factor(c) == doctest::Approx(std::sqrt(2.0)).epsilon(0.01));
}

TEST_CASE("OFDM burst") {
  const double fs = 1.0;
  OfdmSpec one;
  one.n_subcarriers = 64;
  one.active_fraction = 1.0 / 31.0;  // one active bin
  one.first_subcarrier = 4;
  one.seed = 3;
  const Signal s = gen_ofdm_burst(one, fs);
  CHECK(s.size() == 64);
  // A single carrier: energy all in bin 4.
  const auto spec = rfft(s.samples());
  for (std::size_t k = 0; k < spec.size(); ++k)
    if (k != 4) CHECK(std::abs(spec[k]) < 1e-9);

  OfdmSpec full;
  full.n_subcarriers = 256;
  full.constellation_order = 4;
  full.seed = 11;
  CHECK(gen_ofdm_burst(full, fs) == gen_ofdm_burst(full, fs));
  CHECK(crest_factor(gen_ofdm_burst(full, fs)) > 3.0);
  full.seed = 12;
  CHECK_FALSE(gen_ofdm_burst(full, fs) == gen_ofdm_burst(OfdmSpec{full.n_subcarriers, 1, 4, 1.0, 1, 0, 11}, fs));

  OfdmSpec bad;
  bad.n_subcarriers = 100;
  CHECK_THROWS_AS(gen_ofdm_burst(bad, fs), InvalidArgument);
  bad.n_subcarriers = 64;
  bad.constellation_order = 8;
  CHECK_THROWS_AS(gen_ofdm_burst(bad, fs), InvalidArgument);
}

TEST_CASE("OFDM band edges bracket the active bins") {
  OfdmSpec s;
  s.n_subcarriers = 1024;
  s.active_fraction = 0.1;
  const auto [lo, hi] = ofdm_band(s, 1e5);
  CHECK(lo > 0.0);
  CHECK(hi > lo);
  CHECK(hi < 0.1 * 0.5e5 + 1e5 / 1024.0 * 2.0);
}

TEST_CASE("impulsive noise construction") {
  const double fs = 1000.0;
  ImpulsiveNoiseSpec spec;
  spec.arrival_rate = 5.0;
  spec.amplitude = 2.5;
  spec.bipolar = false;
  spec.seed = 4;
  const Signal s = gen_impulsive_noise(spec, fs, 10.0);
  std::size_t nz = 0;
  for (double v : s.samples())
    if (v != 0.0) {
      ++nz;
      CHECK(v == 2.5);
    }
  CHECK(nz > 0);
  CHECK(gen_impulsive_noise(spec, fs, 10.0) == s);

  spec.arrival_rate = 1e-6;
  CHECK(peak_abs(gen_impulsive_noise(spec, fs, 0.01)) == 0.0);
}

TEST_CASE("impulsive event counts follow Poisson statistics") {
  const double lambda = 50.0, dur = 2.0;
  double total = 0.0;
  const int seeds = 200;
  for (int k = 0; k < seeds; ++k) {
    ImpulsiveNoiseSpec spec;
    spec.arrival_rate = lambda;
    spec.seed = static_cast<std::uint64_t>(k);
    const auto ev = draw_impulse_events(spec, 1e4, dur);
    const double n = static_cast<double>(ev.size());
    CHECK(std::abs(n - lambda * dur) <= 5.0 * std::sqrt(lambda * dur));
    total += n;
  }
  // Mean over seeds: standard error sqrt(lambda dur / seeds).
  CHECK(std::abs(total / seeds - lambda * dur) <= 3.0 * std::sqrt(lambda * dur / seeds));
}

TEST_CASE("impulsive noise is zero between finite pulse supports") {
  ImpulsiveNoiseSpec spec;
  spec.arrival_rate = 2.0;
  spec.pulse_shape = FilterKernel::fir({1.0, 0.5, 0.25});
  spec.seed = 8;
  const double fs = 1000.0;
  const Signal s = gen_impulsive_noise(spec, fs, 5.0);
  std::vector<bool> support(s.size(), false);
  for (const auto& e : draw_impulse_events(spec, fs, 5.0))
    for (std::size_t j = 0; j < 3 && e.index + j < s.size(); ++j) support[e.index + j] = true;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!support[i]) CHECK(s[i] == 0.0);
}

TEST_CASE("amplitude laws") {
  CHECK(amplitude_law_from_string("pareto") == AmplitudeLaw::pareto);
  CHECK(to_string(AmplitudeLaw::exponential) == "exponential");
  CHECK_THROWS_AS(amplitude_law_from_string("cauchy"), InvalidArgument);
  ImpulsiveNoiseSpec spec;
  spec.law = AmplitudeLaw::exponential;
  spec.arrival_rate = 2000.0;
  spec.bipolar = false;
  spec.seed = 1;
  double sum = 0.0;
  const auto ev = draw_impulse_events(spec, 1e6, 10.0);
  for (const auto& e : ev) sum += e.amplitude;
  CHECK(sum / static_cast<double>(ev.size()) == doctest::Approx(1.0).epsilon(0.03));
  spec.law = AmplitudeLaw::pareto;
  spec.tail_index = 1.0;
  CHECK_THROWS_AS(draw_impulse_events(spec, 1e6, 1.0), InvalidArgument);
}

TEST_CASE("gaussian noise") {
  CHECK(peak_abs(gen_gaussian_noise({0.0, 1}, 1.0, 100.0)) == 0.0);
  const Signal g = gen_gaussian_noise({1.0, 42}, 1.0, 1e6);
  CHECK(variance(g) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(std::abs(kurtosis(g) - 3.0) < 0.05);
  CHECK(gen_gaussian_noise({1.0, 42}, 1.0, 100.0) == gen_gaussian_noise({1.0, 42}, 1.0, 100.0));
}

TEST_CASE("dispersion turns an impulse into a chirp with the same magnitude spectrum") {
  std::vector<double> v(4096, 0.0);
  v[0] = 1.0;
  const Signal imp(v, 1.0);
  CHECK(disperse_impulse_to_chirp(imp, FilterKernel::identity()) == imp);
  const FilterKernel a = design_dispersive_allpass(64, -0.7);
  const Signal c = disperse_impulse_to_chirp(imp, a);
  const auto x = rfft(imp.samples());
  const auto y = rfft(c.samples());
  for (std::size_t k = 0; k < x.size(); ++k) CHECK(std::abs(y[k]) == doctest::Approx(std::abs(x[k])).epsilon(0.01));
  double e = 0.0;
  for (double s : c.samples()) e += s * s;
  CHECK(e == doctest::Approx(1.0).epsilon(0.001));
  CHECK(crest_factor(c) < crest_factor(imp));
  CHECK_THROWS_AS(disperse_impulse_to_chirp(imp, design_first_order_lowpass(0.1, 1.0)), InvalidArgument);
}

TEST_CASE("event-train morphing") {
  ImpulsiveNoiseSpec spec;
  spec.arrival_rate = 20.0;
  spec.seed = 5;
  const Signal ev = gen_impulsive_noise(spec, 1000.0, 4.0);
  CHECK(morph_event_train(ev, FilterKernel::identity()) == ev);

  // First-order lowpass followed by its FIR inverse (1 - a z^-1)/(1 - a).
  const FilterKernel lp = design_first_order_lowpass(30.0, 1000.0);
  const Signal h = apply(lp, Signal({1.0, 0.0}, 1000.0));
  const double a = h[1] / h[0];
  const FilterKernel inv = FilterKernel::fir({1.0 / (1.0 - a), -a / (1.0 - a)});
  const Signal back = morph_event_train(morph_event_train(ev, lp), inv);
  CHECK(rms(subtract(back, ev)) < 1e-6);

  // Differentiator on a step train yields spikes.
  std::vector<double> steps(4000);
  for (std::size_t i = 0; i < steps.size(); ++i) steps[i] = (i / 500) % 2 ? 1.0 : -1.0;
  const Signal st(steps, 1000.0);
  const Signal d = morph_event_train(st, FilterKernel::fir({1.0, -1.0}));
  CHECK(kurtosis(d) > kurtosis(st));
}
