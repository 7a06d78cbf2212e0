#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cinf/caf.hpp"
#include "cinf/generators.hpp"
#include "cinf/metrics.hpp"

using namespace cinf;

namespace {

double max_abs_diff(const Signal& a, const Signal& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double tau_for(double corner) { return 1.0 / (2.0 * std::numbers::pi * corner); }

CafConfig small_caf(double fs) {
  AdicParams p;
  p.tau = tau_for(5000.0);
  p.fences.beta = 4.0;
  return chirp_caf_config(5000.0, fs, 255, p);
}

// Oversampled 1-bit front end: 10 kHz band at OSR 64.
struct FrontEndSetup {
  double fs = 1.28e6;
  double band = 1e4;
  std::size_t osr = 64;

  FrontEndChain chain(bool modulator, bool caf_enabled) const {
    FrontEndChain c;
    if (modulator) {
      c.clip_level = 0.9;
      c.modulator = DeltaSigmaState{};
    }
    c.pre_caf = design_moving_average_cascade(16, 3);
    AdicParams p;
    p.tau = tau_for(band);
    p.fences.beta = 4.0;
    c.caf.pair = design_complementary_pair(band / 5.0, band, fs, 1023);
    c.caf.adic = p;
    c.caf.enabled = caf_enabled;
    c.decimation_factor = osr;
    c.decimation_kernel = design_windowed_sinc_lowpass(band, fs, 1023);
    return c;
  }

  double snr(const Signal& out, const Signal& ref) const {
    SnrOptions o;
    o.max_lag = 2;
    o.settle = 100;
    o.band_filter_taps = 63;
    return baseband_snr(out, ref, {0.0, 0.95 * band}, o).snr_db;
  }
};

}  // namespace

TEST_CASE("CAF with a never-tripping ADiC is a pure delay") {
  const double fs = 1e5;
  CafConfig c = small_caf(fs);
  c.adic.wide_range = true;
  const Signal x = gen_gaussian_noise({1.0, 3}, fs, 0.5);
  const CafResult r = caf_run(x, c, true);
  CHECK(rms(subtract(r.output, delay(x, c.pair.shared_delay))) < 1e-12);
  CHECK(r.stats.blanked == 0);
  REQUIRE(r.stages.has_value());
  CHECK(r.stages->adic == r.stages->bandstop);
  CHECK(add(r.stages->bandpass, r.stages->adic) == r.output);
}

TEST_CASE("disabled CAF is the linear path with the same delay") {
  const double fs = 1e5;
  CafConfig c = small_caf(fs);
  c.enabled = false;
  ImpulsiveNoiseSpec is;
  is.arrival_rate = 200.0;
  is.amplitude = 50.0;
  const Signal x = add(gen_gaussian_noise({1.0, 4}, fs, 0.5), gen_impulsive_noise(is, fs, 0.5));
  CHECK(max_abs_diff(caf_process(x, c), delay(x, c.pair.shared_delay)) < 1e-12);
}

TEST_CASE("CAF reduces error against the clean chirp") {
  const double fs = 1e5;
  const CafConfig c = small_caf(fs);
  CafConfig lin = c;
  lin.enabled = false;
  const Signal chirp = gen_linear_chirp({100.0, 5000.0, 1.0, 1.0}, fs);
  ImpulsiveNoiseSpec is;
  is.arrival_rate = 100.0;
  is.amplitude = 20.0;
  is.seed = 9;
  const Signal x = add(add(chirp, gen_gaussian_noise({0.5, 8}, fs, 1.0)), gen_impulsive_noise(is, fs, 1.0));
  const Signal ref = delay(chirp, c.pair.shared_delay);
  const std::size_t n0 = 3000;
  const double e_caf = rms(subtract(caf_process(x, c), ref).slice(n0, x.size()));
  const double e_lin = rms(subtract(caf_process(x, lin), ref).slice(n0, x.size()));
  CHECK(e_caf < e_lin);
}

TEST_CASE("CAF config validation") {
  const double fs = 1e5;
  CafConfig c = small_caf(fs);
  CHECK_THROWS_AS(caf_run(Signal::zeros(10, 2e5), c), MismatchError);
  c.adic.tau = 1e-7;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = small_caf(fs);
  c.pair.bandstop = design_windowed_sinc_lowpass(1000.0, fs, 255);
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("delta-sigma modulator") {
  for (int order : {1, 2}) {
    CAPTURE(order);
    DeltaSigmaState st;
    st.order = order;
    const Signal y = delta_sigma_modulate(Signal(std::vector<double>(100000, 0.5), 1.0), st);
    for (double v : y.samples()) CHECK((v == 1.0 || v == -1.0));
    CHECK(std::abs(mean(y) - 0.5) <= 0.01);
    CHECK(st.saturations == 0);

    DeltaSigmaState z;
    z.order = order;
    const Signal y0 = delta_sigma_modulate(Signal::zeros(20000, 1.0), z);
    CHECK(std::abs(mean(y0)) < 1e-3);
  }
  DeltaSigmaState st;
  delta_sigma_modulate(Signal({0.5, 1.5, -2.0, 0.1}, 1.0), st);
  CHECK(st.saturations == 2);
  DeltaSigmaState bad;
  bad.order = 3;
  CHECK_THROWS_AS(delta_sigma_modulate(Signal::zeros(4, 1.0), bad), InvalidArgument);
}

TEST_CASE("delta-sigma integrators stay bounded for full-scale-bounded input") {
  DeltaSigmaState st;
  const Signal x = hard_clip(gen_gaussian_noise({0.6, 2}, 1.0, 200000.0), 0.95);
  delta_sigma_modulate(x, st);
  CHECK(std::abs(st.integrators[0]) < 10.0);
  CHECK(std::abs(st.integrators[1]) < 100.0);
}

TEST_CASE("AGC") {
  AgcState frozen;
  frozen.adaptation_rate = 0.0;
  frozen.validate();
  for (int i = 0; i < 1000; ++i) agc_step(frozen, 3.0);
  CHECK(frozen.gain == 1.0);

  AgcState bad;
  bad.clip_level = 0.1;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);

  // Per-sample change of log gain never exceeds eta.
  AgcState a;
  const Signal x = gen_gaussian_noise({5.0, 1}, 1.0, 20000.0);
  for (double v : x.samples()) {
    const double before = std::log(a.gain);
    agc_step(a, v);
    CHECK(std::abs(std::log(a.gain) - before) <= a.adaptation_rate * (1.0 + 1e-12));
  }
}

TEST_CASE("AGC steady-state gain is scale-equivariant") {
  const Signal x = gen_gaussian_noise({1.0, 6}, 1.0, 400000.0);
  auto mean_log_gain = [&](double c) {
    AgcState a;
    double acc = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      agc_step(a, c * x[i]);
      if (i >= x.size() / 2) {
        acc += std::log(a.gain);
        ++n;
      }
    }
    return acc / static_cast<double>(n);
  };
  const double g1 = std::exp(mean_log_gain(1.0));
  const double g2 = std::exp(mean_log_gain(2.0));
  CHECK(g2 == doctest::Approx(g1 / 2.0).epsilon(0.02));
}

TEST_CASE("AGC clips under 1% of a signal-only OFDM input") {
  OfdmSpec s;
  s.n_subcarriers = 4096;
  s.symbol_count = 100;
  s.active_fraction = 0.5;
  s.constellation_order = 16;
  s.seed = 2;
  const Signal x = scale(gen_ofdm_burst(s, 1.0), 7.0);
  AgcState a;
  std::size_t clipped = 0, n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double y = agc_step(a, x[i]);
    if (i >= x.size() / 2) {
      ++n;
      clipped += std::abs(y) > a.clip_level;
    }
  }
  CHECK(static_cast<double>(clipped) / static_cast<double>(n) < 0.01);
}

TEST_CASE("front end without modulator and with CAF disabled is filter + decimate") {
  const FrontEndSetup fe;
  const FrontEndChain c = fe.chain(false, false);
  const Signal x = gen_gaussian_noise({0.3, 1}, fe.fs, 0.05);
  const FrontEndResult r = digital_front_end(x, c);
  const Signal oracle =
      decimate(delay(apply(c.pre_caf, x), c.caf.pair.shared_delay), fe.osr, c.decimation_kernel);
  CHECK(r.baseband.sample_rate() == fe.fs / 64.0);
  CHECK(max_abs_diff(r.baseband, oracle) < 1e-12);
  CHECK(r.pre_decimation_delay == 23 + 511);  // 22.5 rounded, plus D
}

TEST_CASE("front end: clean tone SNR above 40 dB; CAF helps with impulses") {
  const FrontEndSetup fe;
  const double dur = 0.1;
  // Tone inside the bandpass branch [band/5, band].
  const Signal tone = gen_tone(fe.band / 4.1, 0.5, 0.3, fe.fs, dur);
  const Signal ref = digital_front_end(tone, fe.chain(false, false)).baseband;
  const FrontEndResult clean = digital_front_end(tone, fe.chain(true, true));
  CHECK(clean.saturations == 0);
  CHECK(fe.snr(clean.baseband, ref) > 40.0);

  ImpulsiveNoiseSpec is;
  is.arrival_rate = 200.0;
  is.amplitude = 3.0;
  is.pulse_shape = design_bessel_like_lowpass(1e5, 4, fe.fs);
  is.seed = 5;
  const Signal noisy = add(tone, gen_impulsive_noise(is, fe.fs, dur));
  const double on = fe.snr(digital_front_end(noisy, fe.chain(true, true)).baseband, ref);
  const double off = fe.snr(digital_front_end(noisy, fe.chain(true, false)).baseband, ref);
  CHECK(on > off);
}

TEST_CASE("front-end stage failures name the stage") {
  const FrontEndSetup fe;
  FrontEndChain c = fe.chain(true, true);
  c.caf.adic.tau = 1e-9;
  try {
    digital_front_end(Signal::zeros(1000, fe.fs), c);
    FAIL("expected StageError");
  } catch (const StageError& e) {
    CHECK(e.stage() == "caf");
  }
  c = fe.chain(true, true);
  c.modulator->order = 5;
  try {
    digital_front_end(Signal::zeros(1000, fe.fs), c);
    FAIL("expected StageError");
  } catch (const StageError& e) {
    CHECK(e.stage() == "delta-sigma");
  }
}
