#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cinf/filters.hpp"
#include "cinf/generators.hpp"
#include "cinf/metrics.hpp"

using namespace cinf;

namespace {

Signal randn(std::size_t n, unsigned seed, double rate = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return Signal(std::move(v), rate);
}

Signal impulse(std::size_t n, double rate = 1.0) {
  std::vector<double> v(n, 0.0);
  v[0] = 1.0;
  return Signal(std::move(v), rate);
}

double max_abs_diff(const Signal& a, const Signal& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("first-order lowpass") {
  const double fs = 1000.0;
  const FilterKernel k = design_first_order_lowpass(50.0, fs);
  CHECK(magnitude(k, 0.0, fs) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(magnitude(k, 50.0, fs) == doctest::Approx(std::sqrt(0.5)).epsilon(0.02));
  CHECK_THROWS_AS(design_first_order_lowpass(500.0, fs), InvalidArgument);
  CHECK_THROWS_AS(design_first_order_lowpass(0.0, fs), InvalidArgument);
}

TEST_CASE("first-order lowpass group delay at DC is a/(1-a)") {
  const double fs = 1000.0;
  const FilterKernel k = design_first_order_lowpass(20.0, fs);
  // Oracle: pole from the impulse response ratio h[1]/h[0].
  const Signal h = apply(k, impulse(4, fs));
  const double a = h[1] / h[0];
  CHECK(group_delay(k, 0.0, fs) == doctest::Approx(a / (1.0 - a)).epsilon(1e-6));
}

TEST_CASE("Bessel-like lowpass") {
  const double fs = 10000.0;
  for (int order = 2; order <= 8; ++order) {
    CAPTURE(order);
    const FilterKernel k = design_bessel_like_lowpass(500.0, order, fs);
    CHECK(magnitude(k, 0.0, fs) == doctest::Approx(1.0).epsilon(1e-9));
    // Group-delay ripple over the lower half of the passband.
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i <= 50; ++i) {
      const double gd = group_delay(k, 250.0 * i / 50.0, fs);
      lo = std::min(lo, gd);
      hi = std::max(hi, gd);
    }
    CHECK((hi - lo) < 0.05 * mean_group_delay(k, 0.0, 250.0, fs));
    // Step response overshoot.
    const Signal step = apply(k, Signal(std::vector<double>(2000, 1.0), fs));
    double peak = 0.0;
    for (double v : step.samples()) peak = std::max(peak, v);
    CHECK(peak < 1.01);
    // Stability: impulse response decays.
    const Signal h = apply(k, impulse(4000, fs));
    CHECK(std::abs(h[3999]) < 1e-9);
  }
  CHECK_THROWS_AS(design_bessel_like_lowpass(500.0, 1, fs), InvalidArgument);
  CHECK_THROWS_AS(design_bessel_like_lowpass(500.0, 9, fs), InvalidArgument);
}

TEST_CASE("Bessel order 2 passes an in-band tone within 1 dB") {
  const double fs = 10000.0;
  const FilterKernel k = design_bessel_like_lowpass(1000.0, 2, fs);
  const Signal y = apply(k, gen_tone(200.0, 1.0, 0.0, fs, 1.0));
  const double amp = peak_abs(y.slice(2000, 8000));
  CHECK(std::abs(20.0 * std::log10(amp)) < 1.0);
}

TEST_CASE("complementary pair reconstructs the delayed input") {
  const double fs = 1e5;
  const ComplementaryPair p = design_complementary_pair(1000.0, 5000.0, fs, 255);
  CHECK(p.shared_delay == 127);
  const Signal s = randn(20000, 5, fs);
  const Signal sum = add(apply(p.bandpass, s), apply(p.bandstop, s));
  CHECK(max_abs_diff(sum, delay(s, p.shared_delay)) < 1e-12);
  CHECK(magnitude(p.bandpass, 3000.0, fs) >= 0.95);
  CHECK(magnitude(p.bandpass, 10000.0, fs) <= 0.05);
  CHECK_THROWS_AS(design_complementary_pair(5000.0, 1000.0, fs, 255), InvalidArgument);
  CHECK_THROWS_AS(design_complementary_pair(1000.0, 5000.0, fs, 256), InvalidArgument);
  CHECK_THROWS_AS(design_complementary_pair(1000.0, 60000.0, fs, 255), InvalidArgument);
}

TEST_CASE("apply: identity, impulse response, linearity") {
  const Signal s = randn(300, 6);
  CHECK(apply(FilterKernel::identity(), s) == s);
  const FilterKernel k = FilterKernel::fir({0.5, -0.25, 0.125, 2.0});
  const Signal h = apply(k, impulse(6));
  CHECK(h == Signal({0.5, -0.25, 0.125, 2.0, 0.0, 0.0}, 1.0));

  const FilterKernel b = design_bessel_like_lowpass(0.05, 4, 1.0);
  const Signal x = randn(500, 7), y = randn(500, 8);
  const Signal lhs = apply(b, add(scale(x, 2.0), scale(y, -3.0)));
  const Signal rhs = add(scale(apply(b, x), 2.0), scale(apply(b, y), -3.0));
  CHECK(max_abs_diff(lhs, rhs) < 1e-12);
  CHECK(apply(k, Signal({}, 1.0)).empty());
}

TEST_CASE("forward-backward filtering equals correlation with the tap autocorrelation") {
  // Forward then time-reversed application gives |H|^2 with zero phase.
  const FilterKernel k = design_windowed_sinc_lowpass(0.1, 1.0, 31);
  const std::size_t n = 256;
  const Signal x = randn(n, 9);
  std::vector<double> padded(x.samples().begin(), x.samples().end());
  padded.resize(n + 64, 0.0);
  std::vector<double> fwd = apply(k, std::span<const double>(padded));
  std::reverse(fwd.begin(), fwd.end());
  std::vector<double> both = apply(k, std::span<const double>(fwd));
  std::reverse(both.begin(), both.end());
  // Oracle: direct correlation with the autocorrelation of the taps.
  const auto t = k.taps();
  const long m = static_cast<long>(t.size());
  std::vector<double> r(2 * m - 1, 0.0);
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j) r[i - j + m - 1] += t[i] * t[j];
  for (std::size_t i = 64; i < n - 64; ++i) {
    double acc = 0.0;
    for (long l = -(m - 1); l <= m - 1; ++l) {
      const long idx = static_cast<long>(i) + l;
      if (idx >= 0 && idx < static_cast<long>(n)) acc += r[l + m - 1] * x[idx];
    }
    CHECK(both[i] == doctest::Approx(acc).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("group delay of linear-phase FIR and identity") {
  const FilterKernel k = design_windowed_sinc_lowpass(0.1, 1.0, 101);
  for (double f : {0.0, 0.05, 0.2, 0.4}) CHECK(group_delay(k, f, 1.0) == 50.0);
  CHECK(group_delay(FilterKernel::identity(), 0.1, 1.0) == 0.0);
  CHECK(k.linear_phase());
}

TEST_CASE("moving-average cascade") {
  const FilterKernel k = design_moving_average_cascade(4, 2);
  CHECK(k.taps().size() == 7);
  double s = 0.0;
  for (double t : k.taps()) s += t;
  CHECK(s == doctest::Approx(1.0));
  CHECK(k.nominal_group_delay() == 3.0);
}

TEST_CASE("dispersive allpass") {
  const FilterKernel a = design_dispersive_allpass(32, -0.6);
  CHECK(is_allpass(a));
  CHECK_FALSE(is_allpass(design_first_order_lowpass(0.1, 1.0)));
  CHECK(group_delay(a, 0.0, 1.0) > group_delay(a, 0.4, 1.0));
}

TEST_CASE("cascade of FIR kernels convolves taps") {
  const FilterKernel a = FilterKernel::fir({1.0, 1.0});
  const FilterKernel b = FilterKernel::fir({1.0, -1.0});
  const FilterKernel c = cascade(a, b);
  CHECK(std::vector<double>(c.taps().begin(), c.taps().end()) == std::vector<double>{1.0, 0.0, -1.0});
  CHECK_THROWS_AS(cascade(a, design_first_order_lowpass(0.1, 1.0)), InvalidArgument);
}

TEST_CASE("recursive kernels reject unstable sections") {
  CHECK_THROWS_AS(FilterKernel::recursive({Biquad{1.0, 0.0, 0.0, -1.0, 0.0}}, 0.0), InvalidArgument);
}
