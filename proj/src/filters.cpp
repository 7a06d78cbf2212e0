#include "cinf/filters.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "cinf/simd/kernels.hpp"

namespace cinf {
namespace {

constexpr double kPi = std::numbers::pi;

bool stable(const Biquad& s) { return std::fabs(s.a2) < 1.0 && std::fabs(s.a1) < 1.0 + s.a2; }

bool symmetric_taps(std::span<const double> h) {
  if (h.empty()) return false;
  double peak = 0.0;
  for (double v : h) peak = std::max(peak, std::fabs(v));
  const double tol = 1e-12 * peak;
  bool sym = true, anti = true;
  const std::size_t n = h.size();
  for (std::size_t k = 0; k < n / 2 + 1 && (sym || anti); ++k) {
    const double a = h[k], b = h[n - 1 - k];
    if (std::fabs(a - b) > tol) sym = false;
    if (std::fabs(a + b) > tol) anti = false;
  }
  return sym || anti;
}

// Re( sum k p_k e^{-jwk} / sum p_k e^{-jwk} ): group delay of a polynomial in z^-1.
template <typename Coeffs>
double poly_group_delay(const Coeffs& p, double omega) {
  std::complex<double> num{0.0, 0.0}, den{0.0, 0.0};
  for (std::size_t k = 0; k < p.size(); ++k) {
    const std::complex<double> e = std::polar(1.0, -omega * static_cast<double>(k));
    den += p[k] * e;
    num += static_cast<double>(k) * p[k] * e;
  }
  return (num / den).real();
}

void check_rate(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw InvalidArgument("sample rate must be positive");
}

void check_odd_taps(std::size_t n_taps) {
  if (n_taps == 0 || n_taps % 2 == 0) throw InvalidArgument("n_taps must be a positive odd integer");
}

std::vector<double> kaiser_half(std::size_t n_taps, double beta) {
  // Window values for k = 0..D; mirrored by callers so taps are exactly symmetric.
  const std::size_t d = (n_taps - 1) / 2;
  std::vector<double> w(d + 1, 1.0);
  if (n_taps == 1) return w;
  const double norm = std::cyl_bessel_i(0.0, beta);
  for (std::size_t k = 0; k <= d; ++k) {
    const double r = (static_cast<double>(k) - static_cast<double>(d)) / static_cast<double>(d);
    w[k] = std::cyl_bessel_i(0.0, beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / norm;
  }
  return w;
}

// 2 f sinc(2 f m) for normalised cutoff f (cycles/sample), m = k - D.
double ideal_lowpass(double f, double m) {
  if (m == 0.0) return 2.0 * f;
  return std::sin(2.0 * kPi * f * m) / (kPi * m);
}

std::vector<double> mirror(const std::vector<double>& half) {
  const std::size_t d = half.size() - 1;
  std::vector<double> taps(2 * d + 1);
  for (std::size_t k = 0; k <= d; ++k) {
    taps[k] = half[k];
    taps[2 * d - k] = half[k];
  }
  return taps;
}

// Roots of sum c_k s^k by Durand-Kerner iteration (degree <= 8 here).
std::vector<std::complex<double>> poly_roots(const std::vector<double>& c) {
  const std::size_t n = c.size() - 1;
  std::vector<std::complex<double>> z(n);
  const std::complex<double> seed{0.4, 0.9};
  for (std::size_t i = 0; i < n; ++i) z[i] = std::pow(seed, static_cast<double>(i));
  auto eval = [&](std::complex<double> s) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * s + c[k] / c[n];
    return acc;
  };
  for (int iter = 0; iter < 2000; ++iter) {
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::complex<double> den{1.0, 0.0};
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) den *= (z[i] - z[j]);
      const std::complex<double> step = eval(z[i]) / den;
      z[i] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-15) break;
  }
  return z;
}

}  // namespace

FilterKernel FilterKernel::identity() { return fir({1.0}, DesignInfo{"identity", {}}); }

FilterKernel FilterKernel::fir(std::vector<double> taps, DesignInfo info) {
  if (taps.empty()) throw InvalidArgument("FIR kernel needs at least one tap");
  for (double t : taps)
    if (!std::isfinite(t)) throw InvalidArgument("FIR taps must be finite");
  FilterKernel k;
  k.form_ = KernelForm::fir_taps;
  k.taps_ = std::move(taps);
  k.linear_phase_ = symmetric_taps(k.taps_);
  k.info_ = std::move(info);
  if (k.linear_phase_) {
    k.nominal_delay_ = static_cast<double>(k.taps_.size() - 1) / 2.0;
  } else {
    k.nominal_delay_ = mean_group_delay(k, 0.0, 0.25, 1.0);
  }
  return k;
}

FilterKernel FilterKernel::recursive(std::vector<Biquad> sections, double nominal_group_delay,
                                     DesignInfo info) {
  if (sections.empty()) throw InvalidArgument("recursive kernel needs at least one section");
  for (const Biquad& s : sections) {
    for (double v : {s.b0, s.b1, s.b2, s.a1, s.a2})
      if (!std::isfinite(v)) throw InvalidArgument("section coefficients must be finite");
    if (!stable(s)) throw InvalidArgument("unstable recursive section (pole on or outside unit circle)");
  }
  FilterKernel k;
  k.form_ = KernelForm::recursive_sections;
  k.sections_ = std::move(sections);
  k.nominal_delay_ = nominal_group_delay;
  k.info_ = std::move(info);
  return k;
}

std::complex<double> FilterKernel::response(double omega) const {
  if (form_ == KernelForm::fir_taps) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = 0; k < taps_.size(); ++k)
      acc += taps_[k] * std::polar(1.0, -omega * static_cast<double>(k));
    return acc;
  }
  const std::complex<double> z1 = std::polar(1.0, -omega);
  const std::complex<double> z2 = z1 * z1;
  std::complex<double> h{1.0, 0.0};
  for (const Biquad& s : sections_) h *= (s.b0 + s.b1 * z1 + s.b2 * z2) / (1.0 + s.a1 * z1 + s.a2 * z2);
  return h;
}

FilterKernel design_first_order_lowpass(double corner, double rate) {
  check_rate(rate);
  if (!(corner > 0.0) || !(corner < rate / 2.0))
    throw InvalidArgument("first-order corner must lie in (0, rate/2)");
  // |(1-a)/(1-a e^{-jw})|^2 = 1/2  =>  a^2 - 2a(2 - cos w) + 1 = 0, smaller root.
  const double c = 2.0 - std::cos(2.0 * kPi * corner / rate);
  const double a = c - std::sqrt(c * c - 1.0);
  Biquad s{1.0 - a, 0.0, 0.0, -a, 0.0};
  return FilterKernel::recursive({s}, a / (1.0 - a),
                                 DesignInfo{"first_order_lowpass", {{"corner", corner}, {"rate", rate}, {"pole", a}}});
}

FilterKernel design_bessel_like_lowpass(double corner, int order, double rate) {
  check_rate(rate);
  if (order < 2 || order > 8) throw InvalidArgument("Bessel order must be in 2..8");
  if (!(corner > 0.0) || !(corner < rate / 2.0))
    throw InvalidArgument("Bessel corner must lie in (0, rate/2)");

  // Reverse Bessel polynomial, delay-normalised: c_k = (2n-k)! / (2^(n-k) k! (n-k)!).
  const int n = order;
  std::vector<double> c(n + 1);
  for (int k = 0; k <= n; ++k) {
    c[k] = std::exp(std::lgamma(2.0 * n - k + 1) - (n - k) * std::log(2.0) - std::lgamma(k + 1.0) -
                    std::lgamma(n - k + 1.0));
  }
  auto mag2 = [&](double w) {
    std::complex<double> acc{0.0, 0.0};
    for (int k = n; k >= 0; --k) acc = acc * std::complex<double>(0.0, w) + c[k];
    return (c[0] * c[0]) / std::norm(acc);
  };
  double lo = 0.0, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mag2(mid) > 0.5 ? lo : hi) = mid;
  }
  const double w3 = 0.5 * (lo + hi);
  const double wc = 2.0 * kPi * corner;

  std::vector<std::complex<double>> poles = poly_roots(c);
  std::sort(poles.begin(), poles.end(),
            [](auto a, auto b) { return a.imag() > b.imag(); });

  std::vector<Biquad> sections;
  std::vector<bool> used(poles.size(), false);
  for (std::size_t i = 0; i < poles.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const std::complex<double> z = std::exp(poles[i] / w3 * wc / rate);
    if (std::fabs(poles[i].imag()) < 1e-9) {
      sections.push_back({1.0 - z.real(), 0.0, 0.0, -z.real(), 0.0});
      continue;
    }
    for (std::size_t j = i + 1; j < poles.size(); ++j) {
      if (!used[j] && std::abs(poles[j] - std::conj(poles[i])) < 1e-6) {
        used[j] = true;
        break;
      }
    }
    const double a1 = -2.0 * z.real();
    const double a2 = std::norm(z);
    sections.push_back({1.0 + a1 + a2, 0.0, 0.0, a1, a2});
  }
  DesignInfo info{"bessel_like_lowpass", {{"corner", corner}, {"order", static_cast<double>(order)}, {"rate", rate}}};
  FilterKernel provisional = FilterKernel::recursive(sections, 0.0, info);
  const double nominal = mean_group_delay(provisional, 0.0, corner, rate);
  return FilterKernel::recursive(std::move(sections), nominal, std::move(info));
}

FilterKernel design_windowed_sinc_lowpass(double cutoff, double rate, std::size_t n_taps,
                                          double kaiser_beta) {
  check_rate(rate);
  check_odd_taps(n_taps);
  if (!(cutoff > 0.0) || !(cutoff < rate / 2.0)) throw InvalidArgument("cutoff must lie in (0, rate/2)");
  const std::size_t d = (n_taps - 1) / 2;
  const std::vector<double> w = kaiser_half(n_taps, kaiser_beta);
  std::vector<double> half(d + 1);
  double dc = 0.0;
  for (std::size_t k = 0; k <= d; ++k) {
    half[k] = w[k] * ideal_lowpass(cutoff / rate, static_cast<double>(k) - static_cast<double>(d));
    dc += (k == d ? 1.0 : 2.0) * half[k];
  }
  for (double& v : half) v /= dc;
  return FilterKernel::fir(mirror(half), DesignInfo{"windowed_sinc_lowpass",
                                                    {{"cutoff", cutoff},
                                                     {"rate", rate},
                                                     {"n_taps", static_cast<double>(n_taps)},
                                                     {"kaiser_beta", kaiser_beta}}});
}

FilterKernel design_windowed_sinc_bandpass(double low_edge, double high_edge, double rate,
                                           std::size_t n_taps, double kaiser_beta) {
  check_rate(rate);
  check_odd_taps(n_taps);
  if (!(low_edge > 0.0) || !(low_edge < high_edge) || !(high_edge < rate / 2.0))
    throw InvalidArgument("band edges must satisfy 0 < low < high < rate/2");
  const std::size_t d = (n_taps - 1) / 2;
  const std::vector<double> w = kaiser_half(n_taps, kaiser_beta);
  std::vector<double> half(d + 1);
  for (std::size_t k = 0; k <= d; ++k) {
    const double m = static_cast<double>(k) - static_cast<double>(d);
    half[k] = w[k] * (ideal_lowpass(high_edge / rate, m) - ideal_lowpass(low_edge / rate, m));
  }
  return FilterKernel::fir(mirror(half), DesignInfo{"windowed_sinc_bandpass",
                                                    {{"low_edge", low_edge},
                                                     {"high_edge", high_edge},
                                                     {"rate", rate},
                                                     {"n_taps", static_cast<double>(n_taps)},
                                                     {"kaiser_beta", kaiser_beta}}});
}

ComplementaryPair design_complementary_pair(double low_edge, double high_edge, double rate,
                                            std::size_t n_taps, double kaiser_beta) {
  FilterKernel bp = design_windowed_sinc_bandpass(low_edge, high_edge, rate, n_taps, kaiser_beta);
  const std::size_t d = (n_taps - 1) / 2;
  std::vector<double> stop(bp.taps().begin(), bp.taps().end());
  for (double& v : stop) v = -v;
  stop[d] = 1.0 - bp.taps()[d];
  DesignInfo info = bp.design();
  info.method = "complementary_bandstop";
  FilterKernel bs = FilterKernel::fir(std::move(stop), std::move(info));
  return ComplementaryPair{std::move(bp), std::move(bs), d, low_edge, high_edge, rate};
}

FilterKernel design_moving_average_cascade(std::size_t length, std::size_t stages) {
  if (length == 0 || stages == 0) throw InvalidArgument("moving average needs length and stages >= 1");
  std::vector<double> taps{1.0};
  const std::vector<double> box(length, 1.0 / static_cast<double>(length));
  for (std::size_t s = 0; s < stages; ++s) {
    std::vector<double> next(taps.size() + length - 1, 0.0);
    for (std::size_t i = 0; i < taps.size(); ++i)
      for (std::size_t j = 0; j < length; ++j) next[i + j] += taps[i] * box[j];
    taps = std::move(next);
  }
  return FilterKernel::fir(std::move(taps), DesignInfo{"moving_average_cascade",
                                                       {{"length", static_cast<double>(length)},
                                                        {"stages", static_cast<double>(stages)}}});
}

FilterKernel design_dispersive_allpass(std::size_t n_sections, double coefficient) {
  if (n_sections == 0) throw InvalidArgument("dispersive allpass needs at least one section");
  if (!(std::fabs(coefficient) < 1.0)) throw InvalidArgument("allpass coefficient must satisfy |c| < 1");
  const Biquad s{coefficient, 1.0, 0.0, coefficient, 0.0};
  std::vector<Biquad> sections(n_sections, s);
  // DC group delay of (c + z^-1)/(1 + c z^-1) is (1 - c)/(1 + c) per section.
  const double dc_delay = static_cast<double>(n_sections) * (1.0 - coefficient) / (1.0 + coefficient);
  return FilterKernel::recursive(std::move(sections), dc_delay,
                                 DesignInfo{"dispersive_allpass",
                                            {{"sections", static_cast<double>(n_sections)},
                                             {"coefficient", coefficient}}});
}

FilterKernel cascade(const FilterKernel& first, const FilterKernel& second) {
  if (first.form() != second.form()) throw InvalidArgument("cascade requires kernels of the same form");
  DesignInfo info{"cascade", {}};
  if (first.form() == KernelForm::fir_taps) {
    const auto a = first.taps();
    const auto b = second.taps();
    std::vector<double> taps(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) taps[i + j] += a[i] * b[j];
    return FilterKernel::fir(std::move(taps), std::move(info));
  }
  std::vector<Biquad> sections(first.sections().begin(), first.sections().end());
  sections.insert(sections.end(), second.sections().begin(), second.sections().end());
  return FilterKernel::recursive(std::move(sections),
                                 first.nominal_group_delay() + second.nominal_group_delay(), std::move(info));
}

bool is_allpass(const FilterKernel& kernel, double tolerance) {
  constexpr int kGrid = 1024;
  for (int i = 0; i <= kGrid; ++i) {
    const double omega = kPi * static_cast<double>(i) / kGrid;
    if (std::fabs(std::abs(kernel.response(omega)) - 1.0) > tolerance) return false;
  }
  return true;
}

std::vector<double> apply(const FilterKernel& kernel, std::span<const double> samples) {
  const std::size_t n = samples.size();
  std::vector<double> out(n);
  if (n == 0) return out;
  if (kernel.form() == KernelForm::fir_taps) {
    const auto taps = kernel.taps();
    std::vector<double> padded(taps.size() - 1 + n, 0.0);
    std::copy(samples.begin(), samples.end(), padded.begin() + static_cast<std::ptrdiff_t>(taps.size() - 1));
    simd::active().fir(taps.data(), taps.size(), padded.data(), out.data(), n);
    return out;
  }
  std::copy(samples.begin(), samples.end(), out.begin());
  for (const Biquad& s : kernel.sections()) {
    // Transposed direct form II.
    double z1 = 0.0, z2 = 0.0;
    for (double& v : out) {
      const double x = v;
      const double y = s.b0 * x + z1;
      z1 = s.b1 * x - s.a1 * y + z2;
      z2 = s.b2 * x - s.a2 * y;
      v = y;
    }
  }
  return out;
}

Signal apply(const FilterKernel& kernel, const Signal& s) {
  return Signal(apply(kernel, s.samples()), s.sample_rate());
}

double group_delay(const FilterKernel& kernel, double freq, double rate) {
  check_rate(rate);
  if (!(freq >= 0.0) || !(freq < rate / 2.0)) throw InvalidArgument("frequency must lie in [0, rate/2)");
  if (kernel.linear_phase()) return kernel.nominal_group_delay();
  const double omega = 2.0 * kPi * freq / rate;
  if (kernel.form() == KernelForm::fir_taps) return poly_group_delay(kernel.taps(), omega);
  double total = 0.0;
  for (const Biquad& s : kernel.sections()) {
    const std::array<double, 3> b{s.b0, s.b1, s.b2};
    const std::array<double, 3> a{1.0, s.a1, s.a2};
    total += poly_group_delay(b, omega) - poly_group_delay(a, omega);
  }
  return total;
}

double mean_group_delay(const FilterKernel& kernel, double f_lo, double f_hi, double rate,
                        std::size_t points) {
  double acc = 0.0;
  const std::size_t n = std::max<std::size_t>(points, 2);
  for (std::size_t i = 0; i < n; ++i) {
    double f = f_lo + (f_hi - f_lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    f = std::min(f, std::nextafter(rate / 2.0, 0.0));
    acc += group_delay(kernel, f, rate);
  }
  return acc / static_cast<double>(n);
}

double magnitude(const FilterKernel& kernel, double freq, double rate) {
  check_rate(rate);
  return std::abs(kernel.response(2.0 * kPi * freq / rate));
}

}  // namespace cinf
