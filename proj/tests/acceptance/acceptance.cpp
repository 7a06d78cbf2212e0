// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "cinf/caf.hpp"
#include "cinf/experiments.hpp"
#include "cinf/filters.hpp"
#include "cinf/generators.hpp"
#include "cinf/metrics.hpp"
#include "cinf/nonlinear.hpp"

using namespace cinf;
using nlohmann::json;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = budget_s <= 0.0 || dt < budget_s;
  const bool ok = o.passed && in_time;
  if (!ok) ++failures;
  std::printf("%s %2d %s (%.2f s%s) %s\n", ok ? "PASS" : "FAIL", id, name, dt,
              in_time ? "" : ", over budget", o.detail.c_str());
  std::fflush(stdout);
}

std::string num(double v) {
  char b[64];
  std::snprintf(b, sizeof b, "%.6g", v);
  return b;
}

// Every hard check whose name starts with one of the prefixes must exist and pass.
Outcome checks_pass(const ExperimentReport& r, const std::vector<std::string>& prefixes) {
  Outcome o{true, ""};
  for (const auto& p : prefixes) {
    bool found = false;
    for (const auto& c : r.checks) {
      if (c.name.rfind(p, 0) != 0) continue;
      found = true;
      if (!c.passed) o.passed = false;
      o.detail += "[" + c.name + ": " + (c.passed ? "ok" : "failed") + (c.detail.empty() ? "" : " " + c.detail) + "] ";
    }
    if (!found) {
      o.passed = false;
      o.detail += "[missing check '" + p + "'] ";
    }
  }
  return o;
}

Signal uniform_stream(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return Signal(std::move(v), 1.0);
}

Signal gaussian_stream(std::size_t n, unsigned seed, double rate = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return Signal(std::move(v), rate);
}

// RMS difference between a fixed-gain QTF and the trailing-window sample
// quantile, evaluated every `stride` samples after `settle`.
double qtf_rms_error(const Signal& s, double q, double mu, std::size_t window, std::size_t settle,
                     std::size_t stride) {
  QtfState st{q, mu, s[0]};
  std::vector<double> buf(window);
  double acc = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double est = qtf_step(st, s[i]);
    if (i + 1 < settle || (i + 1) % stride != 0) continue;
    const auto first = s.samples().begin() + static_cast<std::ptrdiff_t>(i + 1 - window);
    std::copy(first, first + static_cast<std::ptrdiff_t>(window), buf.begin());
    const auto k = static_cast<std::size_t>(q * static_cast<double>(window));
    std::nth_element(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(k), buf.end());
    const double d = est - buf[k];
    acc += d * d;
    ++n;
  }
  return std::sqrt(acc / static_cast<double>(n));
}

}  // namespace

int main() {
  criterion(1, "feedback ADiC with an infinite range is an exact allpass", 1.0, [] {
    const Signal g = gaussian_stream(200000, 11);
    std::vector<double> v(g.samples().begin(), g.samples().end());
    v[1000] = 1e6;
    v[2000] = -1e-300;
    v[3000] = -3e5;
    const Signal x(std::move(v), 1e5);
    const NonlinearRun r = run_adic(x, AdicState::with_fixed_range(1e-4, BlankingRange::wide()));
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mismatches += r.output[i] != x[i];
    return Outcome{mismatches == 0 && r.stats.blanked == 0, "mismatches " + std::to_string(mismatches)};
  });

  criterion(2, "complementary pair reconstructs the delayed input", 1.0, [] {
    const double fs = 1e5;
    const Signal x = gaussian_stream(100000, 12, fs);
    const ComplementaryPair p = design_complementary_pair(1000.0, 5000.0, fs, 1023);
    const Signal sum = add(apply(p.bandpass, x), apply(p.bandstop, x));
    const Signal ref = delay(x, p.shared_delay);
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(sum[i] - ref[i]));
    const double tol = 1e-12 * rms(x);
    return Outcome{m < tol, "max abs error " + num(m) + " (limit " + num(tol) + ")"};
  });

  criterion(3, "QTF tracks the sliding-window quantile within 0.02 IQR", 10.0, [] {
    constexpr std::size_t n = 1000000, window = 20000, settle = 200000, stride = 500;
    constexpr double mu = 1e-4;
    const Signal u = uniform_stream(n, 13);
    const Signal g = gaussian_stream(n, 14);
    const double iqr_u = 0.5;
    const double iqr_g = 2.0 * 0.6744897501960817;
    Outcome o{true, ""};
    for (double q : {0.25, 0.5, 0.75}) {
      const double eu = qtf_rms_error(u, q, mu, window, settle, stride) / iqr_u;
      const double eg = qtf_rms_error(g, q, mu * iqr_g, window, settle, stride) / iqr_g;
      o.passed = o.passed && eu <= 0.02 && eg <= 0.02;
      o.detail += "q=" + num(q) + " uniform " + num(eu) + " gaussian " + num(eg) + "; ";
    }
    return o;
  });

  criterion(4, "tukey_fences and blank reproduce hand-computed values", 0.0, [] {
    bool ok = true;
    ok = ok && tukey_fences(1.0, 3.0, 1.5) == BlankingRange{-2.0, 6.0};
    ok = ok && tukey_fences(2.5, 2.5, 7.0) == BlankingRange{2.5, 2.5};
    ok = ok && tukey_fences(-0.3, 4.1, 0.0) == BlankingRange{-0.3, 4.1};
    const BlankingRange r{-1.0, 1.0};
    ok = ok && blank(0.5, r) == 0.5 && blank(2.0, r) == 0.0 && blank(-1.0, r) == -1.0;
    ok = ok && blank(0.0, tukey_fences(3.0, 1.0, 0.1)) == 0.0;
    return Outcome{ok, ""};
  });

  ExperimentReport bandwidth;
  criterion(5, "bandwidth sweep slopes (sigma 0.5, isolated peak 1.0)", 30.0, [&] {
    bandwidth = run_bandwidth_sweep(BandwidthSweepConfig{});
    return checks_pass(bandwidth, {"gaussian sigma slope", "isolated pulse peak slope"});
  });

  criterion(6, "pileup kurtosis >= 10 wide, 3 +/- 0.5 narrow", 30.0, [&] {
    if (bandwidth.checks.empty()) bandwidth = run_bandwidth_sweep(BandwidthSweepConfig{});
    return checks_pass(bandwidth, {"pileup kurtosis"});
  });

  ExperimentReport chirp, capacity;
  criterion(7, "no harm at every zero-outlier sweep point", 120.0, [&] {
    chirp = run_caf_chirp_demo(ChirpScenarioConfig{});
    capacity = run_capacity_sweep(CapacitySweepConfig{});
    Outcome a = checks_pass(chirp, {"no-harm"});
    const Outcome b = checks_pass(capacity, {"no-harm"});
    return Outcome{a.passed && b.passed, a.detail + b.detail};
  });

  criterion(8, "CAF SNR gain > 0 and capacity gain >= 0", 120.0, [&] {
    Outcome a = checks_pass(chirp, {"CAF baseband SNR exceeds linear"});
    const Outcome b = checks_pass(capacity, {"capacity gain >= 0"});
    return Outcome{a.passed && b.passed, a.detail + b.detail};
  });

  criterion(9, "delta-sigma contrast: raw kurtosis 1, narrowband 3 vs > 6", 30.0, [] {
    const ExperimentReport r = run_delta_sigma_demo(DeltaSigmaDemoConfig{});
    Outcome o = checks_pass(r, {"gaussian: raw", "impulsive: raw", "gaussian drive: narrowband",
                                "impulsive drive: narrowband"});
    const double threshold = r.config.at("impulsive_kurtosis_threshold").get<double>();
    if (threshold < 6.0) {
      o.passed = false;
      o.detail += "threshold below 6";
    }
    return o;
  });

  criterion(10, "clipping distortion kurtosis and CAF residual", 30.0, [] {
    ClippingDemoConfig c;
    c.clip_fraction = 0.7;
    const ExperimentReport r = run_clipping_demo(c);
    return checks_pass(r, {"distortion kurtosis exceeds", "CAF restoration does not increase"});
  });

  criterion(11, "reports regenerate exactly from embedded config and seed", 0.0, [&] {
    Outcome o{true, ""};
    const std::vector<std::pair<std::string, const ExperimentReport*>> done = {
        {"bandwidth-sweep", &bandwidth}, {"caf-chirp", &chirp}, {"capacity-sweep", &capacity}};
    for (const auto& [name, rep] : done) {
      const ExperimentReport again = run_named(name, rep->to_json(), std::nullopt);
      const bool same = again.metrics() == rep->metrics();
      o.passed = o.passed && same;
      o.detail += name + (same ? " identical; " : " DIFFERS; ");
    }
    for (const char* name : {"delta-sigma", "clipping", "cucaracha"}) {
      const ExperimentReport a = run_named(name, json(nullptr), 4242);
      const ExperimentReport b = run_named(name, json::parse(a.to_json().dump()), std::nullopt);
      const bool same = a.metrics() == b.metrics();
      o.passed = o.passed && same;
      o.detail += std::string(name) + (same ? " identical; " : " DIFFERS; ");
    }
    return o;
  });

  std::printf("%s: %d failing criteria\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
