#include "cinf/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <future>
#include <numbers>
#include <set>
#include <sstream>

#include "cinf/io.hpp"
#include "cinf/metrics.hpp"

namespace cinf {

const char* const kVersion = "0.1.0";

using nlohmann::json;

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  // splitmix64 finaliser over (master, stream)
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// ---------------------------------------------------------------- reports

bool ExperimentReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed || !c.hard; });
}

json ExperimentReport::metrics() const {
  json cj = json::array();
  for (const Check& c : checks)
    cj.push_back({{"name", c.name}, {"passed", c.passed}, {"hard", c.hard}, {"detail", c.detail}});
  return {{"experiment", experiment}, {"config", config}, {"points", points}, {"summary", summary}, {"checks", cj}};
}

json ExperimentReport::to_json() const {
  json j = metrics();
  j["provenance"] = {{"version", version}, {"timestamp", timestamp}};
  j["seed"] = config.value("seed", json(nullptr));
  if (config.contains("scenario")) j["seed"] = config["scenario"].value("seed", json(nullptr));
  json files = json::array();
  for (const Artifact& a : artifacts) files.push_back({{"file", a.file}, {"description", a.description}});
  j["artifacts"] = files;
  j["passed"] = passed();
  return j;
}

json ExperimentReport::manifest() const {
  json plots = json::array();
  for (const Artifact& a : artifacts) {
    if (a.x.empty()) continue;
    plots.push_back({{"file", a.file}, {"title", a.description}, {"x", a.x}, {"y", a.y}});
  }
  return {{"experiment", experiment}, {"plots", plots}};
}

namespace {

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string table_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& columns) {
  std::ostringstream out;
  out.precision(12);
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c][r];
    out << '\n';
  }
  return out.str();
}

Artifact table(std::string file, std::string description, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
  return {std::move(file), std::move(description), header.front(),
          std::vector<std::string>(header.begin() + 1, header.end()), table_csv(header, columns)};
}

Artifact signal_dump(std::string file, std::string description, const Signal& s) {
  std::ostringstream out;
  write_csv(s, out);
  return {std::move(file), std::move(description), "", {}, out.str()};
}

Artifact histogram_artifact(std::string file, std::string description, const Signal& s, std::size_t bins) {
  std::ostringstream out;
  write_histogram_csv(histogram(s, bins), out);
  return {std::move(file), std::move(description), "bin_low", {"count"}, out.str()};
}

Check check(std::string name, bool ok, std::string detail, bool hard = true) {
  return {std::move(name), ok, hard, std::move(detail)};
}

std::string fmt(double v) {
  std::ostringstream o;
  o.precision(6);
  o << v;
  return o.str();
}

// Mean square of one impulse amplitude, in units of spec.amplitude^2.
double amplitude_second_moment(AmplitudeLaw law, double tail_index) {
  switch (law) {
    case AmplitudeLaw::fixed:
      return 1.0;
    case AmplitudeLaw::exponential:
      return 2.0;
    case AmplitudeLaw::pareto:
      if (!(tail_index > 2.0)) throw InvalidArgument("Pareto tail index must exceed 2 for finite impulsive power");
      return tail_index / (tail_index - 2.0);
  }
  return 1.0;
}

double tau_of(double corner) {
  if (!(corner > 0.0)) throw InvalidArgument("ADiC corner frequency must be positive");
  return 1.0 / (2.0 * std::numbers::pi * corner);
}

template <typename F>
auto parallel_map(std::size_t n, F f) {
  using R = decltype(f(std::size_t{0}));
  std::vector<std::future<R>> futures;
  futures.reserve(n);
  for (std::size_t i = 0; i < n; ++i) futures.push_back(std::async(std::launch::async, f, i));
  std::vector<R> out;
  out.reserve(n);
  for (auto& fu : futures) out.push_back(fu.get());
  return out;
}

double capacity_gain(const SnrReport& lin, const SnrReport& caf, double bandwidth) {
  const double c_lin = shannon_capacity(lin.snr_db, bandwidth);
  const double c_caf = shannon_capacity(caf.snr_db, bandwidth);
  return c_caf / c_lin - 1.0;
}

}  // namespace

// ------------------------------------------------------------ config JSON

namespace {

class Fields {
 public:
  Fields(const json& j, const char* what) : j_(j), what_(what) {
    if (!j.is_object()) throw ConfigError(std::string(what) + ": expected a JSON object");
  }

  template <typename T>
  Fields& get(const char* key, T& value) {
    const auto it = j_.find(key);
    if (it == j_.end()) return *this;
    used_.insert(key);
    try {
      value = it->template get<T>();
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(std::string(what_) + "." + key + ": " + e.what());
    }
    return *this;
  }

  void finish() const {
    for (const auto& item : j_.items())
      if (!used_.count(item.key())) throw ConfigError(std::string(what_) + ": unknown field '" + item.key() + "'");
  }

 private:
  const json& j_;
  const char* what_;
  std::set<std::string> used_;
};

}  // namespace

}  // namespace cinf

namespace nlohmann {
template <>
struct adl_serializer<cinf::AmplitudeLaw> {
  static void to_json(json& j, cinf::AmplitudeLaw law) { j = std::string(cinf::to_string(law)); }
  static void from_json(const json& j, cinf::AmplitudeLaw& law) {
    law = cinf::amplitude_law_from_string(j.get<std::string>());
  }
};
}  // namespace nlohmann

namespace cinf {

void to_json(json& j, const AdicConfig& c) {
  j = {{"corner", c.corner},
       {"beta", c.beta},
       {"gain_fraction", c.gain_fraction},
       {"scale_smoothing", c.scale_smoothing},
       {"initial_scale", c.initial_scale}};
}

void from_json(const json& j, AdicConfig& c) {
  Fields(j, "adic")
      .get("corner", c.corner)
      .get("beta", c.beta)
      .get("gain_fraction", c.gain_fraction)
      .get("scale_smoothing", c.scale_smoothing)
      .get("initial_scale", c.initial_scale)
      .finish();
}

AdicParams AdicConfig::params() const {
  AdicParams p;
  p.tau = tau_of(corner);
  p.fences.beta = beta;
  p.fences.gain_fraction = gain_fraction;
  p.fences.scale_smoothing = scale_smoothing;
  p.fences.initial_scale = initial_scale;
  p.fences.validate();
  return p;
}

void to_json(json& j, const BandwidthSweepConfig& c) {
  j = {{"seed", c.seed},
       {"sample_rate", c.sample_rate},
       {"duration", c.duration},
       {"bandwidths", c.bandwidths},
       {"filter_order", c.filter_order},
       {"gaussian_sigma", c.gaussian_sigma},
       {"pileup_rate", c.pileup_rate},
       {"pileup_amplitude", c.pileup_amplitude},
       {"isolated_rate", c.isolated_rate},
       {"isolated_duration", c.isolated_duration},
       {"settle_time", c.settle_time}};
}

void from_json(const json& j, BandwidthSweepConfig& c) {
  Fields(j, "bandwidth-sweep")
      .get("seed", c.seed)
      .get("sample_rate", c.sample_rate)
      .get("duration", c.duration)
      .get("bandwidths", c.bandwidths)
      .get("filter_order", c.filter_order)
      .get("gaussian_sigma", c.gaussian_sigma)
      .get("pileup_rate", c.pileup_rate)
      .get("pileup_amplitude", c.pileup_amplitude)
      .get("isolated_rate", c.isolated_rate)
      .get("isolated_duration", c.isolated_duration)
      .get("settle_time", c.settle_time)
      .finish();
}

void to_json(json& j, const ChirpScenarioConfig& c) {
  j = {{"seed", c.seed},
       {"sample_rate", c.sample_rate},
       {"duration", c.duration},
       {"f_start", c.f_start},
       {"f_end", c.f_end},
       {"amplitude", c.amplitude},
       {"front_end_corner", c.front_end_corner},
       {"front_end_order", c.front_end_order},
       {"n_taps", c.n_taps},
       {"kaiser_beta", c.kaiser_beta},
       {"adic", c.adic},
       {"thermal_snr_db", c.thermal_snr_db},
       {"outlier_to_thermal_ratio", c.outlier_to_thermal_ratio},
       {"impulse_rate", c.impulse_rate},
       {"impulse_law", c.impulse_law},
       {"tail_index", c.tail_index},
       {"settle_samples", c.settle_samples},
       {"max_lag", c.max_lag}};
}

void from_json(const json& j, ChirpScenarioConfig& c) {
  Fields(j, "caf-chirp")
      .get("seed", c.seed)
      .get("sample_rate", c.sample_rate)
      .get("duration", c.duration)
      .get("f_start", c.f_start)
      .get("f_end", c.f_end)
      .get("amplitude", c.amplitude)
      .get("front_end_corner", c.front_end_corner)
      .get("front_end_order", c.front_end_order)
      .get("n_taps", c.n_taps)
      .get("kaiser_beta", c.kaiser_beta)
      .get("adic", c.adic)
      .get("thermal_snr_db", c.thermal_snr_db)
      .get("outlier_to_thermal_ratio", c.outlier_to_thermal_ratio)
      .get("impulse_rate", c.impulse_rate)
      .get("impulse_law", c.impulse_law)
      .get("tail_index", c.tail_index)
      .get("settle_samples", c.settle_samples)
      .get("max_lag", c.max_lag)
      .finish();
}

void to_json(json& j, const Composition& c) {
  j = {{"name", c.name}, {"rate", c.rate}, {"law", c.law}, {"tail_index", c.tail_index}};
}

void from_json(const json& j, Composition& c) {
  Fields(j, "composition").get("name", c.name).get("rate", c.rate).get("law", c.law).get("tail_index", c.tail_index).finish();
}

void to_json(json& j, const CapacitySweepConfig& c) {
  j = {{"scenario", c.scenario},
       {"thermal_snrs_db", c.thermal_snrs_db},
       {"ratios", c.ratios},
       {"compositions", c.compositions}};
}

void from_json(const json& j, CapacitySweepConfig& c) {
  Fields(j, "capacity-sweep")
      .get("scenario", c.scenario)
      .get("thermal_snrs_db", c.thermal_snrs_db)
      .get("ratios", c.ratios)
      .get("compositions", c.compositions)
      .finish();
}

void to_json(json& j, const DeltaSigmaDemoConfig& c) {
  j = {{"seed", c.seed},
       {"sample_rate", c.sample_rate},
       {"duration", c.duration},
       {"order", c.order},
       {"gaussian_sigma", c.gaussian_sigma},
       {"impulse_rate", c.impulse_rate},
       {"pulse_corner", c.pulse_corner},
       {"impulse_peak", c.impulse_peak},
       {"narrowband_corner", c.narrowband_corner},
       {"narrowband_order", c.narrowband_order},
       {"settle_time", c.settle_time},
       {"impulsive_kurtosis_threshold", c.impulsive_kurtosis_threshold}};
}

void from_json(const json& j, DeltaSigmaDemoConfig& c) {
  Fields(j, "delta-sigma")
      .get("seed", c.seed)
      .get("sample_rate", c.sample_rate)
      .get("duration", c.duration)
      .get("order", c.order)
      .get("gaussian_sigma", c.gaussian_sigma)
      .get("impulse_rate", c.impulse_rate)
      .get("pulse_corner", c.pulse_corner)
      .get("impulse_peak", c.impulse_peak)
      .get("narrowband_corner", c.narrowband_corner)
      .get("narrowband_order", c.narrowband_order)
      .get("settle_time", c.settle_time)
      .get("impulsive_kurtosis_threshold", c.impulsive_kurtosis_threshold)
      .finish();
}

void to_json(json& j, const ClippingDemoConfig& c) {
  j = {{"seed", c.seed},
       {"sample_rate", c.sample_rate},
       {"n_subcarriers", c.n_subcarriers},
       {"active_fraction", c.active_fraction},
       {"constellation_order", c.constellation_order},
       {"bursts", c.bursts},
       {"clip_fraction", c.clip_fraction},
       {"low_edge_divisor", c.low_edge_divisor},
       {"n_taps", c.n_taps},
       {"adic", c.adic},
       {"settle_samples", c.settle_samples}};
}

void from_json(const json& j, ClippingDemoConfig& c) {
  Fields(j, "clipping")
      .get("seed", c.seed)
      .get("sample_rate", c.sample_rate)
      .get("n_subcarriers", c.n_subcarriers)
      .get("active_fraction", c.active_fraction)
      .get("constellation_order", c.constellation_order)
      .get("bursts", c.bursts)
      .get("clip_fraction", c.clip_fraction)
      .get("low_edge_divisor", c.low_edge_divisor)
      .get("n_taps", c.n_taps)
      .get("adic", c.adic)
      .get("settle_samples", c.settle_samples)
      .finish();
}

void to_json(json& j, const CucarachaDemoConfig& c) {
  j = {{"seed", c.seed},
       {"sample_rate", c.sample_rate},
       {"duration", c.duration},
       {"impulse_rate", c.impulse_rate},
       {"impulse_law", c.impulse_law},
       {"impulse_amplitude", c.impulse_amplitude},
       {"pulse_low", c.pulse_low},
       {"pulse_high", c.pulse_high},
       {"pulse_taps", c.pulse_taps},
       {"background_sigma", c.background_sigma},
       {"adic", c.adic},
       {"psd_segment", c.psd_segment},
       {"psd_overlap", c.psd_overlap},
       {"band_edges", c.band_edges}};
}

void from_json(const json& j, CucarachaDemoConfig& c) {
  Fields(j, "cucaracha")
      .get("seed", c.seed)
      .get("sample_rate", c.sample_rate)
      .get("duration", c.duration)
      .get("impulse_rate", c.impulse_rate)
      .get("impulse_law", c.impulse_law)
      .get("impulse_amplitude", c.impulse_amplitude)
      .get("pulse_low", c.pulse_low)
      .get("pulse_high", c.pulse_high)
      .get("pulse_taps", c.pulse_taps)
      .get("background_sigma", c.background_sigma)
      .get("adic", c.adic)
      .get("psd_segment", c.psd_segment)
      .get("psd_overlap", c.psd_overlap)
      .get("band_edges", c.band_edges)
      .finish();
}

template <typename T>
T parse_config(const json& overrides) {
  T cfg{};
  if (overrides.is_null()) return cfg;
  from_json(overrides, cfg);
  return cfg;
}

template BandwidthSweepConfig parse_config<BandwidthSweepConfig>(const json&);
template ChirpScenarioConfig parse_config<ChirpScenarioConfig>(const json&);
template CapacitySweepConfig parse_config<CapacitySweepConfig>(const json&);
template DeltaSigmaDemoConfig parse_config<DeltaSigmaDemoConfig>(const json&);
template ClippingDemoConfig parse_config<ClippingDemoConfig>(const json&);
template CucarachaDemoConfig parse_config<CucarachaDemoConfig>(const json&);

// -------------------------------------------------------- bandwidth sweep

ExperimentReport run_bandwidth_sweep(const BandwidthSweepConfig& cfg, const RunOptions&) {
  if (cfg.bandwidths.size() < 2) throw InvalidArgument("bandwidth grid needs at least two points");
  const double fs = cfg.sample_rate;
  for (double b : cfg.bandwidths)
    if (!(b > 0.0 && b <= fs / 10.0)) throw InvalidArgument("bandwidths must lie in (0, rate/10]");

  ExperimentReport rep;
  rep.experiment = "bandwidth-sweep";
  rep.config = cfg;

  const Signal gauss = gen_gaussian_noise({cfg.gaussian_sigma, derive_seed(cfg.seed, 1)}, fs, cfg.duration);
  ImpulsiveNoiseSpec pile;
  pile.arrival_rate = cfg.pileup_rate;
  pile.amplitude = cfg.pileup_amplitude;
  pile.seed = derive_seed(cfg.seed, 2);
  const Signal pileup = gen_impulsive_noise(pile, fs, cfg.duration);
  ImpulsiveNoiseSpec iso = pile;
  iso.arrival_rate = cfg.isolated_rate;
  iso.amplitude = 1.0;
  iso.seed = derive_seed(cfg.seed, 3);
  const Signal isolated = gen_impulsive_noise(iso, fs, cfg.isolated_duration);
  const Signal mixture = add(gauss, pileup);
  const std::size_t settle = sample_count(cfg.settle_time, fs);

  struct Row {
    double sigma_gauss, kurt_gauss, kurt_pileup, peak_isolated, sigma_mix, kurt_mix, peak_to_sigma_mix;
  };
  const auto rows = parallel_map(cfg.bandwidths.size(), [&](std::size_t i) {
    const FilterKernel k = design_bessel_like_lowpass(cfg.bandwidths[i], cfg.filter_order, fs);
    const Signal g = apply(k, gauss).slice(settle, gauss.size());
    const Signal p = apply(k, pileup).slice(settle, pileup.size());
    const Signal m = apply(k, mixture).slice(settle, mixture.size());
    const Signal q = apply(k, isolated);
    const double sm = std::sqrt(variance(m));
    return Row{std::sqrt(variance(g)), kurtosis(g), kurtosis(p), peak_abs(q), sm, kurtosis(m), peak_abs(m) / sm};
  });

  std::vector<double> bw = cfg.bandwidths, sg, kg, kp, pk, smx, kmx, pts;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    sg.push_back(r.sigma_gauss);
    kg.push_back(r.kurt_gauss);
    kp.push_back(r.kurt_pileup);
    pk.push_back(r.peak_isolated);
    smx.push_back(r.sigma_mix);
    kmx.push_back(r.kurt_mix);
    pts.push_back(r.peak_to_sigma_mix);
    rep.points.push_back({{"bandwidth", bw[i]},
                          {"bandwidth_to_rate", bw[i] / cfg.pileup_rate},
                          {"sigma_gaussian", r.sigma_gauss},
                          {"kurtosis_gaussian", r.kurt_gauss},
                          {"kurtosis_pileup", r.kurt_pileup},
                          {"peak_isolated", r.peak_isolated},
                          {"sigma_mixture", r.sigma_mix},
                          {"kurtosis_mixture", r.kurt_mix},
                          {"peak_to_sigma_mixture", r.peak_to_sigma_mix}});
  }
  const double slope_sigma = log_log_slope(bw, sg);
  const double slope_peak = log_log_slope(bw, pk);
  const auto lo = std::min_element(bw.begin(), bw.end()) - bw.begin();
  const auto hi = std::max_element(bw.begin(), bw.end()) - bw.begin();
  rep.summary = {{"sigma_slope", slope_sigma},
                 {"isolated_peak_slope", slope_peak},
                 {"pileup_kurtosis_low_bandwidth", kp[lo]},
                 {"pileup_kurtosis_high_bandwidth", kp[hi]}};
  rep.checks.push_back(check("gaussian sigma slope 0.5 +/- 0.05", std::abs(slope_sigma - 0.5) <= 0.05, fmt(slope_sigma)));
  rep.checks.push_back(check("isolated pulse peak slope 1.0 +/- 0.1", std::abs(slope_peak - 1.0) <= 0.1, fmt(slope_peak)));
  rep.checks.push_back(check("pileup kurtosis >= 10 at the widest band", kp[hi] >= 10.0, fmt(kp[hi])));
  rep.checks.push_back(check("pileup kurtosis 3 +/- 0.5 at the narrowest band", std::abs(kp[lo] - 3.0) <= 0.5, fmt(kp[lo])));

  rep.artifacts.push_back(table("bandwidth_sweep.csv", "Noise statistics against observation bandwidth",
                                {"bandwidth_hz", "sigma_gaussian", "kurtosis_gaussian", "kurtosis_pileup",
                                 "peak_isolated", "sigma_mixture", "kurtosis_mixture", "peak_to_sigma_mixture"},
                                {bw, sg, kg, kp, pk, smx, kmx, pts}));
  rep.timestamp = utc_timestamp();
  return rep;
}

// ------------------------------------------------------------ chirp CAF

ChirpOutcome run_chirp_pair(const ChirpScenarioConfig& c, bool keep_stages) {
  const double fs = c.sample_rate;
  const double fc = c.f_end;
  if (!(c.thermal_snr_db > -100.0 && c.thermal_snr_db < 200.0)) throw InvalidArgument("thermal SNR out of range");
  if (!(c.outlier_to_thermal_ratio >= 0.0)) throw InvalidArgument("outlier-to-thermal ratio must be >= 0");

  ChirpOutcome out;
  const Signal chirp = gen_linear_chirp({c.f_start, c.f_end, c.duration, c.amplitude}, fs);
  const double in_band = 2.0 * fc / fs;
  const double p_signal = 0.5 * c.amplitude * c.amplitude;
  out.thermal_sigma = std::sqrt(p_signal / std::pow(10.0, c.thermal_snr_db / 10.0) / in_band);
  Signal mix = add(chirp, gen_gaussian_noise({out.thermal_sigma, derive_seed(c.seed, 1)}, fs, c.duration));
  if (c.outlier_to_thermal_ratio > 0.0) {
    ImpulsiveNoiseSpec is;
    is.arrival_rate = c.impulse_rate;
    is.law = c.impulse_law;
    is.tail_index = c.tail_index;
    // White impulsive power per sample: rate/fs * E[a^2]; same in-band fraction as the thermal noise.
    const double m2 = amplitude_second_moment(c.impulse_law, c.tail_index);
    is.amplitude = std::sqrt(c.outlier_to_thermal_ratio * out.thermal_sigma * out.thermal_sigma * fs / (c.impulse_rate * m2));
    is.seed = derive_seed(c.seed, 2);
    out.impulse_amplitude = is.amplitude;
    mix = add(mix, gen_impulsive_noise(is, fs, c.duration));
  }

  const FilterKernel front = design_bessel_like_lowpass(c.front_end_corner, c.front_end_order, fs);
  const Signal stage_in = apply(front, mix);
  CafConfig caf;
  caf.pair = design_complementary_pair(fc / 5.0, fc, fs, c.n_taps, c.kaiser_beta);
  caf.adic = c.adic.params();
  CafResult on = caf_run(stage_in, caf, keep_stages);
  caf.enabled = false;
  const CafResult off = caf_run(stage_in, caf);

  out.reference = delay(apply(front, chirp), caf.pair.shared_delay);
  SnrOptions opt;
  opt.max_lag = c.max_lag;
  opt.settle = c.settle_samples;
  const Band band{0.0, fc};
  try {
    out.linear = baseband_snr(off.output, out.reference, band, opt);
    out.caf = baseband_snr(on.output, out.reference, band, opt);
  } catch (const AlignmentError& e) {
    throw InvariantViolation(std::string("paired-path alignment: ") + e.what());
  }
  if (out.linear.lag != 0 || out.caf.lag != 0)
    throw InvariantViolation("paired-path alignment: correlation peak at lag " + std::to_string(out.linear.lag) +
                             " (linear) / " + std::to_string(out.caf.lag) + " (CAF), expected 0");
  out.stats = on.stats;

  const std::size_t n0 = std::min(c.settle_samples, chirp.size());
  const Signal d_lin = subtract(off.output, out.reference).slice(n0, chirp.size());
  const Signal d_caf = subtract(on.output, out.reference).slice(n0, chirp.size());
  out.delta_rms_linear = d_lin.empty() ? 0.0 : rms(d_lin);
  out.delta_rms_caf = d_caf.empty() ? 0.0 : rms(d_caf);
  out.stages = std::move(on.stages);
  return out;
}

namespace {

json outcome_json(const ChirpOutcome& o, double bandwidth) {
  return {{"snr_linear_db", o.linear.snr_db},
          {"snr_caf_db", o.caf.snr_db},
          {"snr_gain_db", o.caf.snr_db - o.linear.snr_db},
          {"capacity_linear", shannon_capacity(o.linear.snr_db, bandwidth)},
          {"capacity_caf", shannon_capacity(o.caf.snr_db, bandwidth)},
          {"capacity_gain", capacity_gain(o.linear, o.caf, bandwidth)},
          {"delta_rms_linear", o.delta_rms_linear},
          {"delta_rms_caf", o.delta_rms_caf},
          {"blank_duty", o.stats.blank_duty()},
          {"inverted_samples", o.stats.inverted},
          {"thermal_sigma", o.thermal_sigma},
          {"impulse_amplitude", o.impulse_amplitude},
          {"lag_linear", o.linear.lag},
          {"lag_caf", o.caf.lag}};
}

}  // namespace

ExperimentReport run_caf_chirp_demo(const ChirpScenarioConfig& cfg, const RunOptions& opt) {
  ExperimentReport rep;
  rep.experiment = "caf-chirp";
  rep.config = cfg;

  ChirpScenarioConfig control = cfg;
  control.outlier_to_thermal_ratio = 0.0;
  auto futures = parallel_map(2, [&](std::size_t i) {
    return i == 0 ? run_chirp_pair(cfg, opt.dump_stages) : run_chirp_pair(control);
  });
  const ChirpOutcome& main = futures[0];
  const ChirpOutcome& ctrl = futures[1];
  json pm = outcome_json(main, cfg.f_end);
  pm["outlier_to_thermal_ratio"] = cfg.outlier_to_thermal_ratio;
  json pc = outcome_json(ctrl, cfg.f_end);
  pc["outlier_to_thermal_ratio"] = 0.0;
  rep.points = json::array({pm, pc});

  const double gain = main.caf.snr_db - main.linear.snr_db;
  const double ctrl_gain = ctrl.caf.snr_db - ctrl.linear.snr_db;
  rep.summary = {{"snr_gain_db", gain}, {"control_snr_difference_db", ctrl_gain}, {"blank_duty", main.stats.blank_duty()}};
  rep.checks.push_back(check("no-harm: zero-outlier control within 0.1 dB", std::abs(ctrl_gain) <= 0.1, fmt(ctrl_gain)));
  if (cfg.outlier_to_thermal_ratio > 0.0) {
    rep.checks.push_back(check("CAF baseband SNR exceeds linear", gain > 0.0, fmt(gain)));
    rep.checks.push_back(check("CAF delta trace rms below linear", main.delta_rms_caf < main.delta_rms_linear,
                               fmt(main.delta_rms_caf) + " vs " + fmt(main.delta_rms_linear)));
  }

  if (opt.dump_stages && main.stages) {
    const CafStages& s = *main.stages;
    rep.artifacts.push_back(signal_dump("stage_I_input.csv", "Stage I: front-end output (CAF input)", s.input));
    rep.artifacts.push_back(signal_dump("stage_II_bandpass.csv", "Stage II: bandpass branch", s.bandpass));
    rep.artifacts.push_back(signal_dump("stage_III_bandstop.csv", "Stage III: bandstop branch", s.bandstop));
    rep.artifacts.push_back(signal_dump("stage_IV_adic.csv", "Stage IV: ADiC output", s.adic));
    rep.artifacts.push_back(signal_dump("stage_V_output.csv", "Stage V: CAF output", s.output));
    rep.artifacts.push_back(signal_dump("delta_linear.csv", "Linear path minus delayed clean chirp",
                                        subtract(add(s.bandpass, s.bandstop), main.reference)));
    rep.artifacts.push_back(signal_dump("delta_caf.csv", "CAF path minus delayed clean chirp", subtract(s.output, main.reference)));
  }
  rep.timestamp = utc_timestamp();
  return rep;
}

// --------------------------------------------------------- capacity sweep

ExperimentReport run_capacity_sweep(const CapacitySweepConfig& cfg, const RunOptions&) {
  if (cfg.ratios.empty() || cfg.thermal_snrs_db.empty() || cfg.compositions.empty())
    throw InvalidArgument("capacity sweep needs non-empty SNR, ratio and composition grids");
  for (double r : cfg.ratios)
    if (!(r >= 0.0)) throw InvalidArgument("outlier-to-thermal ratios must be >= 0");

  ExperimentReport rep;
  rep.experiment = "capacity-sweep";
  rep.config = cfg;

  // The zero-outlier control point is always part of the grid.
  std::vector<double> ratios = cfg.ratios;
  if (std::find(ratios.begin(), ratios.end(), 0.0) == ratios.end()) ratios.insert(ratios.begin(), 0.0);
  std::sort(ratios.begin(), ratios.end());

  struct Job {
    double snr;
    std::size_t comp;
    double ratio;
  };
  std::vector<Job> jobs;
  for (double snr : cfg.thermal_snrs_db)
    for (std::size_t k = 0; k < cfg.compositions.size(); ++k)
      for (double r : ratios) jobs.push_back({snr, k, r});

  const auto outcomes = parallel_map(jobs.size(), [&](std::size_t i) {
    ChirpScenarioConfig s = cfg.scenario;
    const Composition& comp = cfg.compositions[jobs[i].comp];
    s.thermal_snr_db = jobs[i].snr;
    s.outlier_to_thermal_ratio = jobs[i].ratio;
    s.impulse_rate = comp.rate;
    s.impulse_law = comp.law;
    s.tail_index = comp.tail_index;
    // Same noise realisation along each ratio axis; compositions differ.
    s.seed = derive_seed(cfg.scenario.seed, 100 + jobs[i].comp);
    return run_chirp_pair(s);
  });

  const double bw = cfg.scenario.f_end;
  bool all_nonnegative = true, control_ok = true;
  std::string worst;
  double min_gain = std::numeric_limits<double>::infinity();
  std::vector<double> col_snr, col_comp, col_ratio, col_lin, col_caf, col_gain;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const ChirpOutcome& o = outcomes[i];
    json p = outcome_json(o, bw);
    p["thermal_snr_db"] = jobs[i].snr;
    p["composition"] = cfg.compositions[jobs[i].comp].name;
    p["outlier_to_thermal_ratio"] = jobs[i].ratio;
    rep.points.push_back(p);
    const double g = p["capacity_gain"].get<double>();
    if (g < min_gain) {
      min_gain = g;
      worst = cfg.compositions[jobs[i].comp].name + " @ " + fmt(jobs[i].snr) + " dB, ratio " + fmt(jobs[i].ratio);
    }
    if (g < 0.0) all_nonnegative = false;
    if (jobs[i].ratio == 0.0) {
      const double d = o.caf.snr_db - o.linear.snr_db;
      if (std::abs(d) > 0.1 || std::abs(g) > 0.01) control_ok = false;
    }
    col_snr.push_back(jobs[i].snr);
    col_comp.push_back(static_cast<double>(jobs[i].comp));
    col_ratio.push_back(jobs[i].ratio);
    col_lin.push_back(o.linear.snr_db);
    col_caf.push_back(o.caf.snr_db);
    col_gain.push_back(g);
  }

  // Monotonicity of the gain along each ratio axis: flagged only.
  std::vector<std::string> nonmonotone;
  const std::size_t per_series = ratios.size();
  for (std::size_t s = 0; s * per_series < jobs.size(); ++s) {
    for (std::size_t r = 1; r < per_series; ++r) {
      const std::size_t i = s * per_series + r;
      if (col_gain[i] + 1e-12 < col_gain[i - 1])
        nonmonotone.push_back(cfg.compositions[jobs[i].comp].name + " @ " + fmt(jobs[i].snr) + " dB, ratio " +
                              fmt(jobs[i].ratio));
    }
  }

  rep.summary = {{"min_capacity_gain", min_gain}, {"worst_point", worst}, {"nonmonotone_points", nonmonotone}};
  rep.checks.push_back(check("capacity gain >= 0 at every point", all_nonnegative, "min " + fmt(min_gain) + " at " + worst));
  rep.checks.push_back(check("no-harm: zero-outlier points within 0.1 dB and 1% capacity", control_ok, ""));
  std::string mono_detail = nonmonotone.empty() ? "monotone" : std::to_string(nonmonotone.size()) + " decreasing steps";
  rep.checks.push_back(check("capacity gain nondecreasing in outlier ratio", nonmonotone.empty(), mono_detail, false));
  rep.artifacts.push_back(table("capacity_sweep.csv", "Baseband SNR and capacity gain against outlier-to-thermal ratio",
                                {"outlier_to_thermal_ratio", "thermal_snr_db", "composition_index", "snr_linear_db",
                                 "snr_caf_db", "capacity_gain"},
                                {col_ratio, col_snr, col_comp, col_lin, col_caf, col_gain}));
  rep.timestamp = utc_timestamp();
  return rep;
}

// ------------------------------------------------------ delta-sigma demo

ExperimentReport run_delta_sigma_demo(const DeltaSigmaDemoConfig& cfg, const RunOptions&) {
  const double fs = cfg.sample_rate;
  ExperimentReport rep;
  rep.experiment = "delta-sigma";
  rep.config = cfg;

  // The clipper keeps the modulator input within full scale.
  const Signal gauss =
      hard_clip(gen_gaussian_noise({cfg.gaussian_sigma, derive_seed(cfg.seed, 1)}, fs, cfg.duration), 1.0);
  ImpulsiveNoiseSpec is;
  is.arrival_rate = cfg.impulse_rate;
  is.amplitude = 1.0;
  is.pulse_shape = design_bessel_like_lowpass(cfg.pulse_corner, 2, fs);
  is.seed = derive_seed(cfg.seed, 2);
  Signal pulses = gen_impulsive_noise(is, fs, cfg.duration);
  const double pk = peak_abs(pulses);
  if (!(pk > 0.0)) throw InvalidArgument("impulsive drive produced no pulses; raise rate or duration");
  pulses = scale(pulses, cfg.impulse_peak / pk);

  const FilterKernel narrow = design_bessel_like_lowpass(cfg.narrowband_corner, cfg.narrowband_order, fs);
  const std::size_t settle = sample_count(cfg.settle_time, fs);

  struct Out {
    bool two_valued;
    double p_plus, raw_kurt, closed_form, nb_kurt, input_nb_kurt;
    std::size_t saturations;
    Signal raw, nb;
  };
  const Signal* inputs[2] = {&gauss, &pulses};
  const auto outs = parallel_map(2, [&](std::size_t i) {
    DeltaSigmaState st;
    st.order = cfg.order;
    Signal y = delta_sigma_modulate(*inputs[i], st);
    std::size_t plus = 0;
    bool two = true;
    for (double v : y.samples()) {
      plus += v == 1.0;
      two = two && (v == 1.0 || v == -1.0);
    }
    const double p = static_cast<double>(plus) / static_cast<double>(y.size());
    const double pq = p * (1.0 - p);
    Signal nb = apply(narrow, y).slice(settle, y.size());
    const Signal xin = apply(narrow, *inputs[i]).slice(settle, y.size());
    const double raw_k = kurtosis(y);
    const double nb_k = kurtosis(nb);
    return Out{two, p, raw_k, (1.0 - 3.0 * pq) / pq, nb_k, kurtosis(xin), st.saturations, std::move(y), std::move(nb)};
  });

  const char* names[2] = {"gaussian", "impulsive"};
  for (std::size_t i = 0; i < 2; ++i) {
    rep.points.push_back({{"drive", names[i]},
                          {"two_valued", outs[i].two_valued},
                          {"fraction_plus", outs[i].p_plus},
                          {"raw_kurtosis", outs[i].raw_kurt},
                          {"raw_kurtosis_two_point", outs[i].closed_form},
                          {"narrowband_kurtosis", outs[i].nb_kurt},
                          {"input_narrowband_kurtosis", outs[i].input_nb_kurt},
                          {"saturations", outs[i].saturations}});
    rep.checks.push_back(check(std::string(names[i]) + ": raw output two-valued", outs[i].two_valued, ""));
    const double rel = std::abs(outs[i].raw_kurt - outs[i].closed_form) / outs[i].closed_form;
    rep.checks.push_back(check(std::string(names[i]) + ": raw kurtosis matches two-point law", rel < 1e-9, fmt(rel)));
    rep.checks.push_back(check(std::string(names[i]) + ": raw kurtosis ~ 1", std::abs(outs[i].raw_kurt - 1.0) < 0.01,
                               fmt(outs[i].raw_kurt)));
    rep.artifacts.push_back(histogram_artifact(std::string("hist_raw_") + names[i] + ".csv",
                                               std::string("Raw modulator output histogram, ") + names[i] + " drive",
                                               outs[i].raw, 16));
    rep.artifacts.push_back(histogram_artifact(std::string("hist_narrowband_") + names[i] + ".csv",
                                               std::string("Narrowband view histogram, ") + names[i] + " drive",
                                               outs[i].nb, 101));
  }
  rep.checks.push_back(check("gaussian drive: narrowband kurtosis 3 +/- 0.5", std::abs(outs[0].nb_kurt - 3.0) <= 0.5,
                             fmt(outs[0].nb_kurt)));
  rep.checks.push_back(check("impulsive drive: narrowband kurtosis above threshold",
                             outs[1].nb_kurt > cfg.impulsive_kurtosis_threshold, fmt(outs[1].nb_kurt)));
  rep.summary = {{"narrowband_kurtosis_gaussian", outs[0].nb_kurt}, {"narrowband_kurtosis_impulsive", outs[1].nb_kurt}};
  rep.timestamp = utc_timestamp();
  return rep;
}

// --------------------------------------------------------- clipping demo

ExperimentReport run_clipping_demo(const ClippingDemoConfig& cfg, const RunOptions& opt) {
  if (cfg.bursts == 0) throw InvalidArgument("clipping demo needs at least one burst");
  if (!(cfg.clip_fraction > 0.0)) throw InvalidArgument("clip fraction must be positive");
  const double fs = cfg.sample_rate;
  ExperimentReport rep;
  rep.experiment = "clipping";
  rep.config = cfg;

  OfdmSpec os;
  os.n_subcarriers = cfg.n_subcarriers;
  os.symbol_count = 1;
  os.active_fraction = cfg.active_fraction;
  os.constellation_order = cfg.constellation_order;
  const auto [f_lo, f_hi] = ofdm_band(os, fs);

  CafConfig caf;
  caf.pair = design_complementary_pair(f_hi / cfg.low_edge_divisor, f_hi, fs, cfg.n_taps);
  caf.adic = cfg.adic.params();
  CafConfig linear = caf;
  linear.enabled = false;

  struct Burst {
    Signal clean, clipped, distortion;
    double peak, clip_level;
    std::size_t clipped_samples;
    double resid_caf, resid_linear;  // in-band mean square
    NonlinearStats stats;
  };
  const auto bursts = parallel_map(cfg.bursts, [&](std::size_t b) {
    OfdmSpec s = os;
    s.seed = derive_seed(cfg.seed, b);
    Signal x = gen_ofdm_burst(s, fs);
    const double peak = peak_abs(x);
    const double level = cfg.clip_fraction * peak;
    Signal c = hard_clip(x, level);
    Signal d = subtract(c, x);
    std::size_t n_clipped = 0;
    for (double v : d.samples()) n_clipped += v != 0.0;
    const Signal ref = delay(x, caf.pair.shared_delay);
    const CafResult on = caf_run(c, caf);
    const Signal off = caf_process(c, linear);
    SnrOptions o;
    o.settle = cfg.settle_samples;
    const double r_on = baseband_snr(on.output, ref, {0.0, f_hi}, o).noise_power;
    const double r_off = baseband_snr(off, ref, {0.0, f_hi}, o).noise_power;
    return Burst{std::move(x), std::move(c), std::move(d), peak, level, n_clipped, r_on, r_off, on.stats};
  });

  std::vector<double> xs, cs, ds;
  double ms_on = 0.0, ms_off = 0.0;
  std::size_t total_clipped = 0;
  for (std::size_t b = 0; b < bursts.size(); ++b) {
    const Burst& u = bursts[b];
    xs.insert(xs.end(), u.clean.samples().begin(), u.clean.samples().end());
    cs.insert(cs.end(), u.clipped.samples().begin(), u.clipped.samples().end());
    ds.insert(ds.end(), u.distortion.samples().begin(), u.distortion.samples().end());
    ms_on += u.resid_caf / static_cast<double>(bursts.size());
    ms_off += u.resid_linear / static_cast<double>(bursts.size());
    total_clipped += u.clipped_samples;
    rep.points.push_back({{"burst", b},
                          {"peak", u.peak},
                          {"clip_level", u.clip_level},
                          {"clipped_samples", u.clipped_samples},
                          {"residual_rms_caf", std::sqrt(u.resid_caf)},
                          {"residual_rms_unrestored", std::sqrt(u.resid_linear)},
                          {"blank_duty", u.stats.blank_duty()}});
  }
  const Signal clean(std::move(xs), fs), clipped(std::move(cs), fs), distortion(std::move(ds), fs);
  const bool degenerate = total_clipped == 0;
  rep.summary = {{"band_low", f_lo},
                 {"band_high", f_hi},
                 {"clipped_samples", total_clipped},
                 {"degenerate", degenerate},
                 {"kurtosis_clean", kurtosis(clean)},
                 {"kurtosis_clipped", kurtosis(clipped)},
                 {"crest_factor_clean", crest_factor(clean)},
                 {"crest_factor_clipped", crest_factor(clipped)},
                 {"residual_rms_caf", std::sqrt(ms_on)},
                 {"residual_rms_unrestored", std::sqrt(ms_off)}};
  if (degenerate) {
    rep.summary["distortion_rms"] = 0.0;
    rep.checks.push_back(check("no clipping: distortion identically zero", peak_abs(distortion) == 0.0, "clip level >= peak"));
  } else {
    const double kd = kurtosis(distortion), kc = kurtosis(clipped);
    rep.summary["kurtosis_distortion"] = kd;
    rep.summary["distortion_rms"] = rms(distortion);
    rep.checks.push_back(check("distortion kurtosis exceeds clipped-signal kurtosis", kd > kc, fmt(kd) + " vs " + fmt(kc)));
  }
  rep.checks.push_back(check("CAF restoration does not increase in-band residual", ms_on <= ms_off,
                             fmt(std::sqrt(ms_on)) + " vs " + fmt(std::sqrt(ms_off))));
  rep.artifacts.push_back(histogram_artifact("hist_clean.csv", "Clean OFDM amplitude histogram", clean, 101));
  rep.artifacts.push_back(histogram_artifact("hist_clipped.csv", "Clipped OFDM amplitude histogram", clipped, 101));
  if (!degenerate)
    rep.artifacts.push_back(histogram_artifact("hist_distortion.csv", "Clipping distortion histogram", distortion, 101));
  if (opt.dump_stages) {
    rep.artifacts.push_back(signal_dump("clean.csv", "Clean OFDM, first burst", bursts[0].clean));
    rep.artifacts.push_back(signal_dump("clipped.csv", "Clipped OFDM, first burst", bursts[0].clipped));
    rep.artifacts.push_back(signal_dump("distortion.csv", "Clipping distortion, first burst", bursts[0].distortion));
  }
  rep.timestamp = utc_timestamp();
  return rep;
}

// -------------------------------------------------------- cucaracha demo

ExperimentReport run_cucaracha_demo(const CucarachaDemoConfig& cfg, const RunOptions&) {
  const double fs = cfg.sample_rate;
  if (cfg.band_edges.size() < 3) throw InvalidArgument("cucaracha demo needs at least two bands");
  if (!std::is_sorted(cfg.band_edges.begin(), cfg.band_edges.end())) throw InvalidArgument("band edges must be sorted");

  ExperimentReport rep;
  rep.experiment = "cucaracha";
  rep.config = cfg;

  ImpulsiveNoiseSpec is;
  is.arrival_rate = cfg.impulse_rate;
  is.law = cfg.impulse_law;
  is.amplitude = cfg.impulse_amplitude;
  is.pulse_shape = design_windowed_sinc_bandpass(cfg.pulse_low, cfg.pulse_high, fs, cfg.pulse_taps);
  is.seed = derive_seed(cfg.seed, 1);
  const Signal noise =
      add(gen_impulsive_noise(is, fs, cfg.duration), gen_gaussian_noise({cfg.background_sigma, derive_seed(cfg.seed, 2)}, fs, cfg.duration));

  const AdicParams ap = cfg.adic.params();
  const auto runs = parallel_map(2, [&](std::size_t i) {
    return run_adic(noise, i == 0 ? ap.make_state() : AdicState::with_fixed_range(ap.tau, BlankingRange::wide()));
  });
  const PsdEstimate before = psd_welch(noise, cfg.psd_segment, cfg.psd_overlap);
  const PsdEstimate after = psd_welch(runs[0].output, cfg.psd_segment, cfg.psd_overlap);
  const PsdEstimate wide = psd_welch(runs[1].output, cfg.psd_segment, cfg.psd_overlap);

  std::size_t loud = 0, quiet = 0;
  std::vector<double> p0, p1;
  std::vector<std::string> increased;
  for (std::size_t b = 0; b + 1 < cfg.band_edges.size(); ++b) {
    const double lo = cfg.band_edges[b], hi = cfg.band_edges[b + 1];
    p0.push_back(before.band_power(lo, hi));
    p1.push_back(after.band_power(lo, hi));
    if (p0[b] > p0[loud]) loud = b;
    if (p0[b] < p0[quiet]) quiet = b;
    rep.points.push_back({{"band_low", lo},
                          {"band_high", hi},
                          {"power_before", p0[b]},
                          {"power_after", p1[b]},
                          {"change_db", 10.0 * std::log10(p1[b] / p0[b])}});
    if (p1[b] > p0[b]) increased.push_back(fmt(lo) + "-" + fmt(hi) + " Hz");
  }
  const bool identical = wide.densities == before.densities;
  rep.summary = {{"loud_band", {cfg.band_edges[loud], cfg.band_edges[loud + 1]}},
                 {"loud_band_change_db", 10.0 * std::log10(p1[loud] / p0[loud])},
                 {"quiet_band", {cfg.band_edges[quiet], cfg.band_edges[quiet + 1]}},
                 {"quiet_band_change_db", 10.0 * std::log10(p1[quiet] / p0[quiet])},
                 {"increased_bands", increased},
                 {"blank_duty", runs[0].stats.blank_duty()},
                 {"allpass_psd_identical", identical}};
  rep.checks.push_back(check("density decreases in the previously loud band", p1[loud] < p0[loud],
                             fmt(10.0 * std::log10(p1[loud] / p0[loud])) + " dB"));
  rep.checks.push_back(check("density increases in at least one previously quiet band", !increased.empty(),
                             increased.empty() ? "none" : increased.front()));
  rep.checks.push_back(check("allpass-limit ADiC leaves the PSD unchanged", identical, ""));
  rep.artifacts.push_back(table("psd.csv", "PSD before and after the ADiC", {"frequency_hz", "before", "after", "allpass"},
                                {before.frequencies, before.densities, after.densities, wide.densities}));
  rep.timestamp = utc_timestamp();
  return rep;
}

// -------------------------------------------------------------- dispatch

std::vector<std::string> experiment_names() {
  return {"bandwidth-sweep", "caf-chirp", "capacity-sweep", "delta-sigma", "clipping", "cucaracha"};
}

namespace {

template <typename T, typename Run>
ExperimentReport run_typed(const json& j, std::optional<std::uint64_t> seed, const RunOptions& opt, Run run) {
  T cfg = parse_config<T>(j);
  if (seed) {
    if constexpr (std::is_same_v<T, CapacitySweepConfig>)
      cfg.scenario.seed = *seed;
    else
      cfg.seed = *seed;
  }
  return run(cfg, opt);
}

}  // namespace

ExperimentReport run_named(const std::string& experiment, const json& config, std::optional<std::uint64_t> seed,
                           const RunOptions& opt) {
  json cfg = config;
  if (cfg.is_object() && cfg.contains("provenance") && cfg.contains("config")) {
    if (cfg.value("experiment", experiment) != experiment)
      throw ConfigError("report was produced by '" + cfg.value("experiment", std::string()) + "', not '" + experiment + "'");
    cfg = cfg["config"];
  }
  if (experiment == "bandwidth-sweep") return run_typed<BandwidthSweepConfig>(cfg, seed, opt, run_bandwidth_sweep);
  if (experiment == "caf-chirp") return run_typed<ChirpScenarioConfig>(cfg, seed, opt, run_caf_chirp_demo);
  if (experiment == "capacity-sweep") return run_typed<CapacitySweepConfig>(cfg, seed, opt, run_capacity_sweep);
  if (experiment == "delta-sigma") return run_typed<DeltaSigmaDemoConfig>(cfg, seed, opt, run_delta_sigma_demo);
  if (experiment == "clipping") return run_typed<ClippingDemoConfig>(cfg, seed, opt, run_clipping_demo);
  if (experiment == "cucaracha") return run_typed<CucarachaDemoConfig>(cfg, seed, opt, run_cucaracha_demo);
  throw ConfigError("unknown experiment '" + experiment + "'");
}

}  // namespace cinf
