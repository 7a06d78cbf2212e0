#pragma once

// Named demonstrations composed from generators, pipelines and metrics.
// Each run_* function is a pure function of its config (seed included):
// rerunning with the config echoed in a report reproduces every metric.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cinf/caf.hpp"
#include "cinf/generators.hpp"
#include "cinf/metrics.hpp"

namespace cinf {

/// A config document failed to parse or validate.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A property every run must satisfy (alignment, no-harm, ...) did not hold.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

extern const char* const kVersion;

/// Independent, reproducible stream seeds from one master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

struct Check {
  std::string name;
  bool passed = false;
  bool hard = true;  // false: flagged in the report, never fails the run
  std::string detail;
};

/// CSV table or signal dump written next to the report.
struct Artifact {
  std::string file;
  std::string description;
  std::string x;  // column plotted on the x axis ("" for signal dumps)
  std::vector<std::string> y;
  std::string content;
};

struct ExperimentReport {
  std::string experiment;
  nlohmann::json config;  // fully resolved, seed included
  nlohmann::json points = nlohmann::json::array();
  nlohmann::json summary = nlohmann::json::object();
  std::vector<Check> checks;
  std::vector<Artifact> artifacts;
  std::string version = kVersion;
  std::string timestamp;

  bool passed() const;
  /// Everything except provenance and artifacts.
  nlohmann::json metrics() const;
  nlohmann::json to_json() const;
  /// Plot manifest: one entry per table artifact.
  nlohmann::json manifest() const;
};

struct AdicConfig {
  double corner = 5000.0;  // Hz; tau = 1 / (2 pi corner)
  double beta = 4.0;
  double gain_fraction = 0.05;
  double scale_smoothing = 1.0 / 256.0;
  double initial_scale = 1.0;

  AdicParams params() const;
};

struct BandwidthSweepConfig {
  std::uint64_t seed = 1;
  double sample_rate = 1e5;
  double duration = 10.0;
  std::vector<double> bandwidths{50, 100, 200, 500, 1000, 2000, 5000, 10000};
  int filter_order = 4;
  double gaussian_sigma = 1.0;
  double pileup_rate = 1000.0;      // pulses per second, fixed +/- amplitude
  double pileup_amplitude = 1.0;
  double isolated_rate = 5.0;
  double isolated_duration = 2.0;
  double settle_time = 0.2;         // s discarded after filtering
};

struct ChirpScenarioConfig {
  std::uint64_t seed = 1;
  double sample_rate = 1e5;
  double duration = 1.0;
  double f_start = 100.0;
  double f_end = 5000.0;  // also the CAF high edge f_c; low edge f_c / 5
  double amplitude = 1.0;
  double front_end_corner = 25000.0;
  int front_end_order = 4;
  std::size_t n_taps = 1023;
  double kaiser_beta = 8.0;
  AdicConfig adic;
  double thermal_snr_db = 10.0;          // baseband [0, f_c]
  double outlier_to_thermal_ratio = 10.0; // baseband power ratio
  double impulse_rate = 100.0;
  AmplitudeLaw impulse_law = AmplitudeLaw::fixed;
  double tail_index = 2.5;
  std::size_t settle_samples = 3000;
  std::size_t max_lag = 4;
};

struct Composition {
  std::string name;
  double rate = 100.0;
  AmplitudeLaw law = AmplitudeLaw::fixed;
  double tail_index = 2.5;
};

struct CapacitySweepConfig {
  ChirpScenarioConfig scenario;
  std::vector<double> thermal_snrs_db{10.0, 30.0};
  std::vector<double> ratios{0.0, 0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0};
  std::vector<Composition> compositions{{"sparse-fixed", 100.0, AmplitudeLaw::fixed, 2.5},
                                        {"dense-exponential", 1000.0, AmplitudeLaw::exponential, 2.5}};
};

struct DeltaSigmaDemoConfig {
  std::uint64_t seed = 1;
  double sample_rate = 1e5;
  double duration = 10.0;
  int order = 2;
  double gaussian_sigma = 0.25;
  double impulse_rate = 20.0;
  double pulse_corner = 1000.0;
  double impulse_peak = 0.7;    // of full scale
  double narrowband_corner = 300.0;
  int narrowband_order = 4;
  double settle_time = 0.1;
  double impulsive_kurtosis_threshold = 6.0;
};

struct ClippingDemoConfig {
  std::uint64_t seed = 1;
  double sample_rate = 1e5;
  std::size_t n_subcarriers = 131072;  // one long symbol per burst
  double active_fraction = 0.1;
  int constellation_order = 16;
  std::size_t bursts = 4;
  double clip_fraction = 0.7;          // of each burst's peak
  double low_edge_divisor = 10.0;
  std::size_t n_taps = 1023;
  AdicConfig adic{1250.0, 3.0, 0.05, 1.0 / 256.0, 1.0};  // corner ~ band edge / 4
  std::size_t settle_samples = 2000;
};

struct CucarachaDemoConfig {
  std::uint64_t seed = 1;
  double sample_rate = 1e5;
  double duration = 4.0;
  double impulse_rate = 200.0;
  AmplitudeLaw impulse_law = AmplitudeLaw::exponential;
  double impulse_amplitude = 1.0;
  double pulse_low = 8000.0;   // pulses shaped by a bandpass
  double pulse_high = 12000.0;
  std::size_t pulse_taps = 101;
  double background_sigma = 1e-3;
  AdicConfig adic{5000.0, 1.5, 0.05, 1.0 / 256.0, 1.0};
  std::size_t psd_segment = 4096;
  double psd_overlap = 0.5;
  std::vector<double> band_edges{0, 1000, 2000, 5000, 10000, 20000, 50000};
};

void to_json(nlohmann::json& j, const AdicConfig& c);
void from_json(const nlohmann::json& j, AdicConfig& c);
void to_json(nlohmann::json& j, const BandwidthSweepConfig& c);
void from_json(const nlohmann::json& j, BandwidthSweepConfig& c);
void to_json(nlohmann::json& j, const ChirpScenarioConfig& c);
void from_json(const nlohmann::json& j, ChirpScenarioConfig& c);
void to_json(nlohmann::json& j, const Composition& c);
void from_json(const nlohmann::json& j, Composition& c);
void to_json(nlohmann::json& j, const CapacitySweepConfig& c);
void from_json(const nlohmann::json& j, CapacitySweepConfig& c);
void to_json(nlohmann::json& j, const DeltaSigmaDemoConfig& c);
void from_json(const nlohmann::json& j, DeltaSigmaDemoConfig& c);
void to_json(nlohmann::json& j, const ClippingDemoConfig& c);
void from_json(const nlohmann::json& j, ClippingDemoConfig& c);
void to_json(nlohmann::json& j, const CucarachaDemoConfig& c);
void from_json(const nlohmann::json& j, CucarachaDemoConfig& c);

/// Parse `overrides` on top of the defaults of T. Unknown keys and type
/// mismatches raise ConfigError.
template <typename T>
T parse_config(const nlohmann::json& overrides);

struct RunOptions {
  bool dump_stages = false;
};

ExperimentReport run_bandwidth_sweep(const BandwidthSweepConfig& cfg, const RunOptions& opt = {});
ExperimentReport run_caf_chirp_demo(const ChirpScenarioConfig& cfg, const RunOptions& opt = {});
ExperimentReport run_capacity_sweep(const CapacitySweepConfig& cfg, const RunOptions& opt = {});
ExperimentReport run_delta_sigma_demo(const DeltaSigmaDemoConfig& cfg, const RunOptions& opt = {});
ExperimentReport run_clipping_demo(const ClippingDemoConfig& cfg, const RunOptions& opt = {});
ExperimentReport run_cucaracha_demo(const CucarachaDemoConfig& cfg, const RunOptions& opt = {});

/// Dispatch by subcommand name ("bandwidth-sweep", "caf-chirp", ...). The
/// config may be a bare config object or a previous report (its "config"
/// member is used). `seed` overrides the config seed when set.
ExperimentReport run_named(const std::string& experiment, const nlohmann::json& config,
                           std::optional<std::uint64_t> seed, const RunOptions& opt = {});

std::vector<std::string> experiment_names();

/// Paired chirp run: linear-only and CAF paths on the same realisation.
struct ChirpOutcome {
  SnrReport linear;
  SnrReport caf;
  NonlinearStats stats;
  double delta_rms_linear = 0.0;
  double delta_rms_caf = 0.0;
  double thermal_sigma = 0.0;
  double impulse_amplitude = 0.0;
  std::optional<CafStages> stages;
  Signal reference = Signal::zeros(0, 1.0);
};

ChirpOutcome run_chirp_pair(const ChirpScenarioConfig& cfg, bool keep_stages = false);

}  // namespace cinf
