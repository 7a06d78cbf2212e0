#pragma once

// Intermittently nonlinear primitives: the blanking function, quantile
// tracking filters (QTFs), Tukey-fence ranges built from QTF outputs, and the
// basic and feedback Analog Differential Clippers (ADiCs).
//
// All states do O(1) work and hold O(1) memory per sample. A state object
// belongs to one stream and is stepped strictly in sample order.

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "cinf/signal.hpp"

namespace cinf {

struct BlankingRange {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();

  /// (-inf, +inf): every finite value is in range.
  static BlankingRange wide() { return {}; }

  bool inverted() const noexcept { return lower > upper; }
  bool contains(double x) const noexcept { return lower <= x && x <= upper; }

  friend bool operator==(const BlankingRange&, const BlankingRange&) = default;
};

/// x when lower <= x <= upper, 0 otherwise. An inverted range blanks everything.
double blank(double x, const BlankingRange& range) noexcept;

/// min(max(x, -v_c), v_c). Requires v_c > 0.
double hard_clip(double x, double v_c);
Signal hard_clip(const Signal& s, double v_c);

/// One quantile tracker. Invariants: 0 < q < 1, step_gain > 0, estimate finite.
struct QtfState {
  double q = 0.5;
  double step_gain = 0.01;
  double estimate = 0.0;

  void validate() const;
};

/// estimate += step_gain * (sign(x - estimate) + 2q - 1), sign(0) = 0.
/// Returns the new estimate. The change is bounded by 2 * step_gain.
double qtf_step(QtfState& state, double x) noexcept;

/// [q1 - beta (q3 - q1), q3 + beta (q3 - q1)]. Not reordered if q3 < q1.
BlankingRange tukey_fences(double q1, double q3, double beta) noexcept;

/// Parameters shared by every fence tracker.
///
/// Both quartile trackers start at (first sample -/+ initial_scale). Unless
/// fixed_step_gain is set, the step gain follows a slowly smoothed
/// interquartile range: step_gain = max(gain_fraction * scale, min_step_gain),
/// with scale += scale_smoothing * (IQR - scale) after every sample.
struct FenceParams {
  double beta = 1.5;
  double initial_scale = 1.0;
  double gain_fraction = 0.05;
  double scale_smoothing = 1.0 / 256.0;
  double min_step_gain = 1e-9;
  std::optional<double> fixed_step_gain;

  void validate() const;
};

/// Quartile trackers (q = 0.25, 0.75) and the Tukey fences built from them.
class TukeyFenceTracker {
 public:
  explicit TukeyFenceTracker(FenceParams params = {});

  /// Start from explicit quartile estimates instead of the first sample.
  TukeyFenceTracker(FenceParams params, double q1, double q3);

  /// Feed one sample to both trackers; returns the updated fences.
  BlankingRange update(double x);

  bool initialised() const noexcept { return initialised_; }
  const QtfState& q1() const noexcept { return q1_; }
  const QtfState& q3() const noexcept { return q3_; }
  double beta() const noexcept { return params_.beta; }
  double scale() const noexcept { return scale_; }
  const FenceParams& params() const noexcept { return params_; }

 private:
  void refresh_gain() noexcept;

  FenceParams params_;
  QtfState q1_;
  QtfState q3_;
  double scale_ = 0.0;
  bool initialised_ = false;
};

BlankingRange tukey_fences(const TukeyFenceTracker& tracker) noexcept;

struct NonlinearStats {
  std::size_t samples = 0;
  std::size_t blanked = 0;   // samples whose output differs from the input path
  std::size_t inverted = 0;  // samples seen with an inverted (q3 < q1) range

  double blank_duty() const noexcept {
    return samples == 0 ? 0.0 : static_cast<double>(blanked) / static_cast<double>(samples);
  }
};

struct TelemetrySample {
  std::size_t index = 0;
  bool in_range = true;
  double chi = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// Feedback ADiC:
///   y = chi + tau dchi/dt,  dchi/dt = B(x - chi) / tau
/// discretised by forward Euler. When the difference x - chi is inside the
/// blanking range the output is exactly x and chi moves by (dt/tau)(x - chi);
/// otherwise the output is chi and chi holds.
class AdicState {
 public:
  AdicState(double tau, FenceParams fences);

  /// Range fixed for the lifetime of the state (e.g. BlankingRange::wide()).
  static AdicState with_fixed_range(double tau, BlankingRange range);

  double tau() const noexcept { return tau_; }
  double chi() const noexcept { return chi_; }
  bool initialised() const noexcept { return initialised_; }
  const std::optional<TukeyFenceTracker>& tracker() const noexcept { return tracker_; }
  const BlankingRange& last_range() const noexcept { return range_; }
  bool last_in_range() const noexcept { return in_range_; }
  const NonlinearStats& stats() const noexcept { return stats_; }

 private:
  friend double adic_step(AdicState& state, double x, double dt);

  double tau_;
  double chi_ = 0.0;
  bool initialised_ = false;
  std::optional<TukeyFenceTracker> tracker_;
  BlankingRange range_;
  bool in_range_ = true;
  NonlinearStats stats_;
};

/// Requires dt > 0 and dt/tau <= 1. chi starts at the first input sample.
double adic_step(AdicState& state, double x, double dt);

/// Basic ADiC: fences from quartile trackers on the input itself; outliers
/// are replaced by the mid-range (q1 + q3)/2. A sample is judged against the
/// fences built from the samples before it, then fed to the trackers.
class BasicAdicState {
 public:
  explicit BasicAdicState(FenceParams fences);
  BasicAdicState(FenceParams fences, double q1, double q3);

  const TukeyFenceTracker& tracker() const noexcept { return tracker_; }
  const BlankingRange& last_range() const noexcept { return range_; }
  bool last_in_range() const noexcept { return in_range_; }
  const NonlinearStats& stats() const noexcept { return stats_; }

 private:
  friend double basic_adic_step(BasicAdicState& state, double x);

  TukeyFenceTracker tracker_;
  BlankingRange range_;
  bool in_range_ = true;
  NonlinearStats stats_;
};

double basic_adic_step(BasicAdicState& state, double x);

struct NonlinearRun {
  Signal output;
  NonlinearStats stats;
  std::vector<TelemetrySample> telemetry;
};

/// Stream a whole signal through a copy of `state`, dt = 1 / sample rate.
NonlinearRun run_adic(const Signal& input, AdicState state, bool record_telemetry = false);
NonlinearRun run_basic_adic(const Signal& input, BasicAdicState state, bool record_telemetry = false);

/// index,in_range,chi,lower,upper rows with a header line.
void write_telemetry_csv(std::span<const TelemetrySample> rows, std::ostream& out);

nlohmann::json snapshot(const QtfState& state);
nlohmann::json snapshot(const TukeyFenceTracker& tracker);
nlohmann::json snapshot(const AdicState& state);
nlohmann::json snapshot(const BasicAdicState& state);

}  // namespace cinf
