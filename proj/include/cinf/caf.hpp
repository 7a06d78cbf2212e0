#pragma once

// Composite pipelines.
//
// Complementary ADiC filtering (CAF): the input is split by a complementary
// bandpass/bandstop pair; the bandstop branch (which carries the excess band)
// goes through a feedback ADiC and is added back to the bandpass branch.
// Stages are labelled I..V:
//   I   input            II  bandpass(I)
//   III bandstop(I)      IV  ADiC(III)       V  II + IV
//
// The digital front end puts a gain/clip stage, a 1-bit delta-sigma
// modulator and a reconstruction filter ahead of the CAF, and decimates its
// output to baseband.

#include <array>
#include <cstddef>
#include <optional>

#include "cinf/filters.hpp"
#include "cinf/nonlinear.hpp"
#include "cinf/signal.hpp"

namespace cinf {

struct AdicParams {
  double tau = 1e-4;  // seconds
  FenceParams fences;
  bool wide_range = false;  // allpass limit: never blanks

  AdicState make_state() const;
};

struct CafConfig {
  ComplementaryPair pair;
  AdicParams adic;
  bool enabled = true;

  /// Throws unless the pair is complementary at the tap level.
  void validate() const;
};

/// Chirp-style configuration: high edge at the highest signal frequency f_c,
/// low edge at f_c / 5.
CafConfig chirp_caf_config(double f_c, double rate, std::size_t n_taps, AdicParams adic);

struct CafStages {
  Signal input;
  Signal bandpass;
  Signal bandstop;
  Signal adic;
  Signal output;
};

struct CafResult {
  Signal output;
  NonlinearStats stats;
  std::optional<CafStages> stages;
};

/// output = bandpass(input) + ADiC(bandstop(input)). With enabled == false the
/// ADiC branch is a pass-through, so both settings share the delay D.
CafResult caf_run(const Signal& input, const CafConfig& config, bool keep_stages = false);
Signal caf_process(const Signal& input, const CafConfig& config);

struct DeltaSigmaState {
  int order = 2;
  std::array<double, 2> integrators{0.0, 0.0};
  double last_output = 0.0;
  double input_full_scale = 1.0;
  std::size_t saturations = 0;  // input samples beyond full scale

  void validate() const;
};

/// 1-bit modulator with cascaded unit-delay-feedback integrators:
///   u1 += x - y[n-1];  u2 += u1 - y[n-1];  y = sgn(u2)   (order 2)
///   u1 += x - y[n-1];  y = sgn(u1)                     (order 1)
/// NTF (1 - z^-1)^order, unit STF. Output samples are exactly +/-1.
/// Inputs beyond full scale are counted in state.saturations.
Signal delta_sigma_modulate(const Signal& input, DeltaSigmaState& state);

/// Robust AGC: a variable gain followed by a clipper at +/-clip_level. A QTF
/// on |clipper output| is driven to `setpoint` by adjusting log(gain).
struct AgcState {
  double gain = 1.0;
  double setpoint = 0.25;
  double clip_level = 0.75;
  double adaptation_rate = 1e-3;  // max |change of log gain| per sample
  QtfState envelope{0.75, 2.5e-3, 0.0};
  std::size_t samples = 0;
  std::size_t clipped = 0;

  void validate() const;
  double clip_rate() const noexcept {
    return samples == 0 ? 0.0 : static_cast<double>(clipped) / static_cast<double>(samples);
  }
};

/// Returns gain * x (before clipping); updates the envelope QTF with
/// |hard_clip(gain * x)| and then log(gain) += eta * clamp((setpoint - Q) / setpoint, -1, 1).
double agc_step(AgcState& state, double x);

struct FrontEndChain {
  std::optional<AgcState> agc;              // gain + clip; absent: unity gain
  std::optional<double> clip_level;         // clipper used when agc is absent
  std::optional<DeltaSigmaState> modulator; // absent: ideal pass-through
  FilterKernel pre_caf = FilterKernel::identity();
  CafConfig caf;
  std::size_t decimation_factor = 1;
  FilterKernel decimation_kernel = FilterKernel::identity();
};

struct FrontEndResult {
  Signal baseband;
  NonlinearStats caf_stats;
  std::size_t clipped = 0;
  std::size_t saturations = 0;
  double final_gain = 1.0;
  /// Integer linear delay at the input rate: pre-CAF + CAF (modulator and
  /// decimation kernel excluded).
  std::size_t pre_decimation_delay = 0;
};

/// gain -> clip -> modulate -> pre-CAF filter -> CAF -> decimate.
/// A failing stage is reported as StageError naming that stage.
FrontEndResult digital_front_end(const Signal& input, const FrontEndChain& chain);

}  // namespace cinf
