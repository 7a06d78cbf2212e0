#include "cinf/caf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cinf {

AdicState AdicParams::make_state() const {
  if (wide_range) return AdicState::with_fixed_range(tau, BlankingRange::wide());
  return AdicState(tau, fences);
}

void CafConfig::validate() const {
  const auto bp = pair.bandpass.taps();
  const auto bs = pair.bandstop.taps();
  if (pair.bandpass.form() != KernelForm::fir_taps || pair.bandstop.form() != KernelForm::fir_taps)
    throw InvalidArgument("CAF pair must be FIR");
  if (bp.size() != bs.size() || bp.empty()) throw InvalidArgument("CAF pair tap counts differ");
  if (pair.shared_delay >= bp.size()) throw InvalidArgument("CAF shared delay outside the kernel");
  if (!(pair.sample_rate > 0.0)) throw InvalidArgument("CAF pair has no sample rate");
  for (std::size_t i = 0; i < bp.size(); ++i) {
    const double want = i == pair.shared_delay ? 1.0 : 0.0;
    if (std::abs(bp[i] + bs[i] - want) > 1e-12) throw InvalidArgument("CAF pair is not complementary");
  }
  if (!(adic.tau > 0.0) || !std::isfinite(adic.tau)) throw InvalidArgument("ADiC tau must be positive");
  if (adic.tau * pair.sample_rate < 1.0) throw InvalidArgument("ADiC tau shorter than one sample");
  adic.fences.validate();
}

CafConfig chirp_caf_config(double f_c, double rate, std::size_t n_taps, AdicParams adic) {
  CafConfig c;
  c.pair = design_complementary_pair(f_c / 5.0, f_c, rate, n_taps);
  c.adic = adic;
  return c;
}

CafResult caf_run(const Signal& input, const CafConfig& config, bool keep_stages) {
  config.validate();
  if (input.sample_rate() != config.pair.sample_rate)
    throw MismatchError("CAF input rate differs from the filter design rate");

  Signal bp = apply(config.pair.bandpass, input);
  Signal bs = apply(config.pair.bandstop, input);
  CafResult r{Signal::zeros(0, input.sample_rate()), {}, std::nullopt};
  Signal branch = bs;
  if (config.enabled) {
    NonlinearRun run = run_adic(bs, config.adic.make_state());
    r.stats = run.stats;
    branch = std::move(run.output);
  } else {
    r.stats.samples = input.size();
  }
  r.output = add(bp, branch);
  if (keep_stages) r.stages = CafStages{input, std::move(bp), std::move(bs), std::move(branch), r.output};
  return r;
}

Signal caf_process(const Signal& input, const CafConfig& config) { return caf_run(input, config).output; }

void DeltaSigmaState::validate() const {
  if (order != 1 && order != 2) throw InvalidArgument("delta-sigma order must be 1 or 2");
  if (!(input_full_scale > 0.0)) throw InvalidArgument("delta-sigma full scale must be positive");
}

Signal delta_sigma_modulate(const Signal& input, DeltaSigmaState& state) {
  state.validate();
  std::vector<double> out(input.size());
  double u1 = state.integrators[0], u2 = state.integrators[1], y = state.last_output;
  const double fs = state.input_full_scale;
  for (std::size_t i = 0; i < input.size(); ++i) {
    const double x = input[i];
    if (std::abs(x) > fs) ++state.saturations;
    u1 += x / fs - y;
    if (state.order == 2) {
      u2 += u1 - y;
      y = u2 >= 0.0 ? 1.0 : -1.0;
    } else {
      y = u1 >= 0.0 ? 1.0 : -1.0;
    }
    out[i] = y;
  }
  state.integrators = {u1, u2};
  state.last_output = y;
  return Signal(std::move(out), input.sample_rate());
}

void AgcState::validate() const {
  if (!(gain > 0.0) || !std::isfinite(gain)) throw InvalidArgument("AGC gain must be positive");
  if (!(setpoint > 0.0)) throw InvalidArgument("AGC setpoint must be positive");
  if (!(clip_level > setpoint)) throw InvalidArgument("AGC clip level must exceed the setpoint");
  if (!(adaptation_rate >= 0.0 && adaptation_rate < 1.0)) throw InvalidArgument("AGC adaptation rate must lie in [0, 1)");
  envelope.validate();
}

double agc_step(AgcState& state, double x) {
  const double y = state.gain * x;
  const double clipped = std::clamp(y, -state.clip_level, state.clip_level);
  ++state.samples;
  if (clipped != y) ++state.clipped;
  const double q = qtf_step(state.envelope, std::abs(clipped));
  const double err = std::clamp((state.setpoint - q) / state.setpoint, -1.0, 1.0);
  state.gain *= std::exp(state.adaptation_rate * err);
  return y;
}

namespace {

template <typename F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

}  // namespace

FrontEndResult digital_front_end(const Signal& input, const FrontEndChain& chain) {
  FrontEndResult r{Signal::zeros(0, input.sample_rate()), {}};
  Signal x = input;

  if (chain.agc) {
    x = stage("agc", [&] {
      AgcState agc = *chain.agc;
      agc.validate();
      std::vector<double> out(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::clamp(agc_step(agc, x[i]), -agc.clip_level, agc.clip_level);
      r.clipped = agc.clipped;
      r.final_gain = agc.gain;
      return Signal(std::move(out), x.sample_rate());
    });
  } else if (chain.clip_level) {
    x = stage("clip", [&] {
      Signal c = hard_clip(x, *chain.clip_level);
      for (std::size_t i = 0; i < x.size(); ++i)
        if (c[i] != x[i]) ++r.clipped;
      return c;
    });
  }

  if (chain.modulator) {
    x = stage("delta-sigma", [&] {
      DeltaSigmaState m = *chain.modulator;
      Signal out = delta_sigma_modulate(x, m);
      r.saturations = m.saturations;
      return out;
    });
  }

  x = stage("pre-caf", [&] { return apply(chain.pre_caf, x); });

  x = stage("caf", [&] {
    CafResult c = caf_run(x, chain.caf);
    r.caf_stats = c.stats;
    return std::move(c.output);
  });

  r.pre_decimation_delay =
      static_cast<std::size_t>(std::llround(chain.pre_caf.nominal_group_delay())) + chain.caf.pair.shared_delay;
  r.baseband = stage("decimate", [&] { return decimate(x, chain.decimation_factor, chain.decimation_kernel); });
  return r;
}

}  // namespace cinf
