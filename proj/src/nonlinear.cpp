#include "cinf/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "cinf/simd/kernels.hpp"

namespace cinf {

double blank(double x, const BlankingRange& range) noexcept { return range.contains(x) ? x : 0.0; }

double hard_clip(double x, double v_c) {
  if (!(v_c > 0.0)) throw InvalidArgument("clip level must be positive");
  return std::min(std::max(x, -v_c), v_c);
}

Signal hard_clip(const Signal& s, double v_c) {
  if (!(v_c > 0.0)) throw InvalidArgument("clip level must be positive");
  std::vector<double> out(s.size());
  simd::active().clip(s.samples().data(), v_c, out.data(), out.size());
  return Signal(std::move(out), s.sample_rate());
}

void QtfState::validate() const {
  if (!(q > 0.0 && q < 1.0)) throw InvalidArgument("QTF quantile must lie in (0, 1)");
  if (!(step_gain > 0.0) || !std::isfinite(step_gain)) throw InvalidArgument("QTF step gain must be positive");
  if (!std::isfinite(estimate)) throw InvalidArgument("QTF estimate must be finite");
}

double qtf_step(QtfState& state, double x) noexcept {
  const double sign = x > state.estimate ? 1.0 : (x < state.estimate ? -1.0 : 0.0);
  state.estimate += state.step_gain * (sign + 2.0 * state.q - 1.0);
  return state.estimate;
}

BlankingRange tukey_fences(double q1, double q3, double beta) noexcept {
  const double iqr = q3 - q1;
  return {q1 - beta * iqr, q3 + beta * iqr};
}

void FenceParams::validate() const {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw InvalidArgument("fence beta must be non-negative");
  if (!(initial_scale >= 0.0) || !std::isfinite(initial_scale))
    throw InvalidArgument("initial scale must be non-negative");
  if (!(gain_fraction > 0.0)) throw InvalidArgument("gain fraction must be positive");
  if (!(scale_smoothing > 0.0 && scale_smoothing <= 1.0)) throw InvalidArgument("scale smoothing must lie in (0, 1]");
  if (!(min_step_gain > 0.0)) throw InvalidArgument("minimum step gain must be positive");
  if (fixed_step_gain && !(*fixed_step_gain > 0.0)) throw InvalidArgument("fixed step gain must be positive");
}

TukeyFenceTracker::TukeyFenceTracker(FenceParams params) : params_(params) {
  params_.validate();
  q1_ = {0.25, params_.fixed_step_gain.value_or(params_.min_step_gain), 0.0};
  q3_ = {0.75, q1_.step_gain, 0.0};
}

TukeyFenceTracker::TukeyFenceTracker(FenceParams params, double q1, double q3) : TukeyFenceTracker(params) {
  if (!std::isfinite(q1) || !std::isfinite(q3)) throw InvalidArgument("quartile seeds must be finite");
  q1_.estimate = q1;
  q3_.estimate = q3;
  scale_ = std::max(0.0, q3 - q1);
  initialised_ = true;
  refresh_gain();
}

void TukeyFenceTracker::refresh_gain() noexcept {
  const double mu = params_.fixed_step_gain.value_or(std::max(params_.gain_fraction * scale_, params_.min_step_gain));
  q1_.step_gain = mu;
  q3_.step_gain = mu;
}

BlankingRange TukeyFenceTracker::update(double x) {
  if (!initialised_) {
    q1_.estimate = x - params_.initial_scale;
    q3_.estimate = x + params_.initial_scale;
    scale_ = 2.0 * params_.initial_scale;
    initialised_ = true;
    refresh_gain();
  }
  qtf_step(q1_, x);
  qtf_step(q3_, x);
  scale_ += params_.scale_smoothing * (std::max(0.0, q3_.estimate - q1_.estimate) - scale_);
  refresh_gain();
  return tukey_fences(*this);
}

BlankingRange tukey_fences(const TukeyFenceTracker& tracker) noexcept {
  return tukey_fences(tracker.q1().estimate, tracker.q3().estimate, tracker.beta());
}

AdicState::AdicState(double tau, FenceParams fences) : tau_(tau), tracker_(TukeyFenceTracker(fences)) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("ADiC tau must be positive");
}

AdicState AdicState::with_fixed_range(double tau, BlankingRange range) {
  if (std::isnan(range.lower) || std::isnan(range.upper)) throw InvalidArgument("blanking range must not be NaN");
  AdicState s(tau, FenceParams{});
  s.tracker_.reset();
  s.range_ = range;
  return s;
}

double adic_step(AdicState& state, double x, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("ADiC step needs dt > 0");
  const double k = dt / state.tau_;
  if (k > 1.0) throw InvalidArgument("ADiC dt/tau > 1 is an unstable discretisation");
  if (!state.initialised_) {
    state.chi_ = x;
    state.initialised_ = true;
  }
  const double d = x - state.chi_;
  if (state.tracker_) state.range_ = state.tracker_->update(d);
  ++state.stats_.samples;
  if (state.range_.inverted()) ++state.stats_.inverted;
  state.in_range_ = state.range_.contains(d);
  if (!state.in_range_) {
    ++state.stats_.blanked;
    return state.chi_;
  }
  // y = chi + B(d) with B(d) = d; returning x directly keeps pass-through exact.
  state.chi_ += k * d;
  return x;
}

BasicAdicState::BasicAdicState(FenceParams fences) : tracker_(fences) {}

BasicAdicState::BasicAdicState(FenceParams fences, double q1, double q3) : tracker_(fences, q1, q3) {
  range_ = tukey_fences(tracker_);
}

double basic_adic_step(BasicAdicState& state, double x) {
  TukeyFenceTracker& t = state.tracker_;
  if (!t.initialised()) {
    t = TukeyFenceTracker(t.params(), x - t.params().initial_scale, x + t.params().initial_scale);
  }
  state.range_ = tukey_fences(t);
  const double mid = 0.5 * (t.q1().estimate + t.q3().estimate);
  ++state.stats_.samples;
  if (state.range_.inverted()) ++state.stats_.inverted;
  state.in_range_ = state.range_.contains(x);
  t.update(x);
  if (state.in_range_) return x;
  ++state.stats_.blanked;
  return mid;
}

namespace {

template <typename State, typename Step, typename Chi>
NonlinearRun run_stream(const Signal& input, State& state, Step step, Chi chi, bool record) {
  std::vector<double> out(input.size());
  std::vector<TelemetrySample> telemetry;
  if (record) telemetry.reserve(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) {
    out[i] = step(state, input[i]);
    if (record) {
      const BlankingRange& r = state.last_range();
      telemetry.push_back({i, state.last_in_range(), chi(state), r.lower, r.upper});
    }
  }
  return NonlinearRun{Signal(std::move(out), input.sample_rate()), state.stats(), std::move(telemetry)};
}

}  // namespace

NonlinearRun run_adic(const Signal& input, AdicState state, bool record_telemetry) {
  const double dt = 1.0 / input.sample_rate();
  return run_stream(
      input, state, [dt](AdicState& s, double x) { return adic_step(s, x, dt); },
      [](const AdicState& s) { return s.chi(); }, record_telemetry);
}

NonlinearRun run_basic_adic(const Signal& input, BasicAdicState state, bool record_telemetry) {
  return run_stream(
      input, state, [](BasicAdicState& s, double x) { return basic_adic_step(s, x); },
      [](const BasicAdicState& s) {
        return 0.5 * (s.tracker().q1().estimate + s.tracker().q3().estimate);
      },
      record_telemetry);
}

void write_telemetry_csv(std::span<const TelemetrySample> rows, std::ostream& out) {
  out << "index,in_range,chi,lower,upper\n";
  out.precision(17);
  for (const TelemetrySample& r : rows)
    out << r.index << ',' << (r.in_range ? 1 : 0) << ',' << r.chi << ',' << r.lower << ',' << r.upper << '\n';
}

namespace {
// JSON has no infinity; an unbounded fence is written as null.
nlohmann::json bound(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

nlohmann::json stats_json(const NonlinearStats& s) {
  return {{"samples", s.samples}, {"blanked", s.blanked}, {"inverted", s.inverted}};
}
}  // namespace

nlohmann::json snapshot(const QtfState& state) {
  return {{"q", state.q}, {"step_gain", state.step_gain}, {"estimate", state.estimate}};
}

nlohmann::json snapshot(const TukeyFenceTracker& tracker) {
  const BlankingRange r = tukey_fences(tracker);
  return {{"q1", snapshot(tracker.q1())},
          {"q3", snapshot(tracker.q3())},
          {"beta", tracker.beta()},
          {"scale", tracker.scale()},
          {"initialised", tracker.initialised()},
          {"fences", {bound(r.lower), bound(r.upper)}}};
}

nlohmann::json snapshot(const AdicState& state) {
  nlohmann::json j{{"tau", state.tau()},
                   {"chi", state.chi()},
                   {"initialised", state.initialised()},
                   {"range", {bound(state.last_range().lower), bound(state.last_range().upper)}},
                   {"stats", stats_json(state.stats())}};
  if (state.tracker()) j["tracker"] = snapshot(*state.tracker());
  return j;
}

nlohmann::json snapshot(const BasicAdicState& state) {
  return {{"tracker", snapshot(state.tracker())},
          {"range", {bound(state.last_range().lower), bound(state.last_range().upper)}},
          {"stats", stats_json(state.stats())}};
}

}  // namespace cinf
