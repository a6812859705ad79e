#include "wus/metrics.hpp"

#include <cmath>
#include <limits>

#include "wus/errors.hpp"

namespace wus {

namespace {

void check_profile(const PowerProfile& p) {
  for (double v : {p.pw1, p.pw2, p.pw3, p.pw4}) {
    if (!std::isfinite(v) || v < 0.0) throw InvalidArgument("power levels must be finite and >= 0");
  }
  if (!(p.pw3 > 0.0)) throw InvalidArgument("pw3 must be positive");
}

void check_inputs(const TimingParams& timing, const TrafficModel& traffic, const WuConfig& cfg) {
  timing.validate();
  traffic.validate(timing);
  cfg.validate(timing);
}

// 1 - (1 + x) e^{-x}
double one_minus_poly_exp(double x) {
  if (std::abs(x) < 1e-2) {
    return x * x * (0.5 - x * (1.0 / 3 - x * (1.0 / 8 - x * (1.0 / 30 - x / 144.0))));
  }
  return detail::one_minus_exp(x) - x * std::exp(-x);
}

// Pieces of the simplified power expression, everything divided by
// e^{lambda t_i} so that large timers do not overflow.
struct PowerTerms {
  double e_inv;    // e^{-lambda t_i}
  double b;        // t_s e^{lambda t_s} + 1/lambda
  double b_phi;    // phi t_s e^{lambda t_s} + 1/lambda
  double a;        // (phi t_su + t_pd)/2 - 1/lambda
  double q;        // t_w / (1 - e^{-lambda t_w}) + t_su + t_pd - 1/lambda
  double x;        // 1 - e^{-lambda t_w}
  double num;      // numerator / e^{lambda t_i}
  double den;      // denominator / e^{lambda t_i}
};

PowerTerms power_terms(const PowerProfile& profile, const TimingParams& timing,
                       const TrafficModel& traffic, const WuConfig& cfg) {
  const double l = traffic.lambda;
  const double phi = profile.phi();
  const double es = std::exp(l * timing.t_s);
  PowerTerms t{};
  t.e_inv = std::exp(-l * cfg.t_i);
  t.b = timing.t_s * es + 1.0 / l;
  t.b_phi = phi * timing.t_s * es + 1.0 / l;
  t.a = 0.5 * (phi * timing.t_su + timing.t_pd) - 1.0 / l;
  t.x = detail::one_minus_exp(l * cfg.t_w);
  // t_w / x - 1/lambda, written to avoid cancellation when lambda t_w is small
  const double excess = detail::x_minus_one_minus_exp(l * cfg.t_w) / (l * t.x);
  t.q = excess + timing.t_su + timing.t_pd;
  t.num = t.b_phi + t.a * t.e_inv;
  t.den = t.b + t.q * t.e_inv;
  return t;
}

}  // namespace

double average_power_full(const PowerProfile& profile, const TimingParams& timing,
                          const TrafficModel& traffic, const ChannelErrorModel& channel,
                          const WuConfig& cfg) {
  check_profile(profile);
  const SemiMarkovSummary s = summarize(traffic, timing, channel, cfg);

  const double wake = s.stationary(State::WrxOn) * s.prob(State::WrxOn, State::Decode);
  const double sleep = s.stationary(State::Inactivity) * s.prob(State::Inactivity, State::Sleep);
  const StateVector levels{profile.pw1, profile.pw2, profile.pw3, profile.pw4};

  double energy = wake * timing.t_su * (profile.pw4 + 0.5 * (profile.pw2 - profile.pw4)) +
                  sleep * timing.t_pd * (profile.pw4 + 0.5 * (profile.pw3 - profile.pw4));
  double time = wake * timing.t_su + sleep * timing.t_pd;
  for (std::size_t k = 0; k < kStates; ++k) {
    energy += s.pi[k] * s.hold[k] * levels[k];
    time += s.pi[k] * s.hold[k];
  }
  return energy / time;
}

double average_power_simplified(const PowerProfile& profile, const TimingParams& timing,
                                const TrafficModel& traffic, const WuConfig& cfg) {
  check_profile(profile);
  check_inputs(timing, traffic, cfg);
  const PowerTerms t = power_terms(profile, timing, traffic, cfg);
  return profile.pw3 * t.num / t.den;
}

Gradient2 power_gradient(const PowerProfile& profile, const TimingParams& timing,
                         const TrafficModel& traffic, const WuConfig& cfg) {
  check_profile(profile);
  check_inputs(timing, traffic, cfg);
  const double l = traffic.lambda;
  const PowerTerms t = power_terms(profile, timing, traffic, cfg);

  Gradient2 g;
  // d/dt_i: pw3 * lambda * e^{lambda t_i} (b_phi q - b a) / den^2
  const double cross = t.b_phi * (t.q) - t.b * t.a;
  g.d_ti = profile.pw3 * l * cross * t.e_inv / (t.den * t.den);
  // d/dt_w: -pw3 * (1 - (1 + lambda t_w) e^{-lambda t_w}) num / (x den)^2
  const double y = one_minus_poly_exp(l * cfg.t_w);
  g.d_tw = -profile.pw3 * y * t.num * t.e_inv / (t.x * t.x * t.den * t.den);
  return g;
}

DelayEstimate average_delay_full(const TimingParams& timing, const TrafficModel& traffic,
                                 const ChannelErrorModel& channel, const WuConfig& cfg,
                                 std::size_t series_terms) {
  if (series_terms < 1) throw InvalidArgument("series_terms must be at least 1");
  const SemiMarkovSummary s = summarize(traffic, timing, channel, cfg);
  const double l = traffic.lambda;
  const double x = detail::one_minus_exp(l * cfg.t_w);
  const double y = one_minus_poly_exp(l * cfg.t_w);

  // i-th term: (1 - P_md) P_md^i * integral_0^{t_w} lambda e^{-lambda t} (c_i - t) dt
  //          = (1 - P_md) P_md^i * (c_i x - y / lambda),  c_i = (i+1) t_w + t_su + t_on
  double sum = 0.0;
  double weight = 1.0 - channel.p_md;
  for (std::size_t i = 0; i < series_terms; ++i) {
    const double c = static_cast<double>(i + 1) * cfg.t_w + timing.t_su + timing.t_on;
    sum += weight * (c * x - y / l);
    weight *= channel.p_md;
    if (weight == 0.0) break;
  }

  DelayEstimate out;
  out.terms = series_terms;
  out.tail_mass = std::pow(channel.p_md, static_cast<double>(series_terms));
  out.truncated = out.tail_mass > kSeriesTailTolerance;
  out.delay = s.stationary(State::Sleep) * sum + 0.5 * timing.t_s;
  return out;
}

DelayEstimate average_delay_full(const TimingParams& timing, const TrafficModel& traffic,
                                 const ChannelErrorModel& channel, const WuConfig& cfg) {
  channel.validate();
  std::size_t terms = 1;
  if (channel.p_md > 0.0) {
    terms = static_cast<std::size_t>(
        std::ceil(std::log(kSeriesTailTolerance) / std::log(channel.p_md)));
    if (terms < 1) terms = 1;
  }
  return average_delay_full(timing, traffic, channel, cfg, terms);
}

double average_delay_simplified(const TimingParams& timing, const TrafficModel& traffic,
                                const WuConfig& cfg) {
  check_inputs(timing, traffic, cfg);
  const double l = traffic.lambda;
  const double x = detail::one_minus_exp(l * cfg.t_w);
  const double e_inv = std::exp(-l * cfg.t_i);
  const double a = 1.0 + std::exp(l * timing.t_s);
  // t_w + (t_su - 1/lambda) x
  const double numer = timing.t_su * x + detail::x_minus_one_minus_exp(l * cfg.t_w) / l;
  return numer * e_inv / (2.0 * e_inv + x * a) + 0.5 * timing.t_s;
}

Gradient2 delay_gradient(const TimingParams& timing, const TrafficModel& traffic,
                         const WuConfig& cfg) {
  check_inputs(timing, traffic, cfg);
  const double l = traffic.lambda;
  const double x = detail::one_minus_exp(l * cfg.t_w);
  const double y = one_minus_poly_exp(l * cfg.t_w);
  const double e_inv = std::exp(-l * cfg.t_i);
  const double a = 1.0 + std::exp(l * timing.t_s);
  const double numer = timing.t_su * x + detail::x_minus_one_minus_exp(l * cfg.t_w) / l;
  // Denominator 2 + x a e^{lambda t_i}, scaled by e^{-lambda t_i}.
  const double g = 2.0 * e_inv + x * a;

  Gradient2 out;
  out.d_tw = (a * y * e_inv + (2.0 * x + 2.0 * l * timing.t_su * std::exp(-l * cfg.t_w)) *
                                  e_inv * e_inv) /
             (g * g);
  out.d_ti = -l * a * x * numer * e_inv / (g * g);
  return out;
}

}  // namespace wus
