#include "wus/model.hpp"

#include <cmath>

#include "wus/errors.hpp"

namespace wus {

TransitionMatrix transition_probabilities(const TrafficModel& traffic, const TimingParams& timing,
                                          const ChannelErrorModel& channel, const WuConfig& cfg) {
  timing.validate();
  traffic.validate(timing);
  channel.validate();
  cfg.validate(timing);

  const double lambda = traffic.lambda;
  const double no_arrival = std::exp(-lambda * cfg.t_w);
  const double p12 = no_arrival * channel.p_fa +
                     detail::one_minus_exp(lambda * cfg.t_w) * (1.0 - channel.p_md);
  const double p22 = detail::one_minus_exp(lambda * timing.t_s);
  const double p32 = detail::one_minus_exp(lambda * cfg.t_i);

  TransitionMatrix p{};
  p[idx(State::WrxOn)][idx(State::Decode)] = p12;
  p[idx(State::WrxOn)][idx(State::Sleep)] = 1.0 - p12;
  p[idx(State::Decode)][idx(State::Decode)] = p22;
  p[idx(State::Decode)][idx(State::Inactivity)] = std::exp(-lambda * timing.t_s);
  p[idx(State::Inactivity)][idx(State::Decode)] = p32;
  p[idx(State::Inactivity)][idx(State::Sleep)] = std::exp(-lambda * cfg.t_i);
  p[idx(State::Sleep)][idx(State::WrxOn)] = 1.0;
  return p;
}

StateVector steady_state(const TransitionMatrix& p) {
  const double p12 = p[idx(State::WrxOn)][idx(State::Decode)];
  const double p23 = p[idx(State::Decode)][idx(State::Inactivity)];
  const double p34 = p[idx(State::Inactivity)][idx(State::Sleep)];
  if (!(p23 > 0.0) || !(p34 > 0.0)) {
    throw SingularChain("embedded chain is absorbed in the active states (P23 or P34 is zero)");
  }

  const double pi1 = p34 * p23 / (2.0 * p34 * p23 + p12 * (1.0 + p23));
  StateVector pi{};
  pi[idx(State::WrxOn)] = pi1;
  pi[idx(State::Decode)] = pi1 * p12 / (p23 * p34);
  pi[idx(State::Inactivity)] = pi1 * p12 / p34;
  pi[idx(State::Sleep)] = pi1;
  for (double v : pi) {
    if (!std::isfinite(v)) throw SingularChain("stationary law is not finite");
  }
  return pi;
}

StateVector expected_holding_times(const TrafficModel& traffic, const TimingParams& timing,
                                   const WuConfig& cfg) {
  timing.validate();
  traffic.validate(timing);
  cfg.validate(timing);

  StateVector hold{};
  hold[idx(State::WrxOn)] = timing.t_on;
  hold[idx(State::Decode)] = timing.t_s;
  hold[idx(State::Inactivity)] = detail::one_minus_exp(traffic.lambda * cfg.t_i) / traffic.lambda;
  hold[idx(State::Sleep)] = cfg.t_w - timing.t_on;
  return hold;
}

SemiMarkovSummary summarize(const TrafficModel& traffic, const TimingParams& timing,
                            const ChannelErrorModel& channel, const WuConfig& cfg) {
  SemiMarkovSummary s;
  s.p = transition_probabilities(traffic, timing, channel, cfg);
  s.pi = steady_state(s.p);
  s.hold = expected_holding_times(traffic, timing, cfg);
  return s;
}

}  // namespace wus
