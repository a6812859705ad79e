#pragma once

#include <array>
#include <cstddef>

#include "wus/types.hpp"

namespace wus {

/// States of the wake-up machine, in embedded-chain order.
enum class State : std::size_t { WrxOn = 0, Decode = 1, Inactivity = 2, Sleep = 3 };

inline constexpr std::size_t kStates = 4;

inline constexpr std::size_t idx(State s) { return static_cast<std::size_t>(s); }

using StateVector = std::array<double, kStates>;
using TransitionMatrix = std::array<StateVector, kStates>;

/// Embedded-chain transition matrix, stationary law and mean sojourn times.
struct SemiMarkovSummary {
  TransitionMatrix p{};
  StateVector pi{};
  StateVector hold{};  ///< ms

  double prob(State from, State to) const { return p[idx(from)][idx(to)]; }
  double stationary(State s) const { return pi[idx(s)]; }
  double holding(State s) const { return hold[idx(s)]; }
};

/// Jump probabilities between the four states. Only P12, P14, P22, P23,
/// P32, P34 and P41 are non-zero.
TransitionMatrix transition_probabilities(const TrafficModel& traffic, const TimingParams& timing,
                                          const ChannelErrorModel& channel, const WuConfig& cfg);

/// Closed-form stationary law of the embedded chain. Throws SingularChain
/// when P23 or P34 is zero.
StateVector steady_state(const TransitionMatrix& p);

/// Mean sojourn time per state: t_on, t_s, (1 - e^{-lambda t_i}) / lambda,
/// t_w - t_on.
StateVector expected_holding_times(const TrafficModel& traffic, const TimingParams& timing,
                                   const WuConfig& cfg);

/// All three of the above.
SemiMarkovSummary summarize(const TrafficModel& traffic, const TimingParams& timing,
                            const ChannelErrorModel& channel, const WuConfig& cfg);

}  // namespace wus
