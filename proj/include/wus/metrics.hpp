#pragma once

#include <cstddef>

#include "wus/model.hpp"
#include "wus/types.hpp"

namespace wus {

struct PowerDelayPoint {
  double power = 0.0;  ///< mW
  double delay = 0.0;  ///< ms
};

/// Partial derivatives with respect to the wake-up cycle and inactivity timer.
struct Gradient2 {
  double d_tw = 0.0;
  double d_ti = 0.0;
};

/// Delay from the misdetection series together with its truncation state.
struct DelayEstimate {
  double delay = 0.0;      ///< ms
  std::size_t terms = 0;   ///< series terms summed
  double tail_mass = 0.0;  ///< P_md^terms, the probability mass left out
  bool truncated = false;  ///< tail_mass exceeds kSeriesTailTolerance
};

inline constexpr double kSeriesTailTolerance = 1e-12;

/// Time-average power of the full semi-Markov model, in mW.
///
/// Start-up and power-down are linear ramps between the sleep level and the
/// active level, so each contributes t * pw4 + t * (pw_active - pw4) / 2. With
/// pw4 = 0 this is exactly the triangle-area form.
///
/// The profile needs only finite non-negative levels here; the strict
/// ordering of PowerProfile::validate() is not required.
double average_power_full(const PowerProfile& profile, const TimingParams& timing,
                          const TrafficModel& traffic, const ChannelErrorModel& channel,
                          const WuConfig& cfg);

/// Closed form of the full model with t_on, pw4, P_fa and P_md set to zero.
/// Uses pw3 and phi = pw2 / pw3 from the profile.
double average_power_simplified(const PowerProfile& profile, const TimingParams& timing,
                                const TrafficModel& traffic, const WuConfig& cfg);

/// Exact partial derivatives of average_power_simplified().
Gradient2 power_gradient(const PowerProfile& profile, const TimingParams& timing,
                         const TrafficModel& traffic, const WuConfig& cfg);

/// Average buffering delay including consecutive misdetections, summing
/// series_terms terms of the geometric series.
DelayEstimate average_delay_full(const TimingParams& timing, const TrafficModel& traffic,
                                 const ChannelErrorModel& channel, const WuConfig& cfg,
                                 std::size_t series_terms);

/// Same, truncating once the omitted tail mass drops below 1e-12.
DelayEstimate average_delay_full(const TimingParams& timing, const TrafficModel& traffic,
                                 const ChannelErrorModel& channel, const WuConfig& cfg);

/// Single-term delay with the misdetection-free stationary law. A lower
/// bound of average_delay_full().
double average_delay_simplified(const TimingParams& timing, const TrafficModel& traffic,
                                const WuConfig& cfg);

Gradient2 delay_gradient(const TimingParams& timing, const TrafficModel& traffic,
                         const WuConfig& cfg);

}  // namespace wus
