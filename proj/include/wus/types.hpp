#pragma once

#include <cmath>

namespace wus {

/// Power drawn by the cellular module in each state, in mW.
///
/// pw1: wake-up receiver monitoring (WRx-ON)
/// pw2: baseband active, decoding
/// pw3: baseband active, inactivity timer running
/// pw4: sleep
struct PowerProfile {
  double pw1 = 57.0;
  double pw2 = 935.0;
  double pw3 = 850.0;
  double pw4 = 0.0;

  double phi() const { return pw2 / pw3; }

  /// Enforces pw2 >= pw3 > pw1 > pw4 >= 0.
  void validate() const;

  /// Reference wake-up profile; pw2 is derived as phi * pw3.
  static PowerProfile reference(double phi = 1.1);
};

/// Fixed timing of the wake-up procedure, all in ms.
struct TimingParams {
  double t_su = 15.0;
  double t_pd = 10.0;
  double t_on = 1.0 / 14.0;
  double t_s = 1.0;
  double tti = 1.0;

  void validate() const;

  /// Reference timing at the given TTI. Service time equals one TTI.
  static TimingParams reference(double tti = 1.0);
  /// Same as reference() with the on-duration zeroed, as the analytical
  /// simplifications assume.
  static TimingParams ideal(double tti = 1.0);
};

/// Poisson downlink traffic. lambda is in packets per ms.
struct TrafficModel {
  double lambda = 0.01;

  double per_tti(const TimingParams& timing) const { return lambda * timing.tti; }
  void validate(const TimingParams& timing) const;
};

/// Wake-up signalling error probabilities.
struct ChannelErrorModel {
  double p_fa = 0.0;
  double p_md = 0.0;

  void validate() const;

  static ChannelErrorModel ideal() { return {0.0, 0.0}; }
  static ChannelErrorModel realistic() { return {0.1, 0.01}; }
};

/// Wake-up cycle and inactivity timer, in ms.
struct WuConfig {
  double t_w = 100.0;
  double t_i = 1.0;
  bool integral = false;  ///< both values are whole multiples of the TTI

  void validate(const TimingParams& timing) const;
};

/// Maximum tolerable average buffering delay.
struct Constraint {
  double d_max = 30.0;

  /// Delay budget above the unavoidable half-TTI alignment offset.
  double margin(const TimingParams& timing) const { return d_max - 0.5 * timing.t_s; }
  void validate(const TimingParams& timing) const;
};

namespace detail {

/// x - (1 - e^{-x}) without cancellation for small x.
inline double x_minus_one_minus_exp(double x) {
  if (std::abs(x) < 1e-2) {
    // x^2/2 - x^3/6 + x^4/24 - x^5/120 + x^6/720
    return x * x * (0.5 - x * (1.0 / 6 - x * (1.0 / 24 - x * (1.0 / 120 - x / 720.0))));
  }
  return x + std::expm1(-x);
}

/// 1 - e^{-x}
inline double one_minus_exp(double x) { return -std::expm1(-x); }

}  // namespace detail

}  // namespace wus
