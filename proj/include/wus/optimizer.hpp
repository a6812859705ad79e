#pragma once

#include <optional>
#include <string_view>

#include "wus/types.hpp"

namespace wus {

/// Rational form of the power along the delay boundary:
/// pw3 * (u1 + u2 t_w + u3 e^{-lambda t_w}) / (w1 + w2 t_w + w3 e^{-lambda t_w}).
struct BoundaryCoefficients {
  double u1 = 0.0, u2 = 0.0, u3 = 0.0;
  double w1 = 0.0, w2 = 0.0, w3 = 0.0;
  double lambda = 0.0;  ///< per ms, needed for the exponential terms
};

/// Sign of the boundary power slope is the sign of
/// Y(t_w) = f1 + (f2 - lambda f3 t_w) e^{-lambda t_w}.
struct AppendixConstants {
  double f1 = 0.0, f2 = 0.0, f3 = 0.0;
  double lambda = 0.0;

  double y(double t_w) const;
  /// f1 + f2 > 0, f2 + f3 > 0 and f1 > f3.
  bool inequalities_hold() const;
};

enum class BoundaryCase { A, B, C };
enum class Regime { WusEffective, WusIneffective };

std::string_view to_string(BoundaryCase c);
std::string_view to_string(Regime r);

/// A finite configuration for the regime where the true optimum is unbounded.
struct AdvisoryConfig {
  WuConfig cfg;
  double power = 0.0;  ///< mW
  double delay = 0.0;  ///< ms
};

struct OptimizationResult {
  double t_w_star = 0.0;  ///< ms, +inf when unbounded
  double t_i_star = 0.0;  ///< ms, +inf when unbounded
  Regime regime = Regime::WusEffective;
  double lambda_t = 0.0;  ///< per ms, +inf when F1 never changes sign
  double predicted_power = 0.0;  ///< mW
  double predicted_delay = 0.0;  ///< ms
  double t_wb = 0.0;             ///< ms
  std::optional<BoundaryCase> boundary_case;
  /// Stationary point of the boundary power in case C, if Y has a root.
  std::optional<double> t_ws;
  std::optional<AdvisoryConfig> advisory;

  bool unbounded() const;
};

/// Inactivity timer that puts the simplified delay exactly on d_max for the
/// given wake-up cycle. Throws Infeasible if no t_i >= 1 TTI does.
double boundary_inactivity_timer(double t_w, const TrafficModel& traffic,
                                 const TimingParams& timing, const Constraint& constraint);

/// Smallest wake-up cycle that meets d_max with t_i = 1 TTI, via Lambert W.
double min_boundary_wakeup_cycle(const TrafficModel& traffic, const TimingParams& timing,
                                 const Constraint& constraint);

BoundaryCoefficients boundary_coefficients(const PowerProfile& profile,
                                           const TimingParams& timing,
                                           const TrafficModel& traffic,
                                           const Constraint& constraint);

double boundary_power(double t_w, const BoundaryCoefficients& coeffs,
                      const PowerProfile& profile);

AppendixConstants appendix_constants(const PowerProfile& profile, const TimingParams& timing,
                                     const TrafficModel& traffic, const Constraint& constraint);

BoundaryCase classify_boundary_case(const AppendixConstants& constants);

/// Root of F1(lambda) on (0, 1/tti). Throws NoRoot if F1 keeps one sign.
double turnoff_arrival_rate(const PowerProfile& profile, const TimingParams& timing,
                            const Constraint& constraint);

OptimizationResult optimize(const PowerProfile& profile, const TimingParams& timing,
                            const TrafficModel& traffic, const Constraint& constraint);

/// Exhaustive search over whole-TTI (t_w, t_i) up to the given bounds,
/// minimizing the simplified power subject to the simplified delay bound.
/// Ties go to the smaller t_w, then the smaller t_i. Only t_w_star, t_i_star
/// and the predictions are filled; lambda_t and t_wb are NaN.
OptimizationResult grid_search_oracle(const PowerProfile& profile, const TimingParams& timing,
                                      const TrafficModel& traffic, const Constraint& constraint,
                                      double t_w_max, double t_i_max);

/// Single-threaded reference for grid_search_oracle().
OptimizationResult grid_search_oracle_serial(const PowerProfile& profile,
                                             const TimingParams& timing,
                                             const TrafficModel& traffic,
                                             const Constraint& constraint, double t_w_max,
                                             double t_i_max);

}  // namespace wus
