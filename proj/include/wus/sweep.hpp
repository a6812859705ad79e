#pragma once

#include <vector>

#include "wus/drx.hpp"
#include "wus/optimizer.hpp"
#include "wus/sim.hpp"
#include "wus/types.hpp"

namespace wus {

struct AnalyticPoint {
  double tti = 0.0;
  double d_max = 0.0;
  double lambda = 0.0;
  OptimizationResult optimum;
  WuConfig cfg;  ///< optimum, or the advisory config when unbounded
  double power_simplified = 0.0;
  double delay_simplified = 0.0;
  double power_full = 0.0;
  double delay_full = 0.0;
};

/// Optimizes every (tti, d_max, lambda) combination, in that nesting order,
/// and evaluates the analytical metrics at the chosen configuration. The
/// full-model values use the given on-duration and channel errors.
std::vector<AnalyticPoint> analytic_sweep(const PowerProfile& profile,
                                          const TimingParams& timing,
                                          const ChannelErrorModel& channel,
                                          const std::vector<double>& ttis,
                                          const std::vector<double>& d_max,
                                          const std::vector<double>& lambdas);

struct DrxComparisonPoint {
  double lambda = 0.0;
  double d_max = 0.0;
  Regime regime = Regime::WusEffective;
  WuConfig wus_cfg;
  double wus_power = 0.0;  ///< full model with the configured channel errors
  double wus_delay = 0.0;
  DrxOptimum drx;
  double eta = 0.0;  ///< percent
};

/// WuS against the exhaustive DRX optimum for every (lambda, d_max) pair,
/// lambda-major. Each rate simulates the DRX grid once with RNG streams
/// offset by the rate index times the grid size.
std::vector<DrxComparisonPoint> compare_drx(const PowerProfile& profile,
                                            const TimingParams& timing,
                                            const ChannelErrorModel& channel,
                                            const DrxPowerTable& table, const DrxGrid& grid,
                                            const std::vector<double>& lambdas,
                                            const std::vector<double>& d_max,
                                            const SimConfig& sim, double delay_slack = 0.0);

}  // namespace wus
