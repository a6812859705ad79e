#pragma once

#include <cstddef>
#include <vector>

#include "wus/sim.hpp"
#include "wus/types.hpp"

namespace wus {

/// Short/long-cycle DRX parameters, in ms.
struct DrxConfig {
  double t_on_drx = 2.0;
  double t_inactivity = 10.0;
  double t_short = 20.0;
  int n_short = 2;
  double t_long = 160.0;

  void validate(const TimingParams& timing) const;
};

/// Power levels (mW) and ramp times (ms) of the LTE module. The light sleep
/// row is used by short cycles and the deep sleep row by long ones, unless
/// the sleep gap is too short for the ramps.
struct DrxPowerTable {
  double pw_sleep_short = 395.0;
  double pw_sleep_long = 0.0;
  double pw_active = 850.0;
  double pw_decode = 935.0;
  double t_su_short = 1.0;
  double t_pd_short = 1.0;
  double t_su_long = 15.0;
  double t_pd_long = 10.0;

  void validate() const;
};

struct DrxGrid {
  std::vector<double> t_on_drx{1, 2, 5, 10};
  std::vector<double> t_inactivity{1, 10, 20, 40, 80, 100, 200};
  std::vector<double> t_short{2, 5, 8, 10, 20, 32, 40, 64, 80};
  std::vector<int> n_short{0, 1, 2, 4, 8, 16};
  std::vector<double> t_long{40, 80, 160, 320, 640, 1280, 2560};

  /// Smaller grid for quick sweeps.
  static DrxGrid reduced();
  /// All combinations with t_short <= t_long, in tie-break order.
  std::vector<DrxConfig> configs() const;
};

/// Each DRX cycle is a sleep gap followed by the on-duration. The gap uses
/// whichever of light sleep, deep sleep or staying awake costs least energy
/// given the ramp times. A packet found at (or arriving during) an
/// on-duration is decoded TTI-aligned and restarts the inactivity timer;
/// after it expires come n_short short cycles, then long cycles. Delays are
/// reported with the same conventions as simulate().
SimulationReport simulate_drx(const DrxPowerTable& table, const DrxConfig& drx,
                              const TimingParams& timing, const TrafficModel& traffic,
                              const SimConfig& sim);

struct DrxEvaluation {
  DrxConfig cfg;
  SimulationReport report;
};

struct DrxOptimum {
  DrxConfig cfg;
  double power = 0.0;  ///< mW
  double delay = 0.0;  ///< ms, mean per-packet delay
  std::size_t feasible = 0;
};

/// Simulates every grid configuration. Configuration k uses RNG stream
/// sim.stream + k.
std::vector<DrxEvaluation> evaluate_drx_grid(const DrxPowerTable& table,
                                             const TimingParams& timing,
                                             const TrafficModel& traffic, const DrxGrid& grid,
                                             const SimConfig& sim);

/// Single-threaded reference for evaluate_drx_grid().
std::vector<DrxEvaluation> evaluate_drx_grid_serial(const DrxPowerTable& table,
                                                    const TimingParams& timing,
                                                    const TrafficModel& traffic,
                                                    const DrxGrid& grid, const SimConfig& sim);

/// A configuration is feasible when its mean per-packet delay plus one
/// standard error stays within d_max + delay_slack.
bool drx_feasible(const SimulationReport& r, const Constraint& constraint,
                  double delay_slack = 0.0);

/// Lowest-power feasible configuration. Equal powers go to the
/// lexicographically smaller (t_long, t_short, t_inactivity, n_short, t_on_drx).
DrxOptimum select_drx(const std::vector<DrxEvaluation>& evals, const Constraint& constraint,
                      double delay_slack = 0.0);

DrxOptimum optimize_drx_exhaustive(const DrxPowerTable& table, const TimingParams& timing,
                                   const TrafficModel& traffic, const Constraint& constraint,
                                   const DrxGrid& grid, const SimConfig& sim,
                                   double delay_slack = 0.0);

/// Relative power saving of WuS over DRX, in percent.
double relative_power_saving(double p_drx, double p_wus);

}  // namespace wus
