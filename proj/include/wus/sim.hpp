#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "wus/model.hpp"
#include "wus/optimizer.hpp"
#include "wus/types.hpp"

namespace wus {

enum class HorizonKind { Time, Cycles };

/// Length of a simulation run. With HorizonKind::Cycles the horizon and the
/// warmup count sleep cycles; with HorizonKind::Time they are in ms.
struct SimConfig {
  HorizonKind kind = HorizonKind::Cycles;
  double horizon = 1e6;
  double warmup = -1.0;  ///< negative selects 5% of the horizon
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  std::size_t batches = 64;

  double effective_warmup() const { return warmup < 0.0 ? 0.05 * horizon : warmup; }
  void validate() const;
};

/// Energy and time accounting categories.
enum class Segment : std::size_t {
  WrxOn = 0,
  Decode = 1,
  Inactivity = 2,
  Sleep = 3,
  Startup = 4,
  Powerdown = 5
};
inline constexpr std::size_t kSegments = 6;

struct SimCounters {
  std::uint64_t cycles = 0;  ///< sleep periods entered
  std::uint64_t wakeups = 0;
  std::uint64_t false_alarms = 0;
  std::uint64_t misdetections = 0;
  std::uint64_t packets = 0;
};

struct SimulationReport {
  double mean_power = 0.0;    ///< mW
  double power_stderr = 0.0;  ///< mW
  /// Model-consistent delay: half a TTI plus the waiting time of the first
  /// packet of each wake-up, averaged over state entries.
  double mean_delay = 0.0;    ///< ms
  double delay_stderr = 0.0;  ///< ms
  /// Arrival to start of the decoding TTI, averaged over packets.
  double mean_packet_delay = 0.0;    ///< ms
  double packet_delay_stderr = 0.0;  ///< ms
  std::array<double, kSegments> energy_share{};
  std::array<double, kSegments> time_share{};
  std::array<std::uint64_t, 4> visits{};  ///< entries into S1..S4
  SimCounters counters;
  double simulated_time = 0.0;  ///< ms, after warmup
};

SimulationReport simulate(const PowerProfile& profile, const TimingParams& timing,
                          const TrafficModel& traffic, const ChannelErrorModel& channel,
                          const WuConfig& cfg, const SimConfig& sim);

struct EnergySharePoint {
  double lambda = 0.0;
  OptimizationResult optimum;
  WuConfig simulated_cfg;  ///< optimum, or the advisory config when unbounded
  SimulationReport report;
};

/// Optimizes and then simulates every rate in the grid. Point k uses RNG
/// stream sim.stream + k of sim.seed.
std::vector<EnergySharePoint> energy_share_sweep(const PowerProfile& profile,
                                                 const TimingParams& timing,
                                                 const ChannelErrorModel& channel,
                                                 const std::vector<double>& lambdas,
                                                 const Constraint& constraint,
                                                 const SimConfig& sim);

namespace detail {

/// Batch-means accumulator: ratio of two sums per batch.
class RatioBatches {
 public:
  explicit RatioBatches(std::size_t n) : num_(n, 0.0), den_(n, 0.0) {}
  void add(std::size_t batch, double num, double den) {
    num_[batch] += num;
    den_[batch] += den;
  }
  double mean() const;
  double stderr_of_mean() const;

 private:
  std::vector<double> num_;
  std::vector<double> den_;
};

}  // namespace detail

}  // namespace wus
