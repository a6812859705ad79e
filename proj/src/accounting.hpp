#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>

#include "wus/model.hpp"
#include "wus/sim.hpp"

namespace wus::detail {

/// Statistics shared by the WuS and DRX simulators: energy and time per
/// segment, state entries, first-packet waits and per-packet delays, all
/// split into batches for the standard errors.
class Accountant {
 public:
  explicit Accountant(const SimConfig& sim)
      : sim_(sim),
        warm_(sim.effective_warmup()),
        total_cycles_(static_cast<std::uint64_t>(std::llround(sim.horizon))),
        warm_cycles_(static_cast<std::uint64_t>(std::llround(warm_))),
        power_(sim.batches),
        delay_(sim.batches),
        packet_delay_(sim.batches) {}

  /// Called at the start of every sleep period. Returns false once the
  /// horizon is reached.
  bool begin_cycle(std::uint64_t c, double t) {
    if (sim_.kind == HorizonKind::Cycles) {
      if (c >= total_cycles_) return false;
      measuring_ = c >= warm_cycles_;
      if (measuring_) {
        batch_ = static_cast<std::size_t>((c - warm_cycles_) * sim_.batches /
                                          (total_cycles_ - warm_cycles_));
      }
    } else {
      if (t >= sim_.horizon) return false;
      measuring_ = t >= warm_;
      if (measuring_) {
        batch_ = std::min(sim_.batches - 1,
                          static_cast<std::size_t>((t - warm_) / (sim_.horizon - warm_) *
                                                   static_cast<double>(sim_.batches)));
      }
    }
    if (measuring_) ++counters.cycles;
    return true;
  }

  bool measuring() const { return measuring_; }

  /// With a time horizon, a single active period can outlast the run.
  bool expired(double t) const { return sim_.kind == HorizonKind::Time && t >= sim_.horizon; }

  /// Moves the measurement window to time t. Only matters for time horizons,
  /// where batches and warmup are defined on the clock.
  void clock(double t) {
    if (sim_.kind != HorizonKind::Time) return;
    measuring_ = t >= warm_ && t < sim_.horizon;
    if (measuring_) {
      batch_ = std::min(sim_.batches - 1,
                        static_cast<std::size_t>((t - warm_) / (sim_.horizon - warm_) *
                                                 static_cast<double>(sim_.batches)));
    }
  }

  void segment(Segment s, double duration, double energy) {
    if (!measuring_) return;
    const auto k = static_cast<std::size_t>(s);
    energy_[k] += energy;
    time_[k] += duration;
    power_.add(batch_, energy, duration);
  }

  void enter(State s) {
    if (!measuring_) return;
    ++visits_[idx(s)];
    delay_.add(batch_, 0.0, 1.0);
  }

  void first_packet_wait(double wait) {
    if (measuring_) delay_.add(batch_, wait, 0.0);
  }

  void packet(double delay) {
    if (!measuring_) return;
    packet_delay_.add(batch_, delay, 1.0);
    ++counters.packets;
  }

  SimulationReport report(double t_s) const {
    SimulationReport r;
    r.mean_power = power_.mean();
    r.power_stderr = power_.stderr_of_mean();
    r.mean_delay = delay_.mean() + 0.5 * t_s;
    r.delay_stderr = delay_.stderr_of_mean();
    r.mean_packet_delay = packet_delay_.mean();
    r.packet_delay_stderr = packet_delay_.stderr_of_mean();
    double e = 0.0;
    double t = 0.0;
    for (std::size_t k = 0; k < kSegments; ++k) {
      e += energy_[k];
      t += time_[k];
    }
    for (std::size_t k = 0; k < kSegments; ++k) {
      r.energy_share[k] = e > 0.0 ? energy_[k] / e : 0.0;
      r.time_share[k] = t > 0.0 ? time_[k] / t : 0.0;
    }
    r.visits = visits_;
    r.counters = counters;
    r.simulated_time = t;
    return r;
  }

  SimCounters counters;

 private:
  SimConfig sim_;
  double warm_;
  std::uint64_t total_cycles_;
  std::uint64_t warm_cycles_;
  bool measuring_ = false;
  std::size_t batch_ = 0;
  std::array<double, kSegments> energy_{};
  std::array<double, kSegments> time_{};
  std::array<std::uint64_t, 4> visits_{};
  RatioBatches power_;
  RatioBatches delay_;
  RatioBatches packet_delay_;
};

}  // namespace wus::detail
