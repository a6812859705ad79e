#include "wus/sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "wus/errors.hpp"
#include "wus/rng.hpp"
#include "accounting.hpp"

namespace wus {

namespace detail {

double RatioBatches::mean() const {
  double n = 0.0;
  double d = 0.0;
  for (std::size_t b = 0; b < num_.size(); ++b) {
    n += num_[b];
    d += den_[b];
  }
  return d > 0.0 ? n / d : 0.0;
}

double RatioBatches::stderr_of_mean() const {
  std::vector<double> r;
  r.reserve(num_.size());
  for (std::size_t b = 0; b < num_.size(); ++b) {
    if (den_[b] > 0.0) r.push_back(num_[b] / den_[b]);
  }
  if (r.size() < 2) return 0.0;
  double m = 0.0;
  for (double v : r) m += v;
  m /= static_cast<double>(r.size());
  double ss = 0.0;
  for (double v : r) ss += (v - m) * (v - m);
  const double var = ss / static_cast<double>(r.size() - 1);
  return std::sqrt(var / static_cast<double>(r.size()));
}

}  // namespace detail

void SimConfig::validate() const {
  if (!std::isfinite(horizon) || horizon <= 0.0) throw InvalidArgument("horizon must be positive");
  const double w = effective_warmup();
  if (!std::isfinite(w) || w >= horizon) throw InvalidArgument("warmup must be below the horizon");
  if (batches < 2) throw InvalidArgument("at least two batches are needed");
}

namespace {

void check_levels(const PowerProfile& p) {
  for (double v : {p.pw1, p.pw2, p.pw3, p.pw4}) {
    if (!std::isfinite(v) || v < 0.0) throw InvalidArgument("power levels must be finite and >= 0");
  }
}

class WusSimulator {
 public:
  WusSimulator(const PowerProfile& profile, const TimingParams& timing,
               const TrafficModel& traffic, const ChannelErrorModel& channel,
               const WuConfig& cfg, const SimConfig& sim)
      : pw_(profile),
        tm_(timing),
        lambda_(traffic.lambda),
        ch_(channel),
        cfg_(cfg),
        rng_(sim.seed, sim.stream),
        acc_(sim) {
    next_arrival_ = rng_.exponential(lambda_);
  }

  SimulationReport run() {
    for (std::uint64_t c = 0; acc_.begin_cycle(c, t_); ++c) cycle();
    return acc_.report(tm_.t_s);
  }

 private:
  void absorb(double until) {
    while (next_arrival_ <= until) {
      buffer_.push_back(next_arrival_);
      next_arrival_ += rng_.exponential(lambda_);
    }
  }

  void cycle() {
    const double sleep = cfg_.t_w - tm_.t_on;
    acc_.enter(State::Sleep);
    acc_.segment(Segment::Sleep, sleep, sleep * pw_.pw4);
    t_ += sleep;

    absorb(t_);
    const bool pending = !buffer_.empty();
    acc_.clock(t_);
    acc_.enter(State::WrxOn);
    acc_.segment(Segment::WrxOn, tm_.t_on, tm_.t_on * pw_.pw1);
    t_ += tm_.t_on;

    const bool wake = pending ? !rng_.bernoulli(ch_.p_md) : rng_.bernoulli(ch_.p_fa);
    if (acc_.measuring()) {
      if (pending && !wake) ++acc_.counters.misdetections;
      if (!pending && wake) ++acc_.counters.false_alarms;
      if (wake) ++acc_.counters.wakeups;
    }
    if (!wake) return;

    acc_.clock(t_);
    acc_.segment(Segment::Startup, tm_.t_su,
                 tm_.t_su * pw_.pw4 + 0.5 * tm_.t_su * (pw_.pw2 - pw_.pw4));
    t_ += tm_.t_su;
    absorb(t_);
    if (!buffer_.empty()) acc_.first_packet_wait(t_ - buffer_.front());

    for (;;) {
      acc_.clock(t_);
      if (acc_.expired(t_)) return;
      acc_.enter(State::Decode);
      acc_.segment(Segment::Decode, tm_.t_s, tm_.t_s * pw_.pw2);
      for (double a : buffer_) acc_.packet(t_ - a);
      buffer_.clear();
      t_ += tm_.t_s;
      absorb(t_);
      if (!buffer_.empty()) continue;

      acc_.clock(t_);
      acc_.enter(State::Inactivity);
      if (next_arrival_ < t_ + cfg_.t_i) {
        const double boundary =
            t_ + tm_.tti * (std::floor((next_arrival_ - t_) / tm_.tti) + 1.0);
        acc_.segment(Segment::Inactivity, boundary - t_, (boundary - t_) * pw_.pw3);
        t_ = boundary;
        absorb(t_);
        continue;
      }
      acc_.segment(Segment::Inactivity, cfg_.t_i, cfg_.t_i * pw_.pw3);
      t_ += cfg_.t_i;
      break;
    }

    acc_.clock(t_);
    acc_.segment(Segment::Powerdown, tm_.t_pd,
                 tm_.t_pd * pw_.pw4 + 0.5 * tm_.t_pd * (pw_.pw3 - pw_.pw4));
    t_ += tm_.t_pd;
  }

  PowerProfile pw_;
  TimingParams tm_;
  double lambda_;
  ChannelErrorModel ch_;
  WuConfig cfg_;
  Rng rng_;
  detail::Accountant acc_;

  double t_ = 0.0;
  double next_arrival_ = 0.0;
  std::deque<double> buffer_;
};

}  // namespace

SimulationReport simulate(const PowerProfile& profile, const TimingParams& timing,
                          const TrafficModel& traffic, const ChannelErrorModel& channel,
                          const WuConfig& cfg, const SimConfig& sim) {
  check_levels(profile);
  timing.validate();
  traffic.validate(timing);
  channel.validate();
  cfg.validate(timing);
  sim.validate();
  if (cfg.t_w <= timing.t_on) throw InvalidArgument("t_w must exceed the on-duration");
  return WusSimulator(profile, timing, traffic, channel, cfg, sim).run();
}

std::vector<EnergySharePoint> energy_share_sweep(const PowerProfile& profile,
                                                 const TimingParams& timing,
                                                 const ChannelErrorModel& channel,
                                                 const std::vector<double>& lambdas,
                                                 const Constraint& constraint,
                                                 const SimConfig& sim) {
  std::vector<EnergySharePoint> out(lambdas.size());
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    TrafficModel{lambdas[k]}.validate(timing);
    out[k].lambda = lambdas[k];
  }
  const auto n = static_cast<long>(lambdas.size());
  std::vector<std::string> errors(lambdas.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (long k = 0; k < n; ++k) {
    EnergySharePoint& p = out[k];
    try {
      const TrafficModel traffic{p.lambda};
      p.optimum = optimize(profile, timing, traffic, constraint);
      if (p.optimum.unbounded()) {
        p.simulated_cfg = p.optimum.advisory->cfg;
      } else {
        p.simulated_cfg = {p.optimum.t_w_star, p.optimum.t_i_star, true};
      }
      SimConfig s = sim;
      s.stream = sim.stream + static_cast<std::uint64_t>(k);
      p.report = simulate(profile, timing, traffic, channel, p.simulated_cfg, s);
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  }
  for (std::size_t k = 0; k < errors.size(); ++k) {
    if (!errors[k].empty()) {
      throw Error("lambda = " + std::to_string(lambdas[k]) + ": " + errors[k]);
    }
  }
  return out;
}

}  // namespace wus
