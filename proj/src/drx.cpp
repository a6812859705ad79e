#include "wus/drx.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>
#include <tuple>

#include "wus/errors.hpp"
#include "wus/rng.hpp"
#include "accounting.hpp"

namespace wus {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

auto order_key(const DrxConfig& c) {
  return std::make_tuple(c.t_long, c.t_short, c.t_inactivity, c.n_short, c.t_on_drx);
}

template <typename T>
std::vector<T> sorted(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

class DrxSimulator {
 public:
  DrxSimulator(const DrxPowerTable& table, const DrxConfig& drx, const TimingParams& timing,
               const TrafficModel& traffic, const SimConfig& sim)
      : tb_(table), drx_(drx), tm_(timing), lambda_(traffic.lambda),
        rng_(sim.seed, sim.stream), acc_(sim) {
    next_arrival_ = rng_.exponential(lambda_);
  }

  SimulationReport run() {
    // Start as if the inactivity timer had expired long ago.
    cycles_since_active_ = drx_.n_short;
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

  // Energy of a sleep gap of length g using one sleep row, or -1 if the
  // ramps do not fit.
  double gap_energy(double g, double pw_sleep, double su, double pd) const {
    if (g < su + pd) return -1.0;
    return (su + pd) * (pw_sleep + 0.5 * (tb_.pw_active - pw_sleep)) + (g - su - pd) * pw_sleep;
  }

  void sleep_gap(double g) {
    acc_.enter(State::Sleep);
    const double light = gap_energy(g, tb_.pw_sleep_short, tb_.t_su_short, tb_.t_pd_short);
    const double deep = gap_energy(g, tb_.pw_sleep_long, tb_.t_su_long, tb_.t_pd_long);
    const double awake = g * tb_.pw_active;

    double best = awake;
    double pw = tb_.pw_active, su = 0.0, pd = 0.0;
    if (light >= 0.0 && light < best) {
      best = light;
      pw = tb_.pw_sleep_short;
      su = tb_.t_su_short;
      pd = tb_.t_pd_short;
    }
    if (deep >= 0.0 && deep < best) {
      best = deep;
      pw = tb_.pw_sleep_long;
      su = tb_.t_su_long;
      pd = tb_.t_pd_long;
    }
    const double ramp = pw + 0.5 * (tb_.pw_active - pw);
    acc_.segment(Segment::Powerdown, pd, pd * ramp);
    acc_.segment(Segment::Sleep, g - su - pd, (g - su - pd) * pw);
    acc_.segment(Segment::Startup, su, su * ramp);
    t_ += g;
  }

  void cycle() {
    ++cycles_since_active_;
    const double length = cycles_since_active_ <= drx_.n_short ? drx_.t_short : drx_.t_long;
    sleep_gap(length - drx_.t_on_drx);

    acc_.clock(t_);
    acc_.enter(State::WrxOn);
    absorb(t_);
    if (buffer_.empty()) {
      if (next_arrival_ >= t_ + drx_.t_on_drx) {
        acc_.segment(Segment::WrxOn, drx_.t_on_drx, drx_.t_on_drx * tb_.pw_active);
        t_ += drx_.t_on_drx;
        return;
      }
      const double boundary = t_ + tm_.tti * (std::floor((next_arrival_ - t_) / tm_.tti) + 1.0);
      acc_.segment(Segment::WrxOn, boundary - t_, (boundary - t_) * tb_.pw_active);
      t_ = boundary;
      absorb(t_);
    }
    acc_.first_packet_wait(t_ - buffer_.front());
    if (acc_.measuring()) ++acc_.counters.wakeups;

    for (;;) {
      acc_.clock(t_);
      if (acc_.expired(t_)) return;
      acc_.enter(State::Decode);
      acc_.segment(Segment::Decode, tm_.t_s, tm_.t_s * tb_.pw_decode);
      for (double a : buffer_) acc_.packet(t_ - a);
      buffer_.clear();
      t_ += tm_.t_s;
      absorb(t_);
      if (!buffer_.empty()) continue;

      acc_.clock(t_);
      acc_.enter(State::Inactivity);
      if (next_arrival_ < t_ + drx_.t_inactivity) {
        const double boundary =
            t_ + tm_.tti * (std::floor((next_arrival_ - t_) / tm_.tti) + 1.0);
        acc_.segment(Segment::Inactivity, boundary - t_, (boundary - t_) * tb_.pw_active);
        t_ = boundary;
        absorb(t_);
        continue;
      }
      acc_.segment(Segment::Inactivity, drx_.t_inactivity, drx_.t_inactivity * tb_.pw_active);
      t_ += drx_.t_inactivity;
      break;
    }
    cycles_since_active_ = 0;
  }

  DrxPowerTable tb_;
  DrxConfig drx_;
  TimingParams tm_;
  double lambda_;
  Rng rng_;
  detail::Accountant acc_;

  double t_ = 0.0;
  double next_arrival_ = 0.0;
  std::deque<double> buffer_;
  int cycles_since_active_ = 0;
};

void check_grid_inputs(const DrxPowerTable& table, const TimingParams& timing,
                       const TrafficModel& traffic, const SimConfig& sim) {
  table.validate();
  timing.validate();
  traffic.validate(timing);
  sim.validate();
}

}  // namespace

void DrxConfig::validate(const TimingParams& timing) const {
  const double tti = timing.tti * (1.0 - 1e-9);
  require(std::isfinite(t_on_drx) && t_on_drx >= tti, "t_on_drx must be at least one TTI");
  require(std::isfinite(t_inactivity) && t_inactivity >= tti,
          "t_inactivity must be at least one TTI");
  require(std::isfinite(t_short) && t_short >= tti, "t_short must be at least one TTI");
  require(std::isfinite(t_long) && t_long >= tti, "t_long must be at least one TTI");
  require(n_short >= 0, "n_short must be non-negative");
  require(t_short <= t_long, "t_short must not exceed t_long");
  require(t_on_drx < t_short, "t_on_drx must be shorter than the short cycle");
}

void DrxPowerTable::validate() const {
  for (double v : {pw_sleep_short, pw_sleep_long, pw_active, pw_decode, t_su_short, t_pd_short,
                   t_su_long, t_pd_long}) {
    require(std::isfinite(v) && v >= 0.0, "DRX table entries must be finite and >= 0");
  }
  require(pw_decode >= pw_active, "pw_decode must be at least pw_active");
  require(pw_active > pw_sleep_short, "pw_active must exceed pw_sleep_short");
  require(pw_sleep_short > pw_sleep_long, "pw_sleep_short must exceed pw_sleep_long");
}

DrxGrid DrxGrid::reduced() {
  DrxGrid g;
  g.t_on_drx = {1, 2};
  g.t_inactivity = {1, 10, 40, 100};
  g.t_short = {2, 10, 20, 40, 80};
  g.n_short = {0, 1, 4, 16};
  g.t_long = {40, 80, 160, 320, 640, 1280, 2560};
  return g;
}

std::vector<DrxConfig> DrxGrid::configs() const {
  std::vector<DrxConfig> out;
  for (double tl : sorted(t_long))
    for (double ts : sorted(t_short)) {
      if (ts > tl) continue;
      for (double ti : sorted(t_inactivity))
        for (int ns : sorted(n_short))
          for (double ton : sorted(t_on_drx)) {
            if (ton >= ts) continue;
            out.push_back({ton, ti, ts, ns, tl});
          }
    }
  return out;
}

SimulationReport simulate_drx(const DrxPowerTable& table, const DrxConfig& drx,
                              const TimingParams& timing, const TrafficModel& traffic,
                              const SimConfig& sim) {
  check_grid_inputs(table, timing, traffic, sim);
  drx.validate(timing);
  return DrxSimulator(table, drx, timing, traffic, sim).run();
}

std::vector<DrxEvaluation> evaluate_drx_grid_serial(const DrxPowerTable& table,
                                                    const TimingParams& timing,
                                                    const TrafficModel& traffic,
                                                    const DrxGrid& grid, const SimConfig& sim) {
  check_grid_inputs(table, timing, traffic, sim);
  const std::vector<DrxConfig> cfgs = grid.configs();
  std::vector<DrxEvaluation> out(cfgs.size());
  for (std::size_t k = 0; k < cfgs.size(); ++k) {
    SimConfig s = sim;
    s.stream = sim.stream + k;
    out[k] = {cfgs[k], simulate_drx(table, cfgs[k], timing, traffic, s)};
  }
  return out;
}

std::vector<DrxEvaluation> evaluate_drx_grid(const DrxPowerTable& table,
                                             const TimingParams& timing,
                                             const TrafficModel& traffic, const DrxGrid& grid,
                                             const SimConfig& sim) {
  check_grid_inputs(table, timing, traffic, sim);
  const std::vector<DrxConfig> cfgs = grid.configs();
  for (const DrxConfig& c : cfgs) c.validate(timing);
  std::vector<DrxEvaluation> out(cfgs.size());
  const auto n = static_cast<long>(cfgs.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long k = 0; k < n; ++k) {
    SimConfig s = sim;
    s.stream = sim.stream + static_cast<std::uint64_t>(k);
    out[k] = {cfgs[k], DrxSimulator(table, cfgs[k], timing, traffic, s).run()};
  }
  return out;
}

bool drx_feasible(const SimulationReport& r, const Constraint& constraint, double delay_slack) {
  return r.mean_packet_delay + r.packet_delay_stderr <= constraint.d_max + delay_slack;
}

DrxOptimum select_drx(const std::vector<DrxEvaluation>& evals, const Constraint& constraint,
                      double delay_slack) {
  const DrxEvaluation* best = nullptr;
  std::size_t feasible = 0;
  for (const DrxEvaluation& e : evals) {
    if (!drx_feasible(e.report, constraint, delay_slack)) continue;
    ++feasible;
    if (best == nullptr || e.report.mean_power < best->report.mean_power ||
        (e.report.mean_power == best->report.mean_power &&
         order_key(e.cfg) < order_key(best->cfg))) {
      best = &e;
    }
  }
  if (best == nullptr) {
    throw EmptyFeasibleSet("no DRX configuration meets the delay bound of " +
                           std::to_string(constraint.d_max) + " ms");
  }
  return {best->cfg, best->report.mean_power, best->report.mean_packet_delay, feasible};
}

DrxOptimum optimize_drx_exhaustive(const DrxPowerTable& table, const TimingParams& timing,
                                   const TrafficModel& traffic, const Constraint& constraint,
                                   const DrxGrid& grid, const SimConfig& sim,
                                   double delay_slack) {
  return select_drx(evaluate_drx_grid(table, timing, traffic, grid, sim), constraint,
                    delay_slack);
}

double relative_power_saving(double p_drx, double p_wus) {
  if (!std::isfinite(p_drx) || !(p_drx > 0.0)) {
    throw InvalidArgument("p_drx must be positive");
  }
  if (!std::isfinite(p_wus)) throw InvalidArgument("p_wus must be finite");
  return (p_drx - p_wus) / p_drx * 100.0;
}

}  // namespace wus
