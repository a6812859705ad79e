#include "wus/sweep.hpp"

#include <string>

#include "wus/errors.hpp"
#include "wus/metrics.hpp"

namespace wus {

namespace {

WuConfig chosen_config(const OptimizationResult& r) {
  if (r.unbounded()) return r.advisory->cfg;
  return {r.t_w_star, r.t_i_star, true};
}

}  // namespace

std::vector<AnalyticPoint> analytic_sweep(const PowerProfile& profile,
                                          const TimingParams& timing,
                                          const ChannelErrorModel& channel,
                                          const std::vector<double>& ttis,
                                          const std::vector<double>& d_max,
                                          const std::vector<double>& lambdas) {
  std::vector<AnalyticPoint> out;
  for (double tti : ttis)
    for (double d : d_max)
      for (double l : lambdas) out.push_back({tti, d, l, {}, {}, 0, 0, 0, 0});

  const auto n = static_cast<long>(out.size());
  std::vector<std::string> errors(out.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long k = 0; k < n; ++k) {
    AnalyticPoint& p = out[k];
    try {
      TimingParams tm = timing;
      tm.tti = p.tti;
      tm.t_s = p.tti;
      const TrafficModel traffic{p.lambda};
      p.optimum = optimize(profile, tm, traffic, Constraint{p.d_max});
      p.cfg = chosen_config(p.optimum);
      p.power_simplified = average_power_simplified(profile, tm, traffic, p.cfg);
      p.delay_simplified = average_delay_simplified(tm, traffic, p.cfg);
      p.power_full = average_power_full(profile, tm, traffic, channel, p.cfg);
      p.delay_full = average_delay_full(tm, traffic, channel, p.cfg).delay;
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (!errors[k].empty()) {
      throw Error("tti = " + std::to_string(out[k].tti) + ", d_max = " +
                  std::to_string(out[k].d_max) + ", lambda = " + std::to_string(out[k].lambda) +
                  ": " + errors[k]);
    }
  }
  return out;
}

std::vector<DrxComparisonPoint> compare_drx(const PowerProfile& profile,
                                            const TimingParams& timing,
                                            const ChannelErrorModel& channel,
                                            const DrxPowerTable& table, const DrxGrid& grid,
                                            const std::vector<double>& lambdas,
                                            const std::vector<double>& d_max,
                                            const SimConfig& sim, double delay_slack) {
  if (lambdas.empty() || d_max.empty()) throw InvalidArgument("empty lambda or d_max list");
  const std::size_t grid_size = grid.configs().size();
  std::vector<DrxComparisonPoint> out;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const TrafficModel traffic{lambdas[i]};
    SimConfig s = sim;
    s.stream = sim.stream + i * grid_size;
    const std::vector<DrxEvaluation> evals = evaluate_drx_grid(table, timing, traffic, grid, s);
    for (double d : d_max) {
      DrxComparisonPoint p;
      p.lambda = lambdas[i];
      p.d_max = d;
      const OptimizationResult opt = optimize(profile, timing, traffic, Constraint{d});
      p.regime = opt.regime;
      p.wus_cfg = chosen_config(opt);
      p.wus_power = average_power_full(profile, timing, traffic, channel, p.wus_cfg);
      p.wus_delay = average_delay_full(timing, traffic, channel, p.wus_cfg).delay;
      p.drx = select_drx(evals, Constraint{d}, delay_slack);
      p.eta = relative_power_saving(p.drx.power, p.wus_power);
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace wus
