#include <cmath>
#include <vector>

#include "wus/errors.hpp"
#include "wus/metrics.hpp"
#include "wus/optimizer.hpp"

namespace wus {

OptimizationResult grid_search_oracle(const PowerProfile& profile, const TimingParams& timing,
                                      const TrafficModel& traffic, const Constraint& constraint,
                                      double t_w_max, double t_i_max) {
#ifndef WUS_HAVE_OPENMP
  return grid_search_oracle_serial(profile, timing, traffic, constraint, t_w_max, t_i_max);
#else
  timing.validate();
  traffic.validate(timing);
  if (!(t_w_max >= timing.tti) || !(t_i_max >= timing.tti)) {
    throw InvalidArgument("grid bounds must be at least one TTI");
  }
  const long n_w = static_cast<long>(std::floor(t_w_max / timing.tti + 1e-9));
  const long n_i = static_cast<long>(std::floor(t_i_max / timing.tti + 1e-9));
  const double d_max = constraint.d_max;

  std::vector<double> power(static_cast<std::size_t>(n_w), 0.0);
  std::vector<long> arg(static_cast<std::size_t>(n_w), 0);

#pragma omp parallel for schedule(dynamic, 16)
  for (long k = 1; k <= n_w; ++k) {
    WuConfig cfg;
    cfg.t_w = static_cast<double>(k) * timing.tti;
    double best = 0.0;
    long best_j = 0;
    for (long j = 1; j <= n_i; ++j) {
      cfg.t_i = static_cast<double>(j) * timing.tti;
      if (average_delay_simplified(timing, traffic, cfg) > d_max) continue;
      const double p = average_power_simplified(profile, timing, traffic, cfg);
      if (best_j == 0 || p < best) {
        best = p;
        best_j = j;
      }
    }
    power[k - 1] = best;
    arg[k - 1] = best_j;
  }

  long best_k = 0;
  for (long k = 1; k <= n_w; ++k) {
    if (arg[k - 1] == 0) continue;
    if (best_k == 0 || power[k - 1] < power[best_k - 1]) best_k = k;
  }
  if (best_k == 0) throw EmptyFeasibleSet("no grid point meets the delay bound");

  OptimizationResult r;
  r.t_w_star = static_cast<double>(best_k) * timing.tti;
  r.t_i_star = static_cast<double>(arg[best_k - 1]) * timing.tti;
  r.regime = Regime::WusEffective;
  r.lambda_t = std::nan("");
  r.t_wb = std::nan("");
  r.predicted_power = power[best_k - 1];
  r.predicted_delay = average_delay_simplified(timing, traffic, {r.t_w_star, r.t_i_star, true});
  return r;
#endif
}

}  // namespace wus
