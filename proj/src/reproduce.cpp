#include "wus/reproduce.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "wus/errors.hpp"
#include "wus/metrics.hpp"
#include "wus/optimizer.hpp"
#include "wus/sim.hpp"
#include "wus/sweep.hpp"

namespace wus {

namespace {

using report::Csv;
using report::number;

const std::array<double, 3> kLambdas{0.01, 0.08, 0.15};
const std::array<double, 3> kDelays{30.0, 75.0, 500.0};

// Reference optima, lambda-major.
const std::array<double, 9> kTable3{180, 380, 2099, 124, 315, 2124, 125, 328, 2246};

// Reference minimum power in mW; rows by TTI, columns lambda-major.
const std::array<double, 4> kTable5Tti{1.0, 0.5, 0.25, 0.125};
const std::array<std::array<double, 9>, 4> kTable5{{
    {54.2, 31.6, 6.6, 88.7, 39.0, 6.1, 88.9, 38.1, 5.9},
    {50.4, 29.4, 5.7, 83.7, 36.8, 5.8, 85.4, 36.6, 5.7},
    {48.3, 28.1, 5.5, 81.1, 35.7, 5.7, 83.7, 35.9, 5.6},
    {47.5, 27.7, 5.4, 80.1, 35.3, 5.6, 83.1, 35.7, 5.6},
}};

const std::vector<double> kFigLambdas{0.005, 0.01, 0.02, 0.04, 0.06, 0.08, 0.1, 0.12, 0.15};

std::string where(double lambda, double d_max) {
  std::ostringstream os;
  os << "lambda=" << lambda << " d_max=" << d_max;
  return os.str();
}

TimingParams at_tti(TimingParams t, double tti) {
  t.tti = tti;
  t.t_s = tti;
  return t;
}

TimingParams ideal_of(TimingParams t) {
  t.t_on = 0.0;
  return t;
}

ReproduceOutput table3(const RunConfig& cfg) {
  ReproduceOutput out{"table3",
                      Csv({"lambda_per_ms", "d_max_ms", "reference_t_w_ms", "t_w_star_ms",
                           "t_i_star_ms", "t_wb_ms", "diff_tti", "pass"}),
                      {}};
  const TimingParams tm = at_tti(cfg.timing, 1.0);
  for (std::size_t i = 0; i < kLambdas.size(); ++i) {
    for (std::size_t j = 0; j < kDelays.size(); ++j) {
      const double expected = kTable3[3 * i + j];
      const OptimizationResult r =
          optimize(cfg.profile, tm, TrafficModel{kLambdas[i]}, Constraint{kDelays[j]});
      const double diff = (r.t_w_star - expected) / tm.tti;
      const bool ok = std::abs(diff) <= 2.0 + 1e-9 && std::abs(r.t_i_star - tm.tti) < 1e-9;
      out.table.row({number(kLambdas[i]), number(kDelays[j]), number(expected),
                     number(r.t_w_star), number(r.t_i_star), number(r.t_wb), number(diff),
                     ok ? "1" : "0"});
      if (!ok) {
        out.failures.push_back(where(kLambdas[i], kDelays[j]) + ": t_w*=" +
                               number(r.t_w_star) + " vs " + number(expected));
      }
    }
  }
  return out;
}

ReproduceOutput table5(const RunConfig& cfg) {
  ReproduceOutput out{"table5",
                      Csv({"tti_ms", "lambda_per_ms", "d_max_ms", "reference_power_mw", "power_mw",
                           "t_w_star_ms", "abs_err_mw", "rel_err", "pass"}),
                      {}};
  for (std::size_t k = 0; k < kTable5Tti.size(); ++k) {
    const TimingParams tm = at_tti(cfg.timing, kTable5Tti[k]);
    for (std::size_t i = 0; i < kLambdas.size(); ++i) {
      for (std::size_t j = 0; j < kDelays.size(); ++j) {
        const double expected = kTable5[k][3 * i + j];
        const OptimizationResult r =
            optimize(cfg.profile, tm, TrafficModel{kLambdas[i]}, Constraint{kDelays[j]});
        const double err = r.predicted_power - expected;
        const bool ok = std::abs(err) <= std::max(0.05 * expected, 1.0);
        out.table.row({number(tm.tti), number(kLambdas[i]), number(kDelays[j]), number(expected),
                       number(r.predicted_power), number(r.t_w_star), number(err),
                       number(err / expected), ok ? "1" : "0"});
        if (!ok) {
          out.failures.push_back("tti=" + number(tm.tti) + " " + where(kLambdas[i], kDelays[j]) +
                                 ": " + number(r.predicted_power) + " mW vs " + number(expected));
        }
      }
    }
  }
  return out;
}

ReproduceOutput fig4(const RunConfig& cfg) {
  ReproduceOutput out{"fig4",
                      Csv({"transition_sum_ms", "t_su_ms", "t_pd_ms", "d_max_ms",
                           "lambda_t_per_ms"}),
                      {}};
  const std::vector<double> sums{10, 25, 50, 100};
  const std::vector<double> delays{30, 50, 75, 100, 200, 300, 400, 500};
  std::vector<std::vector<double>> lt(sums.size(), std::vector<double>(delays.size()));
  for (std::size_t s = 0; s < sums.size(); ++s) {
    TimingParams tm = at_tti(cfg.timing, 1.0);
    tm.t_su = 0.6 * sums[s];
    tm.t_pd = 0.4 * sums[s];
    for (std::size_t j = 0; j < delays.size(); ++j) {
      lt[s][j] = turnoff_arrival_rate(cfg.profile, tm, Constraint{delays[j]});
      out.table.row({number(sums[s]), number(tm.t_su), number(tm.t_pd), number(delays[j]),
                     number(lt[s][j])});
    }
  }
  for (std::size_t j = 0; j < delays.size(); ++j) {
    for (std::size_t s = 1; s < sums.size(); ++s) {
      if (!(lt[s][j] < lt[s - 1][j])) {
        out.failures.push_back("lambda_t not decreasing in t_su+t_pd at d_max=" +
                               number(delays[j]));
      }
    }
  }
  const std::size_t ref = 1;  // t_su + t_pd = 25 ms
  const double lo = lt[ref].front();
  const double hi = lt[ref].back();
  const double variation = std::abs(lo - hi) / std::min(lo, hi);
  if (!(variation < 0.05)) {
    out.failures.push_back("lambda_t varies by " + number(100 * variation) +
                           "% between d_max=30 and d_max=500");
  }
  for (std::size_t j = 0; j < delays.size(); ++j) {
    if (!(lt[ref][j] > 0.15)) {
      out.failures.push_back("lambda_t=" + number(lt[ref][j]) + " not above 0.15 at d_max=" +
                             number(delays[j]));
    }
  }
  return out;
}

ReproduceOutput fig5(const RunConfig& cfg) {
  std::vector<std::string> header{"lambda_per_ms", "regime", "t_w_ms", "t_i_ms", "power_mw"};
  for (std::size_t k = 0; k < kSegments; ++k) {
    header.push_back(std::string("energy_share_") + report::segment_name(static_cast<Segment>(k)));
  }
  ReproduceOutput out{"fig5", Csv(header), {}};

  const std::vector<double> lambdas{0.005, 0.01, 0.02, 0.05, 0.08, 0.1, 0.15, 0.2, 0.3, 0.5};
  const double d_max = 75.0;
  SimConfig sim{HorizonKind::Time, 5e6, -1.0, cfg.seeds.front(), 0, cfg.sim.batches};
  const TimingParams tm = at_tti(cfg.timing, 1.0);
  const std::vector<EnergySharePoint> pts =
      energy_share_sweep(cfg.profile, tm, cfg.channel, lambdas, Constraint{d_max}, sim);

  const auto decode = static_cast<std::size_t>(Segment::Decode);
  const auto su = static_cast<std::size_t>(Segment::Startup);
  const auto pd = static_cast<std::size_t>(Segment::Powerdown);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const EnergySharePoint& p = pts[i];
    std::vector<std::string> row{number(p.lambda), std::string(to_string(p.optimum.regime)),
                                 number(p.simulated_cfg.t_w), number(p.simulated_cfg.t_i),
                                 number(p.report.mean_power)};
    double sum = 0.0;
    for (double s : p.report.energy_share) {
      row.push_back(number(s));
      sum += s;
      if (s < 0.0 || s > 1.0) out.failures.push_back("share outside [0,1] at " + number(p.lambda));
    }
    out.table.row(std::move(row));
    if (std::abs(sum - 1.0) > 1e-9) {
      out.failures.push_back("shares sum to " + number(sum) + " at lambda=" + number(p.lambda));
    }
    if (i > 0 && !(p.report.energy_share[decode] > pts[i - 1].report.energy_share[decode])) {
      out.failures.push_back("decode share does not increase at lambda=" + number(p.lambda));
    }
    if (p.optimum.regime == Regime::WusIneffective) {
      const double transition = p.report.energy_share[su] + p.report.energy_share[pd];
      if (!(transition < 0.01)) {
        out.failures.push_back("start-up/power-down share " + number(transition) +
                               " above 1% at lambda=" + number(p.lambda));
      }
    }
  }
  return out;
}

struct GapPoint {
  double lambda, d_max;
  WuConfig cfg;
  double power_ideal, delay_ideal;
  SimulationReport sim_ideal, sim_real;
};

// Optimized configuration per point, simulated with ideal flags and with
// P_fa = 0.1, P_md = 0.01 and the configured on-duration.
std::vector<GapPoint> gap_points(const RunConfig& cfg) {
  std::vector<GapPoint> pts;
  for (double d : cfg.d_max)
    for (double l : kFigLambdas) pts.push_back({l, d, {}, 0, 0, {}, {}});

  const TimingParams real = at_tti(cfg.timing, 1.0);
  const TimingParams ideal = ideal_of(real);
  const auto n = static_cast<long>(pts.size());
  std::vector<std::string> errors(pts.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long k = 0; k < n; ++k) {
    GapPoint& p = pts[k];
    try {
      const TrafficModel traffic{p.lambda};
      const OptimizationResult r = optimize(cfg.profile, ideal, traffic, Constraint{p.d_max});
      p.cfg = r.unbounded() ? r.advisory->cfg : WuConfig{r.t_w_star, r.t_i_star, true};
      p.power_ideal = average_power_simplified(cfg.profile, ideal, traffic, p.cfg);
      p.delay_ideal = average_delay_simplified(ideal, traffic, p.cfg);
      SimConfig s = cfg.sim;
      s.seed = cfg.seeds.front();
      s.stream = 2 * static_cast<std::uint64_t>(k);
      p.sim_ideal = simulate(cfg.profile, ideal, traffic, ChannelErrorModel::ideal(), p.cfg, s);
      s.stream += 1;
      p.sim_real =
          simulate(cfg.profile, real, traffic, ChannelErrorModel::realistic(), p.cfg, s);
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  }
  for (std::size_t k = 0; k < errors.size(); ++k) {
    if (!errors[k].empty()) throw Error(where(pts[k].lambda, pts[k].d_max) + ": " + errors[k]);
  }
  return pts;
}

ReproduceOutput fig6(const RunConfig& cfg) {
  ReproduceOutput out{"fig6",
                      Csv({"lambda_per_ms", "d_max_ms", "t_w_ms", "t_i_ms",
                           "analytic_ideal_power_mw", "sim_ideal_power_mw",
                           "sim_ideal_power_stderr_mw", "sim_realistic_power_mw",
                           "sim_realistic_power_stderr_mw", "realistic_above_ideal"}),
                      {}};
  for (const GapPoint& p : gap_points(cfg)) {
    const bool ok = p.sim_real.mean_power >= p.power_ideal;
    out.table.row({number(p.lambda), number(p.d_max), number(p.cfg.t_w), number(p.cfg.t_i),
                   number(p.power_ideal), number(p.sim_ideal.mean_power),
                   number(p.sim_ideal.power_stderr), number(p.sim_real.mean_power),
                   number(p.sim_real.power_stderr), ok ? "1" : "0"});
    if (!ok) {
      out.failures.push_back(where(p.lambda, p.d_max) + ": realistic power " +
                             number(p.sim_real.mean_power) + " below ideal analytical " +
                             number(p.power_ideal));
    }
  }
  return out;
}

ReproduceOutput fig7(const RunConfig& cfg) {
  ReproduceOutput out{"fig7",
                      Csv({"lambda_per_ms", "d_max_ms", "t_w_ms", "t_i_ms",
                           "analytic_ideal_delay_ms", "sim_ideal_delay_ms",
                           "sim_ideal_delay_stderr_ms", "sim_realistic_delay_ms",
                           "sim_realistic_delay_stderr_ms", "sim_realistic_packet_delay_ms",
                           "realistic_above_ideal"}),
                      {}};
  for (const GapPoint& p : gap_points(cfg)) {
    const bool ok = p.sim_real.mean_delay >= p.delay_ideal;
    out.table.row({number(p.lambda), number(p.d_max), number(p.cfg.t_w), number(p.cfg.t_i),
                   number(p.delay_ideal), number(p.sim_ideal.mean_delay),
                   number(p.sim_ideal.delay_stderr), number(p.sim_real.mean_delay),
                   number(p.sim_real.delay_stderr), number(p.sim_real.mean_packet_delay),
                   ok ? "1" : "0"});
    if (!ok) {
      out.failures.push_back(where(p.lambda, p.d_max) + ": realistic delay " +
                             number(p.sim_real.mean_delay) + " below ideal analytical " +
                             number(p.delay_ideal));
    }
  }
  return out;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

ReproduceOutput fig8(const RunConfig& cfg) {
  const std::vector<double> lambdas{0.005, 0.01, 0.02, 0.05, 0.08, 0.1, 0.15};
  SimConfig sim = cfg.drx_sim;
  sim.seed = cfg.seeds.front();
  const TimingParams tm = at_tti(cfg.timing, 1.0);
  const std::vector<DrxComparisonPoint> pts =
      compare_drx(cfg.profile, tm, ChannelErrorModel::realistic(), cfg.drx_table, cfg.drx_grid,
                  lambdas, cfg.d_max, sim, cfg.drx_delay_slack);
  ReproduceOutput out{"fig8", report::drx_comparison_csv(pts), {}};

  double best = -1e300;
  for (const DrxComparisonPoint& p : pts) best = std::max(best, p.eta);
  if (!(best >= 30.0)) {
    out.failures.push_back("max eta " + number(best) + "% below 30%");
  }
  for (double d : cfg.d_max) {
    std::vector<double> x, y;
    for (const DrxComparisonPoint& p : pts) {
      if (p.d_max == d) {
        x.push_back(p.lambda);
        y.push_back(p.eta);
      }
    }
    if (x.size() >= 2 && !(slope(x, y) < 0.0)) {
      out.failures.push_back("eta does not trend downward in lambda at d_max=" + number(d) +
                             " (slope " + number(slope(x, y)) + ")");
    }
  }
  return out;
}

}  // namespace

const std::vector<std::string>& reproduce_targets() {
  static const std::vector<std::string> t{"table3", "table5", "fig4", "fig5",
                                          "fig6",   "fig7",   "fig8"};
  return t;
}

ReproduceOutput reproduce(const std::string& target, const RunConfig& cfg) {
  cfg.validate();
  if (target == "table3") return table3(cfg);
  if (target == "table5") return table5(cfg);
  if (target == "fig4") return fig4(cfg);
  if (target == "fig5") return fig5(cfg);
  if (target == "fig6") return fig6(cfg);
  if (target == "fig7") return fig7(cfg);
  if (target == "fig8") return fig8(cfg);
  throw InvalidArgument("unknown reproduce target \"" + target + "\"");
}

}  // namespace wus
