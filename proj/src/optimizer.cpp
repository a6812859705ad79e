#include "wus/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "wus/errors.hpp"
#include "wus/metrics.hpp"
#include "wus/specfun.hpp"

namespace wus {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Quantities shared by the boundary coefficients and the slope constants.
struct Shared {
  double l, d, a, b, b_phi, amp, c, s;
};

Shared shared_terms(const PowerProfile& profile, const TimingParams& timing,
                    const TrafficModel& traffic, const Constraint& constraint) {
  const double l = traffic.lambda;
  const double phi = profile.phi();
  const double es = std::exp(l * timing.t_s);
  Shared t{};
  t.l = l;
  t.d = constraint.margin(timing);
  t.a = 1.0 + es;
  t.b = timing.t_s * es + 1.0 / l;
  t.b_phi = phi * timing.t_s * es + 1.0 / l;
  t.amp = 0.5 * (phi * timing.t_su + timing.t_pd) - 1.0 / l;
  t.c = timing.t_su + timing.t_pd - 1.0 / l;
  t.s = timing.t_su - 1.0 / l;
  return t;
}

void check_all(const TimingParams& timing, const TrafficModel& traffic,
               const Constraint& constraint) {
  timing.validate();
  traffic.validate(timing);
  constraint.validate(timing);
}

double snap_down(double t, double tti) { return std::floor(t / tti + 1e-9) * tti; }

double stationary_point(const AppendixConstants& k, double t_wb) {
  double hi = std::max(1.0 / k.lambda, t_wb);
  for (int i = 0; i < 200 && k.y(hi) >= 0.0; ++i) hi *= 2.0;
  if (k.y(hi) >= 0.0 || k.y(0.0) <= 0.0) throw NoRoot("Y(t_w) has no root");
  return find_root([&](double t) { return k.y(t); }, {0.0, hi}, 1e-12);
}

// For a whole-TTI inactivity timer the best wake-up cycle is the largest one
// still meeting the bound; walk t_i upward until that point is within 0.1%
// of the limiting power.
AdvisoryConfig advisory_config(const PowerProfile& profile, const TimingParams& timing,
                               const TrafficModel& traffic, const Constraint& constraint,
                               double limit) {
  const double target = 1.001 * limit;
  const double tti = timing.tti;
  const double d_max = constraint.d_max;
  for (long j = 1; j <= 100000000; ++j) {
    WuConfig cfg{tti, static_cast<double>(j) * tti, true};
    auto excess = [&](double t_w) {
      return average_delay_simplified(timing, traffic, {t_w, cfg.t_i, false}) - d_max;
    };
    if (excess(tti) > 0.0) continue;
    double hi = 2.0 * tti;
    while (excess(hi) <= 0.0) {
      hi *= 2.0;
      if (hi > 1e15) throw Infeasible("delay bound is never reached");
    }
    cfg.t_w = std::max(tti, snap_down(find_root(excess, {0.5 * hi, hi}, 1e-9), tti));
    if (excess(cfg.t_w) > 0.0) cfg.t_w -= tti;
    if (cfg.t_w < tti) continue;
    const double p = average_power_simplified(profile, timing, traffic, cfg);
    if (p <= target) return {cfg, p, average_delay_simplified(timing, traffic, cfg)};
  }
  throw Infeasible("no finite configuration comes within 0.1% of the limiting power");
}

struct Candidate {
  double power = kInf;
  double t_w = 0.0;
  double t_i = 0.0;
  bool found = false;
};

Candidate best_in_row(long k, long n_i, const PowerProfile& profile, const TimingParams& timing,
                      const TrafficModel& traffic, double d_max) {
  Candidate best;
  WuConfig cfg;
  cfg.t_w = static_cast<double>(k) * timing.tti;
  for (long j = 1; j <= n_i; ++j) {
    cfg.t_i = static_cast<double>(j) * timing.tti;
    if (average_delay_simplified(timing, traffic, cfg) > d_max) continue;
    const double p = average_power_simplified(profile, timing, traffic, cfg);
    if (!best.found || p < best.power) best = {p, cfg.t_w, cfg.t_i, true};
  }
  return best;
}

OptimizationResult finish_grid(const std::vector<Candidate>& rows, const TimingParams& timing,
                               const TrafficModel& traffic) {
  Candidate best;
  for (const Candidate& c : rows) {
    if (c.found && (!best.found || c.power < best.power)) best = c;
  }
  if (!best.found) throw EmptyFeasibleSet("no grid point meets the delay bound");
  OptimizationResult r;
  r.t_w_star = best.t_w;
  r.t_i_star = best.t_i;
  r.regime = Regime::WusEffective;
  r.lambda_t = std::numeric_limits<double>::quiet_NaN();
  r.t_wb = std::numeric_limits<double>::quiet_NaN();
  r.predicted_power = best.power;
  WuConfig cfg{best.t_w, best.t_i, true};
  r.predicted_delay = average_delay_simplified(timing, traffic, cfg);
  return r;
}

struct GridShape {
  long n_w;
  long n_i;
};

GridShape grid_shape(const TimingParams& timing, const TrafficModel& traffic, double t_w_max,
                     double t_i_max) {
  timing.validate();
  traffic.validate(timing);
  if (!(t_w_max >= timing.tti) || !(t_i_max >= timing.tti)) {
    throw InvalidArgument("grid bounds must be at least one TTI");
  }
  return {static_cast<long>(std::floor(t_w_max / timing.tti + 1e-9)),
          static_cast<long>(std::floor(t_i_max / timing.tti + 1e-9))};
}

}  // namespace

double AppendixConstants::y(double t_w) const {
  return f1 + (f2 - lambda * f3 * t_w) * std::exp(-lambda * t_w);
}

bool AppendixConstants::inequalities_hold() const {
  return f1 + f2 > 0.0 && f2 + f3 > 0.0 && f1 > f3;
}

std::string_view to_string(BoundaryCase c) {
  switch (c) {
    case BoundaryCase::A: return "A";
    case BoundaryCase::B: return "B";
    case BoundaryCase::C: return "C";
  }
  return "?";
}

std::string_view to_string(Regime r) {
  return r == Regime::WusEffective ? "WUS_EFFECTIVE" : "WUS_INEFFECTIVE";
}

bool OptimizationResult::unbounded() const { return std::isinf(t_w_star); }

double boundary_inactivity_timer(double t_w, const TrafficModel& traffic,
                                 const TimingParams& timing, const Constraint& constraint) {
  check_all(timing, traffic, constraint);
  if (!std::isfinite(t_w) || t_w <= 0.0) throw InvalidArgument("t_w must be positive and finite");
  const double l = traffic.lambda;
  const double d = constraint.margin(timing);
  const double x = detail::one_minus_exp(l * t_w);
  const double numer = timing.t_su * x + detail::x_minus_one_minus_exp(l * t_w) / l - 2.0 * d;
  const double denom = d * x * (1.0 + std::exp(l * timing.t_s));
  if (!(numer > 0.0)) throw Infeasible("t_w is below the minimum feasible wake-up cycle");
  const double t_i = std::log(numer / denom) / l;
  if (t_i < timing.tti * (1.0 - 1e-9)) {
    throw Infeasible("t_w is below the minimum feasible wake-up cycle");
  }
  return t_i;
}

double min_boundary_wakeup_cycle(const TrafficModel& traffic, const TimingParams& timing,
                                 const Constraint& constraint) {
  check_all(timing, traffic, constraint);
  const double l = traffic.lambda;
  const double d = constraint.margin(timing);
  const double e1 = std::exp(l * timing.tti);
  const double a = 1.0 + std::exp(l * timing.t_s);
  const double f = ((e1 * a + 2.0) * d - timing.t_su) * l + 1.0;
  const double h = l * timing.t_su - e1 * d * a * l - 1.0;
  const double t_wb = (f + lambert_w0(h * std::exp(-f))) / l;
  if (!(t_wb >= timing.tti * (1.0 - 1e-9))) {
    throw Infeasible("delay bound cannot be met with t_w of at least one TTI");
  }
  return t_wb;
}

BoundaryCoefficients boundary_coefficients(const PowerProfile& profile,
                                           const TimingParams& timing,
                                           const TrafficModel& traffic,
                                           const Constraint& constraint) {
  check_all(timing, traffic, constraint);
  const Shared t = shared_terms(profile, timing, traffic, constraint);
  const double ad = t.a * t.d;
  BoundaryCoefficients k;
  k.lambda = t.l;
  k.u1 = t.b_phi * (t.s - 2.0 * t.d) + t.amp * ad;
  k.u2 = t.b_phi;
  k.u3 = -t.b_phi * t.s - t.amp * ad;
  k.w1 = t.b * (t.s - 2.0 * t.d) + t.c * ad;
  k.w2 = t.b + ad;
  k.w3 = -t.b * t.s - t.c * ad;
  return k;
}

double boundary_power(double t_w, const BoundaryCoefficients& k, const PowerProfile& profile) {
  const double e = std::exp(-k.lambda * t_w);
  return profile.pw3 * (k.u1 + k.u2 * t_w + k.u3 * e) / (k.w1 + k.w2 * t_w + k.w3 * e);
}

AppendixConstants appendix_constants(const PowerProfile& profile, const TimingParams& timing,
                                     const TrafficModel& traffic, const Constraint& constraint) {
  check_all(timing, traffic, constraint);
  const Shared t = shared_terms(profile, timing, traffic, constraint);
  const double ad = t.a * t.d;
  const double ad2 = ad * t.d;
  AppendixConstants k;
  k.lambda = t.l;
  k.f1 = ad * (t.b_phi * (timing.t_pd + 2.0 * t.d) - t.amp * t.b) - t.amp * ad * ad;
  k.f3 = k.f1 - 2.0 * ad2 * t.b_phi;
  k.f2 = -k.f1 + 2.0 * ad2 * t.b_phi + 2.0 * t.l * ad2 * (t.b_phi * t.c - t.b * t.amp);
  return k;
}

BoundaryCase classify_boundary_case(const AppendixConstants& k) {
  const double scale = std::max({std::abs(k.f1), std::abs(k.f2), std::abs(k.f3)});
  const double tie = 1e-12 * scale;
  if (std::abs(k.f3) <= tie || std::abs(k.f1) <= tie) {
    throw DegenerateCase("F1 or F3 vanishes to working precision");
  }
  if (k.f3 > 0.0) return BoundaryCase::A;
  return k.f1 > 0.0 ? BoundaryCase::B : BoundaryCase::C;
}

double turnoff_arrival_rate(const PowerProfile& profile, const TimingParams& timing,
                            const Constraint& constraint) {
  timing.validate();
  constraint.validate(timing);
  auto f1 = [&](double lambda) {
    return appendix_constants(profile, timing, TrafficModel{lambda}, constraint).f1;
  };
  constexpr int kScan = 4096;
  const double step = 1.0 / (timing.tti * kScan);
  double prev_l = step;
  double prev_f = f1(prev_l);
  for (int k = 2; k < kScan; ++k) {
    const double l = k * step;
    const double f = f1(l);
    if ((f > 0.0) != (prev_f > 0.0)) {
      return find_root(f1, {prev_l, l}, 1e-9 * step);
    }
    prev_l = l;
    prev_f = f;
  }
  throw NoRoot("F1 keeps one sign over the admissible arrival rates");
}

OptimizationResult optimize(const PowerProfile& profile, const TimingParams& timing,
                            const TrafficModel& traffic, const Constraint& constraint) {
  check_all(timing, traffic, constraint);
  OptimizationResult r;
  try {
    r.lambda_t = turnoff_arrival_rate(profile, timing, constraint);
  } catch (const NoRoot&) {
    const double f1 = appendix_constants(profile, timing, traffic, constraint).f1;
    r.lambda_t = f1 > 0.0 ? kInf : 0.0;
  }

  r.t_wb = min_boundary_wakeup_cycle(traffic, timing, constraint);
  const AppendixConstants k = appendix_constants(profile, timing, traffic, constraint);
  try {
    r.boundary_case = classify_boundary_case(k);
  } catch (const DegenerateCase&) {
    r.boundary_case.reset();
  }
  if (r.boundary_case == BoundaryCase::C) {
    try {
      r.t_ws = stationary_point(k, r.t_wb);
    } catch (const NoRoot&) {
      r.t_ws.reset();
    }
  }

  if (traffic.lambda <= r.lambda_t) {
    r.regime = Regime::WusEffective;
    r.t_w_star = snap_down(r.t_wb, timing.tti);
    if (r.t_w_star < timing.tti) throw Infeasible("optimal wake-up cycle is below one TTI");
    r.t_i_star = timing.tti;
    const WuConfig cfg{r.t_w_star, r.t_i_star, true};
    r.predicted_power = average_power_simplified(profile, timing, traffic, cfg);
    r.predicted_delay = average_delay_simplified(timing, traffic, cfg);
    return r;
  }

  r.regime = Regime::WusIneffective;
  r.t_w_star = kInf;
  r.t_i_star = kInf;
  const BoundaryCoefficients coeffs = boundary_coefficients(profile, timing, traffic, constraint);
  r.predicted_power = profile.pw3 * coeffs.u2 / coeffs.w2;
  r.predicted_delay = constraint.d_max;
  r.advisory = advisory_config(profile, timing, traffic, constraint, r.predicted_power);
  return r;
}

OptimizationResult grid_search_oracle_serial(const PowerProfile& profile,
                                             const TimingParams& timing,
                                             const TrafficModel& traffic,
                                             const Constraint& constraint, double t_w_max,
                                             double t_i_max) {
  const GridShape g = grid_shape(timing, traffic, t_w_max, t_i_max);
  std::vector<Candidate> rows(static_cast<std::size_t>(g.n_w));
  for (long k = 1; k <= g.n_w; ++k) {
    rows[k - 1] = best_in_row(k, g.n_i, profile, timing, traffic, constraint.d_max);
  }
  return finish_grid(rows, timing, traffic);
}

}  // namespace wus
