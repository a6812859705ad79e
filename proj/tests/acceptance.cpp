#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "wus/config.hpp"
#include "wus/metrics.hpp"
#include "wus/optimizer.hpp"
#include "wus/reproduce.hpp"
#include "wus/sim.hpp"

using namespace wus;

namespace {

const PowerProfile kProfile = PowerProfile::reference(1.1);
const std::array<double, 3> kLambdas{0.01, 0.08, 0.15};
const std::array<double, 3> kDelays{30.0, 75.0, 500.0};
const std::array<double, 9> kTable3{180, 380, 2099, 124, 315, 2124, 125, 328, 2246};

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> details;

  void fail(const std::string& why) {
    pass = false;
    details.push_back(why);
  }
};

std::string fmt(double v, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << v;
  return os.str();
}

std::string at(double lambda, double d_max) {
  return "lambda=" + fmt(lambda) + " d_max=" + fmt(d_max);
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Outcome table3() {
  Outcome o;
  const auto t0 = Clock::now();
  const TimingParams tm = TimingParams::reference(1.0);
  int ok = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const OptimizationResult r =
          optimize(kProfile, tm, TrafficModel{kLambdas[i]}, Constraint{kDelays[j]});
      const double expected = kTable3[3 * i + j];
      if (std::abs(r.t_w_star - expected) <= 2.0 && r.t_i_star == 1.0) {
        ++ok;
      } else {
        o.fail(at(kLambdas[i], kDelays[j]) + ": t_w*=" + fmt(r.t_w_star, 8) + " t_i*=" +
               fmt(r.t_i_star) + " expected " + fmt(expected, 8));
      }
    }
  }
  const double s = seconds_since(t0);
  if (s >= 1.0) o.fail("runtime " + fmt(s) + " s");
  o.summary = std::to_string(ok) + "/9 cells within 2 TTI, t_i*=1 ms (" + fmt(s, 3) + " s)";
  return o;
}

Outcome table5() {
  static const std::array<double, 4> ttis{1.0, 0.5, 0.25, 0.125};
  static const std::array<std::array<double, 9>, 4> expected{{
      {54.2, 31.6, 6.6, 88.7, 39.0, 6.1, 88.9, 38.1, 5.9},
      {50.4, 29.4, 5.7, 83.7, 36.8, 5.8, 85.4, 36.6, 5.7},
      {48.3, 28.1, 5.5, 81.1, 35.7, 5.7, 83.7, 35.9, 5.6},
      {47.5, 27.7, 5.4, 80.1, 35.3, 5.6, 83.1, 35.7, 5.6},
  }};
  Outcome o;
  const auto t0 = Clock::now();
  int ok = 0;
  double worst = 0.0;
  for (std::size_t k = 0; k < ttis.size(); ++k) {
    const TimingParams tm = TimingParams::reference(ttis[k]);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        const double p =
            optimize(kProfile, tm, TrafficModel{kLambdas[i]}, Constraint{kDelays[j]}).predicted_power;
        const double ref = expected[k][3 * i + j];
        const double err = std::abs(p - ref);
        worst = std::max(worst, err / ref);
        if (err <= std::max(0.05 * ref, 1.0)) {
          ++ok;
        } else {
          o.fail("tti=" + fmt(ttis[k]) + " " + at(kLambdas[i], kDelays[j]) + ": " + fmt(p) +
                 " mW vs " + fmt(ref));
        }
      }
    }
  }
  const double s = seconds_since(t0);
  if (s >= 5.0) o.fail("runtime " + fmt(s) + " s");
  o.summary = std::to_string(ok) + "/36 cells within max(5%, 1 mW), worst relative error " +
              fmt(100 * worst, 3) + "% (" + fmt(s, 3) + " s)";
  return o;
}

Outcome grid_oracle() {
  Outcome o;
  const auto t0 = Clock::now();
  const TimingParams tm = TimingParams::reference(1.0);
  const std::vector<double> lambdas{0.005, 0.01, 0.02, 0.05, 0.08, 0.1, 0.15};
  const std::vector<double> delays{30, 75, 200, 500};
  int ok = 0;
  for (double l : lambdas) {
    for (double d : delays) {
      const OptimizationResult r = optimize(kProfile, tm, TrafficModel{l}, Constraint{d});
      const OptimizationResult g = grid_search_oracle(kProfile, tm, TrafficModel{l}, Constraint{d}, 4000, 50);
      if (r.t_w_star == g.t_w_star && r.t_i_star == g.t_i_star) {
        ++ok;
      } else {
        o.fail(at(l, d) + ": closed form (" + fmt(r.t_w_star, 8) + ", " + fmt(r.t_i_star) +
               ") grid (" + fmt(g.t_w_star, 8) + ", " + fmt(g.t_i_star) + ")");
      }
    }
  }
  const double s = seconds_since(t0);
  if (s >= 120.0) o.fail("runtime " + fmt(s) + " s");
  o.summary = std::to_string(ok) + "/28 (lambda, d_max) points match exhaustive search over t_w<=4000, t_i<=50 (" +
              fmt(s, 3) + " s)";
  return o;
}

Outcome lambert() {
  Outcome o;
  const TimingParams tm = TimingParams::reference(1.0);
  std::mt19937_64 gen(404);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double l = 0.005 + 0.295 * u(gen);
    const double d = 20.0 + 580.0 * u(gen);
    const double tw = optimize(kProfile, tm, TrafficModel{l}, Constraint{d}).t_wb;
    auto delay = [&](double x) { return average_delay_simplified(tm, TrafficModel{l}, WuConfig{x, 1.0, false}); };
    double lo = 1.0, hi = 2.0;
    while (delay(hi) < d) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 0; ++i) {
      const double mid = 0.5 * (lo + hi);
      (delay(mid) < d ? lo : hi) = mid;
    }
    const double err = std::abs(tw - 0.5 * (lo + hi));
    worst = std::max(worst, err);
    if (err > 1e-6) o.fail(at(l, d) + ": Lambert W " + fmt(tw, 15) + " bisection " + fmt(0.5 * (lo + hi), 15));
  }
  o.summary = "100 random pairs, max |t_wb - bisection| = " + fmt(worst, 3) + " ms";
  return o;
}

Outcome gradients() {
  Outcome o;
  std::mt19937_64 gen(505);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = 1000;
  double worst = 0.0;
  int sign_errors = 0;
  for (int k = 0; k < n; ++k) {
    const double tti = std::array<double, 4>{1.0, 0.5, 0.25, 0.125}[gen() % 4];
    const TimingParams tm = TimingParams::ideal(tti);
    const double l = 0.002 + 0.3 * u(gen);
    const WuConfig cfg{tti * (1 + std::floor(3000 * u(gen))), tti * (1 + std::floor(60 * u(gen))), true};
    const TrafficModel tr{l};
    const Gradient2 gp = power_gradient(kProfile, tm, tr, cfg);
    const Gradient2 gd = delay_gradient(tm, tr, cfg);

    oracle::Params<oracle::mp> base{oracle::mp(l), oracle::mp(cfg.t_w), oracle::mp(cfg.t_i)};
    base.t_s = tti;
    base.pw2 = kProfile.pw2;
    auto diff = [&](bool tw, auto f) {
      return oracle::central_difference(
          [&](const oracle::mp& v) {
            auto q = base;
            (tw ? q.t_w : q.t_i) = v;
            return f(q);
          },
          tw ? base.t_w : base.t_i);
    };
    auto pw = [](const oracle::Params<oracle::mp>& q) { return oracle::power(q); };
    auto dl = [](const oracle::Params<oracle::mp>& q) { return oracle::delay_ideal(q); };
    const std::array<double, 4> analytic{gp.d_ti, gp.d_tw, gd.d_ti, gd.d_tw};
    const std::array<double, 4> numeric{diff(false, pw), diff(true, pw), diff(false, dl), diff(true, dl)};
    const std::array<int, 4> sign{+1, -1, -1, +1};
    for (std::size_t m = 0; m < 4; ++m) {
      const double rel = std::abs(analytic[m] - numeric[m]) / std::abs(numeric[m]);
      worst = std::max(worst, rel);
      if (rel > 1e-6) {
        o.fail(at(l, cfg.t_w) + " component " + std::to_string(m) + ": " + fmt(analytic[m], 12) +
               " vs " + fmt(numeric[m], 12));
      }
      if (analytic[m] * sign[m] <= 0) ++sign_errors;
    }
  }
  if (sign_errors) o.fail(std::to_string(sign_errors) + " sign violations");
  o.summary = std::to_string(n) + " points, max relative error " + fmt(worst, 3) +
              ", signs (+,-,-,+) violated " + std::to_string(sign_errors) + " times";
  return o;
}

Outcome boundary() {
  Outcome o;
  const TimingParams tm = TimingParams::reference(1.0);
  std::mt19937_64 gen(606);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_d = 0.0, worst_p = 0.0;
  for (double l : kLambdas) {
    for (double d : kDelays) {
      const TrafficModel tr{l};
      const Constraint c{d};
      const double twb = min_boundary_wakeup_cycle(tr, tm, c);
      const BoundaryCoefficients k = boundary_coefficients(kProfile, tm, tr, c);
      for (int s = 0; s < 50; ++s) {
        const double tw = twb * (1.0 + 2.0 * u(gen));
        const double ti = boundary_inactivity_timer(tw, tr, tm, c);
        const WuConfig cfg{tw, ti, false};
        const double dd = std::abs(average_delay_simplified(tm, tr, cfg) - d);
        const double p = average_power_simplified(kProfile, tm, tr, cfg);
        const double dp = std::abs(boundary_power(tw, k, kProfile) - p) / p;
        worst_d = std::max(worst_d, dd);
        worst_p = std::max(worst_p, dp);
        if (dd > 1e-9 || dp > 1e-9) {
          o.fail(at(l, d) + " t_w=" + fmt(tw, 10) + ": delay off by " + fmt(dd, 3) +
                 ", power off by " + fmt(dp, 3));
        }
      }
    }
  }
  o.summary = "450 boundary samples, max |D - d_max| = " + fmt(worst_d, 3) +
              " ms, max power mismatch " + fmt(worst_p, 3);
  return o;
}

WuConfig optimum(double l, double d) {
  const OptimizationResult r = optimize(kProfile, TimingParams::reference(1.0), TrafficModel{l}, Constraint{d});
  return {r.t_w_star, r.t_i_star, true};
}

Outcome sim_agreement() {
  Outcome o;
  const auto t0 = Clock::now();
  const TimingParams tm = TimingParams::ideal(1.0);
  const SimConfig sim{HorizonKind::Cycles, 1e6, -1.0, 2024, 0, 64};
  int power_ok = 0, delay_ok = 0;
  std::uint64_t stream = 0;
  for (double l : kLambdas) {
    for (double d : kDelays) {
      const WuConfig cfg = optimum(l, d);
      const TrafficModel tr{l};
      SimConfig s = sim;
      s.stream = stream++;
      const SimulationReport r = simulate(kProfile, tm, tr, ChannelErrorModel::ideal(), cfg, s);
      const double p = average_power_simplified(kProfile, tm, tr, cfg);
      const double dl = average_delay_simplified(tm, tr, cfg);
      const bool pok = std::abs(r.mean_power - p) <= std::max(0.02 * p, 2 * r.power_stderr);
      const bool dok = std::abs(r.mean_delay - dl) <= std::max(0.02 * dl, 2 * r.delay_stderr);
      power_ok += pok;
      delay_ok += dok;
      const std::string line = at(l, d) + " t_w=" + fmt(cfg.t_w, 6) + ": power " + fmt(r.mean_power, 6) +
                               " vs " + fmt(p, 6) + " mW (" + fmt(100 * (r.mean_power / p - 1), 3) +
                               "%), delay " + fmt(r.mean_delay, 6) + " vs " + fmt(dl, 6) + " ms (" +
                               fmt(100 * (r.mean_delay / dl - 1), 3) + "%)";
      if (pok && dok) {
        o.details.push_back(line);
      } else {
        o.fail(line);
      }
    }
  }
  const double s = seconds_since(t0);
  if (s >= 600.0) o.fail("runtime " + fmt(s) + " s");
  o.summary = "1e6 cycles per point: power within tolerance at " + std::to_string(power_ok) +
              "/9, delay at " + std::to_string(delay_ok) + "/9 (" + fmt(s, 3) + " s)";
  return o;
}

Outcome realistic_gap() {
  Outcome o;
  const TimingParams ideal = TimingParams::ideal(1.0);
  const TimingParams real = TimingParams::reference(1.0);
  const SimConfig sim{HorizonKind::Cycles, 2e5, -1.0, 77, 0, 64};
  int power_ok = 0, delay_ok = 0;
  std::uint64_t stream = 0;
  for (double l : kLambdas) {
    for (double d : kDelays) {
      const WuConfig cfg = optimum(l, d);
      const TrafficModel tr{l};
      SimConfig s = sim;
      s.stream = stream++;
      const SimulationReport r = simulate(kProfile, real, tr, ChannelErrorModel::realistic(), cfg, s);
      const double p = average_power_simplified(kProfile, ideal, tr, cfg);
      const double dl = average_delay_simplified(ideal, tr, cfg);
      const bool pok = r.mean_power >= p;
      const bool dok = r.mean_delay >= dl;
      power_ok += pok;
      delay_ok += dok;
      const std::string line = at(l, d) + ": power " + fmt(r.mean_power, 6) + " vs ideal " + fmt(p, 6) +
                               " mW, delay " + fmt(r.mean_delay, 6) + " vs ideal " + fmt(dl, 6) + " ms";
      if (pok && dok) {
        o.details.push_back(line);
      } else {
        o.fail(line);
      }
    }
  }
  o.summary = "P_fa=0.1, P_md=0.01, t_on=1/14 ms: power above ideal at " + std::to_string(power_ok) +
              "/9, delay above ideal at " + std::to_string(delay_ok) + "/9";
  return o;
}

Outcome from_reproduce(const std::string& target, double limit_s) {
  Outcome o;
  const auto t0 = Clock::now();
  const ReproduceOutput r = reproduce(target, RunConfig{});
  const double s = seconds_since(t0);
  for (const std::string& f : r.failures) o.fail(f);
  if (s >= limit_s) o.fail("runtime " + fmt(s) + " s");
  o.summary = target + " checks: " + std::to_string(r.failures.size()) + " failed over " +
              std::to_string(r.table.size()) + " rows (" + fmt(s, 3) + " s)";
  if (target == "fig8") {
    double best = -1e9;
    const auto& h = r.table.header();
    const std::size_t col = static_cast<std::size_t>(std::distance(h.begin(), std::find(h.begin(), h.end(), "eta_percent")));
    for (const auto& row : r.table.rows()) best = std::max(best, std::stod(row[col]));
    o.summary += ", max eta " + fmt(best, 3) + "%";
  }
  return o;
}

int run(const std::string& args, std::string& out) {
  const std::string cmd = std::string(WUSOPT_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return -1;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  const int st = pclose(p);
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "wus_acceptance_determinism";
  fs::remove_all(root);
  const std::vector<std::string> commands{
      "eval --lambda 0.08 --tw 315 --ti 1 --pfa 0.1 --pmd 0.01",
      "optimize --lambda 0.15 --dmax 500 --tti 0.25",
      "simulate --lambda 0.08 --dmax 75 --pfa 0.1 --pmd 0.01 --seed 11 --horizon 20000",
      "sweep --lambda 0.01 0.5 --dmax 30 --format csv",
      "compare-drx --lambda 0.02 --dmax 75 --seed 3 --horizon 20000 --format csv",
      "reproduce fig5 --seed 9",
  };
  int identical = 0;
  for (std::size_t k = 0; k < commands.size(); ++k) {
    std::array<std::string, 2> out;
    std::array<fs::path, 2> dir;
    for (int rep = 0; rep < 2; ++rep) {
      dir[rep] = root / (std::to_string(k) + "_" + std::to_string(rep));
      const int st = run(commands[k] + " --out " + dir[rep].string(), out[rep]);
      if (st != 0) o.fail("'" + commands[k] + "' exited with " + std::to_string(st));
    }
    bool same = out[0] == out[1];
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(dir[0])) {
      ++files;
      same = same && slurp(e.path()) == slurp(dir[1] / e.path().filename());
    }
    if (files == 0) o.fail("'" + commands[k] + "' wrote no files");
    if (same && files > 0) {
      ++identical;
    } else {
      o.fail("'" + commands[k] + "' differs between runs");
    }
  }
  fs::remove_all(root);
  o.summary = std::to_string(identical) + "/" + std::to_string(commands.size()) +
              " commands byte-identical across two runs (stdout and output files)";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*check)();
  };
  const std::vector<Criterion> criteria{
      {"optimal wake-up cycles at the reference points", table3},
      {"minimum power across TTI sizes", table5},
      {"closed form equals exhaustive grid search", grid_oracle},
      {"Lambert-W boundary equals bisection", lambert},
      {"gradient values and signs", gradients},
      {"delay-boundary identity", boundary},
      {"simulator agrees with the model under ideal flags", sim_agreement},
      {"realistic flags cost power and delay", realistic_gap},
      {"turn-off rate properties", [] { return from_reproduce("fig4", 60.0); }},
      {"relative saving against optimized DRX", [] { return from_reproduce("fig8", 1800.0); }},
      {"byte-identical reruns", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
      o.summary = "aborted";
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].name << ": "
              << o.summary << '\n';
    for (const std::string& d : o.details) std::cout << "      " << d << '\n';
    std::cout.flush();
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
