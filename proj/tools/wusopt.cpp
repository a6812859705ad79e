#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wus/config.hpp"
#include "wus/errors.hpp"
#include "wus/metrics.hpp"
#include "wus/optimizer.hpp"
#include "wus/report.hpp"
#include "wus/reproduce.hpp"
#include "wus/sim.hpp"
#include "wus/sweep.hpp"

namespace {

using wus::report::Csv;
using wus::report::Json;
using wus::report::number;

struct Flags {
  std::vector<double> lambda;
  std::vector<double> dmax;
  std::optional<double> tw, ti, tti, pfa, pmd, ton, tsu, tpd, phi, horizon;
  std::optional<std::uint64_t> seed;
  std::string config;
  std::string out;
  std::string format = "json";
  std::string target;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON run configuration")->check(CLI::ExistingFile);
  cmd->add_option("--tti", f.tti, "TTI length in ms")->check(CLI::PositiveNumber);
  cmd->add_option("--pfa", f.pfa, "false-alarm probability")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--pmd", f.pmd, "missed-detection probability")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--ton", f.ton, "wake-up receiver on-duration in ms")->check(CLI::NonNegativeNumber);
  cmd->add_option("--tsu", f.tsu, "start-up time in ms")->check(CLI::NonNegativeNumber);
  cmd->add_option("--tpd", f.tpd, "power-down time in ms")->check(CLI::NonNegativeNumber);
  cmd->add_option("--phi", f.phi, "decode to inactivity power ratio")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "RNG seed");
  cmd->add_option("--out", f.out, "directory for output files");
  cmd->add_option("--format", f.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
}

wus::RunConfig build_config(const Flags& f) {
  wus::RunConfig c = f.config.empty() ? wus::RunConfig{} : wus::RunConfig::load(f.config);
  if (!f.lambda.empty()) c.lambdas = f.lambda;
  if (!f.dmax.empty()) c.d_max = f.dmax;
  if (f.tti) {
    c.timing.tti = *f.tti;
    c.timing.t_s = *f.tti;
    c.ttis = {*f.tti};
  }
  if (f.pfa) c.channel.p_fa = *f.pfa;
  if (f.pmd) c.channel.p_md = *f.pmd;
  if (f.ton) c.timing.t_on = *f.ton;
  if (f.tsu) c.timing.t_su = *f.tsu;
  if (f.tpd) c.timing.t_pd = *f.tpd;
  if (f.phi) c.profile = wus::PowerProfile::reference(*f.phi);
  if (f.seed) c.seeds = {*f.seed};
  if (f.horizon) {
    c.sim.horizon = *f.horizon;
    c.drx_sim.horizon = *f.horizon;
  }
  if (!f.out.empty()) c.output_dir = f.out;
  c.validate();
  return c;
}

// Key/value lines for the text format.
void flatten(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << prefix << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

std::string render(const Json& j, const Csv& csv, const std::string& format) {
  if (format == "csv") return csv.str();
  if (format == "text") {
    std::ostringstream os;
    flatten(j, "", os);
    return os.str();
  }
  return wus::report::dump(j);
}

void write_file(const std::string& dir, const std::string& name, const std::string& body) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path path = std::filesystem::path(dir) / name;
  std::ofstream os(path, std::ios::binary);
  os << body;
  if (!os) throw wus::Error("cannot write " + path.string());
}

void emit(const std::string& command, const std::string& dir, const std::string& format,
          const std::string& body) {
  std::cout << body;
  if (!dir.empty()) write_file(dir, command + "." + format, body);
}

Csv single_row(const Json& j) {
  std::vector<std::string> header, row;
  std::ostringstream os;
  flatten(j, "", os);
  std::istringstream is(os.str());
  for (std::string line; std::getline(is, line);) {
    const auto eq = line.find(" = ");
    header.push_back(line.substr(0, eq));
    std::string v = line.substr(eq + 3);
    if (v == "null") v.clear();
    row.push_back(v);
  }
  Csv csv(header);
  csv.row(row);
  return csv;
}

int run_eval(const Flags& f) {
  const wus::RunConfig c = build_config(f);
  const wus::TrafficModel traffic{c.lambdas.front()};
  const wus::WuConfig cfg{*f.tw, f.ti.value_or(c.timing.tti), true};

  const double pf = wus::average_power_full(c.profile, c.timing, traffic, c.channel, cfg);
  const double ps = wus::average_power_simplified(c.profile, c.timing, traffic, cfg);
  const wus::DelayEstimate df = wus::average_delay_full(c.timing, traffic, c.channel, cfg);
  const double ds = wus::average_delay_simplified(c.timing, traffic, cfg);
  const wus::Gradient2 gp = wus::power_gradient(c.profile, c.timing, traffic, cfg);
  const wus::Gradient2 gd = wus::delay_gradient(c.timing, traffic, cfg);

  Json j;
  j["lambda_per_ms"] = traffic.lambda;
  j["config"] = wus::report::to_json(cfg);
  j["power_full_mw"] = pf;
  j["power_simplified_mw"] = ps;
  j["delay_full_ms"] = df.delay;
  j["delay_simplified_ms"] = ds;
  j["delay_series_terms"] = df.terms;
  j["power_gradient"] = {{"d_tw", gp.d_tw}, {"d_ti", gp.d_ti}};
  j["delay_gradient"] = {{"d_tw", gd.d_tw}, {"d_ti", gd.d_ti}};
  if (!f.dmax.empty()) {
    j["d_max_ms"] = c.d_max.front();
    j["feasible"] = ds <= c.d_max.front();
  }
  emit("eval", c.output_dir, f.format, render(j, single_row(j), f.format));
  return 0;
}

int run_optimize(const Flags& f) {
  const wus::RunConfig c = build_config(f);
  const wus::OptimizationResult r = wus::optimize(
      c.profile, c.timing, wus::TrafficModel{c.lambdas.front()}, wus::Constraint{c.d_max.front()});
  Json j;
  j["lambda_per_ms"] = c.lambdas.front();
  j["d_max_ms"] = c.d_max.front();
  j["tti_ms"] = c.timing.tti;
  const Json body = wus::report::to_json(r);
  for (const auto& [k, v] : body.items()) j[k] = v;
  emit("optimize", c.output_dir, f.format, render(j, single_row(j), f.format));
  return 0;
}

int run_simulate(const Flags& f) {
  const wus::RunConfig c = build_config(f);
  const wus::TrafficModel traffic{c.lambdas.front()};
  wus::WuConfig cfg;
  if (f.tw) {
    cfg = {*f.tw, f.ti.value_or(c.timing.tti), true};
  } else {
    const wus::OptimizationResult r =
        wus::optimize(c.profile, c.timing, traffic, wus::Constraint{c.d_max.front()});
    cfg = r.unbounded() ? r.advisory->cfg : wus::WuConfig{r.t_w_star, r.t_i_star, true};
  }
  wus::SimConfig sim = c.sim;
  sim.seed = c.seeds.front();
  const wus::SimulationReport rep = wus::simulate(c.profile, c.timing, traffic, c.channel, cfg, sim);

  Json j;
  j["lambda_per_ms"] = traffic.lambda;
  j["config"] = wus::report::to_json(cfg);
  j["channel"] = wus::report::to_json(c.channel);
  j["seed"] = sim.seed;
  j["analytical_power_mw"] = wus::average_power_full(c.profile, c.timing, traffic, c.channel, cfg);
  j["analytical_delay_ms"] = wus::average_delay_full(c.timing, traffic, c.channel, cfg).delay;
  j["report"] = wus::report::to_json(rep);
  const Csv csv = wus::report::simulation_csv({rep}, {"lambda=" + number(traffic.lambda)});
  emit("simulate", c.output_dir, f.format, render(j, csv, f.format));
  return 0;
}

int run_sweep(const Flags& f) {
  const wus::RunConfig c = build_config(f);
  const std::vector<wus::AnalyticPoint> pts =
      wus::analytic_sweep(c.profile, c.timing, c.channel, c.ttis, c.d_max, c.lambdas);
  const Csv csv = wus::report::analytic_csv(pts);
  Json j = Json::array();
  for (const auto& row : csv.rows()) {
    Json o;
    for (std::size_t k = 0; k < row.size(); ++k) o[csv.header()[k]] = row[k];
    j.push_back(o);
  }
  emit("sweep", c.output_dir, f.format, render(j, csv, f.format));
  return 0;
}

int run_compare_drx(const Flags& f) {
  const wus::RunConfig c = build_config(f);
  wus::SimConfig sim = c.drx_sim;
  sim.seed = c.seeds.front();
  const std::vector<wus::DrxComparisonPoint> pts =
      wus::compare_drx(c.profile, c.timing, c.channel, c.drx_table, c.drx_grid, c.lambdas,
                       c.d_max, sim, c.drx_delay_slack);
  const Csv csv = wus::report::drx_comparison_csv(pts);
  Json j = Json::array();
  for (const auto& p : pts) {
    Json o;
    o["lambda_per_ms"] = p.lambda;
    o["d_max_ms"] = p.d_max;
    o["regime"] = wus::to_string(p.regime);
    o["wus_config"] = wus::report::to_json(p.wus_cfg);
    o["wus_power_mw"] = p.wus_power;
    o["wus_delay_ms"] = p.wus_delay;
    o["drx"] = wus::report::to_json(p.drx);
    o["eta_percent"] = p.eta;
    j.push_back(o);
  }
  emit("compare-drx", c.output_dir, f.format, render(j, csv, f.format));
  return 0;
}

int run_reproduce(const Flags& f) {
  const wus::RunConfig c = build_config(f);
  const std::string dir = c.output_dir.empty() ? std::string(".") : c.output_dir;
  std::vector<std::string> targets;
  if (f.target == "all") {
    targets = wus::reproduce_targets();
  } else {
    targets = {f.target};
  }
  bool ok = true;
  for (const std::string& t : targets) {
    const wus::ReproduceOutput r = wus::reproduce(t, c);
    write_file(dir, t + ".csv", r.table.str());
    std::cout << t << ": " << r.table.size() << " rows, " << (r.passed() ? "pass" : "FAIL")
              << '\n';
    for (const std::string& msg : r.failures) std::cerr << t << ": " << msg << '\n';
    ok = ok && r.passed();
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wake-up signalling power/delay model, optimizer and simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "wusopt 1.0");
  Flags f;

  auto* eval = app.add_subcommand("eval", "analytical power, delay and gradients at a config");
  eval->add_option("--lambda", f.lambda, "packet arrival rate per ms")->required()->expected(1);
  eval->add_option("--tw", f.tw, "wake-up cycle in ms")->required();
  eval->add_option("--ti", f.ti, "inactivity timer in ms");
  eval->add_option("--dmax", f.dmax, "delay bound in ms")->expected(1);

  auto* opt = app.add_subcommand("optimize", "optimal wake-up cycle and inactivity timer");
  opt->add_option("--lambda", f.lambda, "packet arrival rate per ms")->expected(1);
  opt->add_option("--dmax", f.dmax, "delay bound in ms")->expected(1);

  auto* sim = app.add_subcommand("simulate", "event-driven simulation");
  sim->add_option("--lambda", f.lambda, "packet arrival rate per ms")->expected(1);
  sim->add_option("--dmax", f.dmax, "delay bound used when --tw is absent")->expected(1);
  sim->add_option("--tw", f.tw, "wake-up cycle in ms");
  sim->add_option("--ti", f.ti, "inactivity timer in ms");
  sim->add_option("--horizon", f.horizon, "number of sleep cycles")->check(CLI::PositiveNumber);

  auto* cmp = app.add_subcommand("compare-drx", "relative power saving against optimized DRX");
  cmp->add_option("--lambda", f.lambda, "packet arrival rates per ms");
  cmp->add_option("--dmax", f.dmax, "delay bounds in ms");
  cmp->add_option("--horizon", f.horizon, "simulated time per DRX config in ms")
      ->check(CLI::PositiveNumber);

  auto* rep = app.add_subcommand("reproduce", "regenerate table and figure data");
  rep->add_option("target", f.target, "table3, table5, fig4 ... fig8, or all")
      ->required()
      ->check(CLI::IsMember([] {
        std::vector<std::string> t = wus::reproduce_targets();
        t.push_back("all");
        return t;
      }()));

  auto* sweep = app.add_subcommand("sweep", "optimize over lambda x d_max x TTI lists");
  sweep->add_option("--lambda", f.lambda, "packet arrival rates per ms");
  sweep->add_option("--dmax", f.dmax, "delay bounds in ms");

  for (CLI::App* cmd : {eval, opt, sim, cmp, rep, sweep}) add_common(cmd, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (opt->parsed() && f.config.empty() && (f.lambda.empty() || f.dmax.empty())) {
    std::cerr << "optimize needs --lambda and --dmax, or a --config that provides them\n";
    return 2;
  }

  try {
    if (eval->parsed()) return run_eval(f);
    if (opt->parsed()) return run_optimize(f);
    if (sim->parsed()) return run_simulate(f);
    if (cmp->parsed()) return run_compare_drx(f);
    if (rep->parsed()) return run_reproduce(f);
    return run_sweep(f);
  } catch (const wus::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
