#include "wus/config.hpp"

#include <fstream>

#include "wus/errors.hpp"

namespace wus {

namespace {

using nlohmann::json;

template <typename T>
void get(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

HorizonKind horizon_kind(const std::string& s) {
  if (s == "cycles") return HorizonKind::Cycles;
  if (s == "time") return HorizonKind::Time;
  throw InvalidArgument("horizon kind must be \"cycles\" or \"time\", got \"" + s + "\"");
}

void read_sim(const json& j, SimConfig& sim) {
  if (j.contains("kind")) sim.kind = horizon_kind(j.at("kind").get<std::string>());
  get(j, "horizon", sim.horizon);
  get(j, "warmup", sim.warmup);
  get(j, "batches", sim.batches);
}

nlohmann::ordered_json write_sim(const SimConfig& s) {
  return {{"kind", s.kind == HorizonKind::Cycles ? "cycles" : "time"},
          {"horizon", s.horizon},
          {"warmup", s.warmup},
          {"batches", s.batches}};
}

template <typename T>
void require_nonempty(const std::vector<T>& v, const char* what) {
  if (v.empty()) throw InvalidArgument(std::string(what) + " must not be empty");
}

}  // namespace

void RunConfig::validate() const {
  profile.validate();
  timing.validate();
  channel.validate();
  require_nonempty(lambdas, "lambdas");
  require_nonempty(d_max, "d_max");
  require_nonempty(ttis, "ttis");
  require_nonempty(seeds, "seeds");
  for (double tti : ttis) {
    TimingParams t = timing;
    t.tti = t.t_s = tti;
    t.validate();
    for (double l : lambdas) TrafficModel{l}.validate(t);
    for (double d : d_max) Constraint{d}.validate(t);
  }
  sim.validate();
  drx_table.validate();
  drx_sim.validate();
}

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  try {
    get(j, "scenario", c.scenario);
    if (j.contains("profile")) {
      const json& p = j.at("profile");
      if (p.contains("phi")) c.profile = PowerProfile::reference(p.at("phi").get<double>());
      get(p, "pw1", c.profile.pw1);
      get(p, "pw2", c.profile.pw2);
      get(p, "pw3", c.profile.pw3);
      get(p, "pw4", c.profile.pw4);
    }
    if (j.contains("timing")) {
      const json& t = j.at("timing");
      get(t, "t_su", c.timing.t_su);
      get(t, "t_pd", c.timing.t_pd);
      get(t, "t_on", c.timing.t_on);
      get(t, "tti", c.timing.tti);
      c.timing.t_s = c.timing.tti;
    }
    if (j.contains("channel")) {
      get(j.at("channel"), "p_fa", c.channel.p_fa);
      get(j.at("channel"), "p_md", c.channel.p_md);
    }
    get(j, "lambdas", c.lambdas);
    get(j, "d_max", c.d_max);
    get(j, "ttis", c.ttis);
    get(j, "seeds", c.seeds);
    get(j, "output_dir", c.output_dir);
    if (j.contains("sim")) read_sim(j.at("sim"), c.sim);
    if (j.contains("drx")) {
      const json& d = j.at("drx");
      if (d.contains("table")) {
        const json& t = d.at("table");
        get(t, "pw_sleep_short", c.drx_table.pw_sleep_short);
        get(t, "pw_sleep_long", c.drx_table.pw_sleep_long);
        get(t, "pw_active", c.drx_table.pw_active);
        get(t, "pw_decode", c.drx_table.pw_decode);
        get(t, "t_su_short", c.drx_table.t_su_short);
        get(t, "t_pd_short", c.drx_table.t_pd_short);
        get(t, "t_su_long", c.drx_table.t_su_long);
        get(t, "t_pd_long", c.drx_table.t_pd_long);
      }
      if (d.contains("grid")) {
        const json& g = d.at("grid");
        if (g.is_string()) {
          const std::string name = g.get<std::string>();
          if (name == "full") {
            c.drx_grid = DrxGrid{};
          } else if (name == "reduced") {
            c.drx_grid = DrxGrid::reduced();
          } else {
            throw InvalidArgument("drx.grid must be \"full\", \"reduced\" or an object");
          }
        } else {
          get(g, "t_on_drx", c.drx_grid.t_on_drx);
          get(g, "t_inactivity", c.drx_grid.t_inactivity);
          get(g, "t_short", c.drx_grid.t_short);
          get(g, "n_short", c.drx_grid.n_short);
          get(g, "t_long", c.drx_grid.t_long);
        }
      }
      if (d.contains("sim")) read_sim(d.at("sim"), c.drx_sim);
      get(d, "delay_slack", c.drx_delay_slack);
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("bad run configuration: ") + e.what());
  }
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open configuration file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidArgument("cannot parse " + path + ": " + e.what());
  }
  return from_json(j);
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json grid = {{"t_on_drx", drx_grid.t_on_drx},
                                 {"t_inactivity", drx_grid.t_inactivity},
                                 {"t_short", drx_grid.t_short},
                                 {"n_short", drx_grid.n_short},
                                 {"t_long", drx_grid.t_long}};
  return {{"scenario", scenario},
          {"profile", {{"pw1", profile.pw1}, {"pw2", profile.pw2}, {"pw3", profile.pw3},
                       {"pw4", profile.pw4}}},
          {"timing", {{"t_su", timing.t_su}, {"t_pd", timing.t_pd}, {"t_on", timing.t_on},
                      {"tti", timing.tti}}},
          {"channel", {{"p_fa", channel.p_fa}, {"p_md", channel.p_md}}},
          {"lambdas", lambdas},
          {"d_max", d_max},
          {"ttis", ttis},
          {"seeds", seeds},
          {"output_dir", output_dir},
          {"sim", write_sim(sim)},
          {"drx",
           {{"table",
             {{"pw_sleep_short", drx_table.pw_sleep_short},
              {"pw_sleep_long", drx_table.pw_sleep_long},
              {"pw_active", drx_table.pw_active},
              {"pw_decode", drx_table.pw_decode},
              {"t_su_short", drx_table.t_su_short},
              {"t_pd_short", drx_table.t_pd_short},
              {"t_su_long", drx_table.t_su_long},
              {"t_pd_long", drx_table.t_pd_long}}},
            {"grid", grid},
            {"sim", write_sim(drx_sim)},
            {"delay_slack", drx_delay_slack}}}};
}

}  // namespace wus
