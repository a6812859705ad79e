#include "wus/report.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

#include "wus/errors.hpp"

namespace wus::report {

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

std::string number(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

const char* segment_name(Segment s) {
  switch (s) {
    case Segment::WrxOn: return "wrx_on";
    case Segment::Decode: return "decode";
    case Segment::Inactivity: return "inactivity";
    case Segment::Sleep: return "sleep";
    case Segment::Startup: return "startup";
    case Segment::Powerdown: return "powerdown";
  }
  return "?";
}

Json to_json(const PowerProfile& p) {
  return {{"pw1_mw", p.pw1}, {"pw2_mw", p.pw2}, {"pw3_mw", p.pw3}, {"pw4_mw", p.pw4},
          {"phi", p.phi()}};
}

Json to_json(const TimingParams& t) {
  return {{"t_su_ms", t.t_su}, {"t_pd_ms", t.t_pd}, {"t_on_ms", t.t_on}, {"t_s_ms", t.t_s},
          {"tti_ms", t.tti}};
}

Json to_json(const ChannelErrorModel& c) { return {{"p_fa", c.p_fa}, {"p_md", c.p_md}}; }

Json to_json(const WuConfig& c) { return {{"t_w_ms", c.t_w}, {"t_i_ms", c.t_i}}; }

Json to_json(const OptimizationResult& r) {
  Json j;
  j["regime"] = std::string(to_string(r.regime));
  j["lambda_t_per_ms"] = finite_or_null(r.lambda_t);
  j["t_w_star_ms"] = finite_or_null(r.t_w_star);
  j["t_i_star_ms"] = finite_or_null(r.t_i_star);
  j["t_wb_ms"] = finite_or_null(r.t_wb);
  j["predicted_power_mw"] = r.predicted_power;
  j["predicted_delay_ms"] = r.predicted_delay;
  j["boundary_case"] = r.boundary_case ? Json(std::string(to_string(*r.boundary_case)))
                                       : Json(nullptr);
  j["t_ws_ms"] = r.t_ws ? Json(*r.t_ws) : Json(nullptr);
  if (r.advisory) {
    j["advisory"] = {{"t_w_ms", r.advisory->cfg.t_w},
                     {"t_i_ms", r.advisory->cfg.t_i},
                     {"power_mw", r.advisory->power},
                     {"delay_ms", r.advisory->delay}};
  } else {
    j["advisory"] = nullptr;
  }
  return j;
}

Json to_json(const SimulationReport& r) {
  Json shares = Json::object();
  Json times = Json::object();
  for (std::size_t k = 0; k < kSegments; ++k) {
    shares[segment_name(static_cast<Segment>(k))] = r.energy_share[k];
    times[segment_name(static_cast<Segment>(k))] = r.time_share[k];
  }
  return {{"mean_power_mw", r.mean_power},
          {"power_stderr_mw", r.power_stderr},
          {"mean_delay_ms", r.mean_delay},
          {"delay_stderr_ms", r.delay_stderr},
          {"mean_packet_delay_ms", r.mean_packet_delay},
          {"packet_delay_stderr_ms", r.packet_delay_stderr},
          {"energy_share", shares},
          {"time_share", times},
          {"visits", {r.visits[0], r.visits[1], r.visits[2], r.visits[3]}},
          {"counters",
           {{"cycles", r.counters.cycles},
            {"wakeups", r.counters.wakeups},
            {"false_alarms", r.counters.false_alarms},
            {"misdetections", r.counters.misdetections},
            {"packets", r.counters.packets}}},
          {"simulated_time_ms", r.simulated_time}};
}

Json to_json(const DrxConfig& c) {
  return {{"t_on_drx_ms", c.t_on_drx}, {"t_inactivity_ms", c.t_inactivity},
          {"t_short_ms", c.t_short},   {"n_short", c.n_short},
          {"t_long_ms", c.t_long}};
}

Json to_json(const DrxPowerTable& t) {
  return {{"pw_sleep_short_mw", t.pw_sleep_short}, {"pw_sleep_long_mw", t.pw_sleep_long},
          {"pw_active_mw", t.pw_active},           {"pw_decode_mw", t.pw_decode},
          {"t_su_short_ms", t.t_su_short},         {"t_pd_short_ms", t.t_pd_short},
          {"t_su_long_ms", t.t_su_long},           {"t_pd_long_ms", t.t_pd_long}};
}

Json to_json(const DrxOptimum& o) {
  return {{"config", to_json(o.cfg)},
          {"power_mw", o.power},
          {"packet_delay_ms", o.delay},
          {"feasible_configs", o.feasible}};
}

Csv::Csv(std::vector<std::string> header) : header_(std::move(header)) {}

Csv& Csv::row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw InvalidArgument("CSV row width mismatch");
  rows_.push_back(std::move(cells));
  return *this;
}

void Csv::write(std::ostream& os) const {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << quote(cells[i]);
    }
    os << "\r\n";
  };
  line(header_);
  for (const auto& r : rows_) line(r);
}

std::string Csv::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

Csv analytic_csv(const std::vector<AnalyticPoint>& points) {
  Csv csv({"tti_ms", "d_max_ms", "lambda_per_ms", "regime", "lambda_t_per_ms", "t_wb_ms",
           "t_w_star_ms", "t_i_star_ms", "t_w_ms", "t_i_ms", "power_simplified_mw",
           "delay_simplified_ms", "power_full_mw", "delay_full_ms"});
  for (const AnalyticPoint& p : points) {
    csv.row({number(p.tti), number(p.d_max), number(p.lambda),
             std::string(to_string(p.optimum.regime)), number(p.optimum.lambda_t),
             number(p.optimum.t_wb), number(p.optimum.t_w_star), number(p.optimum.t_i_star),
             number(p.cfg.t_w), number(p.cfg.t_i), number(p.power_simplified),
             number(p.delay_simplified), number(p.power_full), number(p.delay_full)});
  }
  return csv;
}

Csv drx_comparison_csv(const std::vector<DrxComparisonPoint>& points) {
  Csv csv({"lambda_per_ms", "d_max_ms", "regime", "wus_t_w_ms", "wus_t_i_ms", "wus_power_mw",
           "wus_delay_ms", "drx_t_on_ms", "drx_t_inactivity_ms", "drx_t_short_ms",
           "drx_n_short", "drx_t_long_ms", "drx_power_mw", "drx_packet_delay_ms",
           "drx_feasible_configs", "eta_percent"});
  for (const DrxComparisonPoint& p : points) {
    csv.row({number(p.lambda), number(p.d_max), std::string(to_string(p.regime)),
             number(p.wus_cfg.t_w), number(p.wus_cfg.t_i), number(p.wus_power),
             number(p.wus_delay), number(p.drx.cfg.t_on_drx), number(p.drx.cfg.t_inactivity),
             number(p.drx.cfg.t_short), std::to_string(p.drx.cfg.n_short),
             number(p.drx.cfg.t_long), number(p.drx.power), number(p.drx.delay),
             std::to_string(p.drx.feasible), number(p.eta)});
  }
  return csv;
}

Csv drx_grid_csv(const std::vector<DrxEvaluation>& evals, const Constraint& constraint,
                 double delay_slack) {
  Csv csv({"t_on_drx_ms", "t_inactivity_ms", "t_short_ms", "n_short", "t_long_ms", "power_mw",
           "power_stderr_mw", "packet_delay_ms", "packet_delay_stderr_ms", "feasible"});
  for (const DrxEvaluation& e : evals) {
    csv.row({number(e.cfg.t_on_drx), number(e.cfg.t_inactivity), number(e.cfg.t_short),
             std::to_string(e.cfg.n_short), number(e.cfg.t_long), number(e.report.mean_power),
             number(e.report.power_stderr), number(e.report.mean_packet_delay),
             number(e.report.packet_delay_stderr),
             drx_feasible(e.report, constraint, delay_slack) ? "1" : "0"});
  }
  return csv;
}

Csv simulation_csv(const std::vector<SimulationReport>& reports,
                   const std::vector<std::string>& labels) {
  std::vector<std::string> header{"label", "mean_power_mw", "power_stderr_mw", "mean_delay_ms",
                                  "delay_stderr_ms", "mean_packet_delay_ms",
                                  "packet_delay_stderr_ms"};
  for (std::size_t k = 0; k < kSegments; ++k) {
    header.push_back(std::string("energy_share_") + segment_name(static_cast<Segment>(k)));
  }
  for (const char* c : {"cycles", "wakeups", "false_alarms", "misdetections", "packets"}) {
    header.emplace_back(c);
  }
  Csv csv(header);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const SimulationReport& r = reports[i];
    std::vector<std::string> row{i < labels.size() ? labels[i] : std::to_string(i),
                                 number(r.mean_power),
                                 number(r.power_stderr),
                                 number(r.mean_delay),
                                 number(r.delay_stderr),
                                 number(r.mean_packet_delay),
                                 number(r.packet_delay_stderr)};
    for (double s : r.energy_share) row.push_back(number(s));
    for (std::uint64_t c : {r.counters.cycles, r.counters.wakeups, r.counters.false_alarms,
                            r.counters.misdetections, r.counters.packets}) {
      row.push_back(std::to_string(c));
    }
    csv.row(std::move(row));
  }
  return csv;
}

}  // namespace wus::report
