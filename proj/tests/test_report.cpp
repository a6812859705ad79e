#include <doctest.h>

#include <charconv>
#include <cmath>
#include <limits>
#include <random>

#include "wus/config.hpp"
#include "wus/errors.hpp"
#include "wus/report.hpp"
#include "wus/reproduce.hpp"

using namespace wus;
using report::Csv;
using report::number;

TEST_CASE("numbers print in shortest round-trip form") {
  CHECK(number(1.0) == "1");
  CHECK(number(0.1) == "0.1");
  CHECK(number(std::nan("")) == "");
  CHECK(number(std::numeric_limits<double>::infinity()) == "inf");
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int k = 0; k < 1000; ++k) {
    const double v = u(gen) * std::pow(10.0, static_cast<int>(gen() % 40) - 20);
    const std::string s = number(v);
    double back = 0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == v);
  }
}

TEST_CASE("CSV quotes fields that need it and uses CRLF") {
  Csv csv({"name", "power_mw"});
  csv.row({"a,b", "1"}).row({"say \"hi\"", "2"}).row({"plain", ""});
  CHECK(csv.str() == "name,power_mw\r\n\"a,b\",1\r\n\"say \"\"hi\"\"\",2\r\nplain,\r\n");
  CHECK_THROWS_AS(csv.row({"only one"}), InvalidArgument);
}

TEST_CASE("JSON output maps infinities to null") {
  OptimizationResult r;
  r.t_w_star = std::numeric_limits<double>::infinity();
  r.t_i_star = std::numeric_limits<double>::infinity();
  r.regime = Regime::WusIneffective;
  const report::Json j = report::to_json(r);
  CHECK(j.at("t_w_star_ms").is_null());
  CHECK(j.at("regime") == "WUS_INEFFECTIVE");
  CHECK(report::dump(j).back() == '\n');
}

TEST_CASE("run configuration round-trips through JSON") {
  RunConfig c;
  c.scenario = "roundtrip";
  c.profile = PowerProfile::reference(1.3);
  c.timing.t_su = 20;
  c.channel = ChannelErrorModel::realistic();
  c.lambdas = {0.02, 0.04};
  c.seeds = {7, 8};
  c.drx_grid.t_long = {80, 160};
  c.drx_table.pw_sleep_short = 300;
  c.drx_delay_slack = 1.5;
  const RunConfig back = RunConfig::from_json(nlohmann::json::parse(c.to_json().dump()));
  CHECK(back.to_json() == c.to_json());
  CHECK(back.profile.pw2 == doctest::Approx(1.3 * 850));
  CHECK(back.drx_table.pw_sleep_short == 300);
}

TEST_CASE("configuration defaults and overrides") {
  const RunConfig c = RunConfig::from_json(nlohmann::json::parse(R"({"profile": {"phi": 1.2}, "timing": {"tti": 0.5},
      "drx": {"grid": "full"}})"));
  CHECK(c.profile.phi() == doctest::Approx(1.2));
  CHECK(c.timing.t_s == 0.5);
  CHECK(c.drx_grid.t_long.size() == DrxGrid{}.t_long.size());
  CHECK(c.lambdas.size() == 3);
  CHECK_THROWS_AS(RunConfig::from_json(nlohmann::json::parse(R"({"lambdas": "x"})")), InvalidArgument);
  CHECK_THROWS_AS(RunConfig::from_json(nlohmann::json::parse(R"({"drx": {"grid": "huge"}})")), InvalidArgument);
  RunConfig empty;
  empty.d_max.clear();
  CHECK_THROWS_AS(empty.validate(), InvalidArgument);
  CHECK_THROWS_AS(RunConfig::load("/nonexistent/run.json"), InvalidArgument);
}

TEST_CASE("reproduction of the optimum tables") {
  const RunConfig c;
  const ReproduceOutput t3 = reproduce("table3", c);
  CHECK(t3.passed());
  CHECK(t3.table.size() == 9);
  const ReproduceOutput t5 = reproduce("table5", c);
  CHECK(t5.passed());
  CHECK(t5.table.size() == 36);
  CHECK(t5.table.header().front() == "tti_ms");
  CHECK_THROWS_AS(reproduce("table9", c), InvalidArgument);
  CHECK(reproduce_targets().size() == 7);
}
