#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "wus/drx.hpp"
#include "wus/sim.hpp"
#include "wus/types.hpp"

namespace wus {

/// Everything a command needs besides its own flags. Read from a JSON
/// document; keys that are absent keep the defaults below.
struct RunConfig {
  std::string scenario = "default";
  PowerProfile profile = PowerProfile::reference(1.1);
  TimingParams timing = TimingParams::reference(1.0);
  ChannelErrorModel channel = ChannelErrorModel::ideal();
  std::vector<double> lambdas{0.01, 0.08, 0.15};
  std::vector<double> d_max{30.0, 75.0, 500.0};
  std::vector<double> ttis{1.0};
  std::vector<std::uint64_t> seeds{1};
  std::string output_dir;

  SimConfig sim{HorizonKind::Cycles, 2e5, -1.0, 1, 0, 64};
  DrxPowerTable drx_table;
  DrxGrid drx_grid = DrxGrid::reduced();
  SimConfig drx_sim{HorizonKind::Time, 2e5, -1.0, 1, 0, 64};
  double drx_delay_slack = 0.0;

  void validate() const;

  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig load(const std::string& path);
  nlohmann::ordered_json to_json() const;
};

}  // namespace wus
