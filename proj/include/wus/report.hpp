#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "wus/drx.hpp"
#include "wus/optimizer.hpp"
#include "wus/sim.hpp"
#include "wus/sweep.hpp"
#include "wus/types.hpp"

namespace wus::report {

using Json = nlohmann::ordered_json;

Json to_json(const PowerProfile& p);
Json to_json(const TimingParams& t);
Json to_json(const ChannelErrorModel& c);
Json to_json(const WuConfig& c);
Json to_json(const OptimizationResult& r);
Json to_json(const SimulationReport& r);
Json to_json(const DrxConfig& c);
Json to_json(const DrxPowerTable& t);
Json to_json(const DrxOptimum& o);

/// Pretty-printed with a trailing newline. Infinities come out as null.
std::string dump(const Json& j);

/// Shortest text that reads back to the same double; empty for NaN and
/// "inf"/"-inf" for infinities.
std::string number(double v);

const char* segment_name(Segment s);

/// RFC 4180 table with a fixed header.
class Csv {
 public:
  explicit Csv(std::vector<std::string> header);

  Csv& row(std::vector<std::string> cells);
  std::size_t size() const { return rows_.size(); }
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  void write(std::ostream& os) const;
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

Csv analytic_csv(const std::vector<AnalyticPoint>& points);
Csv drx_comparison_csv(const std::vector<DrxComparisonPoint>& points);
Csv drx_grid_csv(const std::vector<DrxEvaluation>& evals, const Constraint& constraint,
                 double delay_slack);
Csv simulation_csv(const std::vector<SimulationReport>& reports,
                   const std::vector<std::string>& labels);

}  // namespace wus::report
