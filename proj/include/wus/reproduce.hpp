#pragma once

#include <string>
#include <vector>

#include "wus/config.hpp"
#include "wus/report.hpp"

namespace wus {

struct ReproduceOutput {
  std::string target;
  report::Csv table{{}};
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

/// table3, table5, fig4, fig5, fig6, fig7, fig8.
const std::vector<std::string>& reproduce_targets();

/// Regenerates the data behind one table or figure and runs its checks.
/// Throws InvalidArgument for an unknown target.
ReproduceOutput reproduce(const std::string& target, const RunConfig& cfg);

}  // namespace wus
