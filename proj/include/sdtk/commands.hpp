#pragma once

#include "sdtk/report.hpp"

namespace sdtk {

/// Executes one subcommand described by a JSON config with a "command"
/// field ("marker.search", "belt.psi", ...). Exceptions become verdicts:
/// budget and window-edge problems are inconclusive, bad input is a usage
/// error. The report is deterministic apart from the wall-time field.
Report run_command(const json& config);

struct CriterionResult {
  std::string name;
  bool pass = false;
  json details;
};

/// The full acceptance battery; each criterion is self-contained and
/// carries its own independent oracle.
std::vector<CriterionResult> run_acceptance_suite();

}  // namespace sdtk
