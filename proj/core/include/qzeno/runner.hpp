#pragma once

#include <qzeno/config.hpp>
#include <qzeno/report.hpp>

namespace qzeno {

// Executes one scenario under its config and returns the row report; row
// tolerances are pinned here.  Throws ValidationError on semantically
// impossible configs (e.g. antizeno with t_start != 0).
RunReport run_scenario(const ScenarioConfig& config,
                       const ToleranceConfig& tol = {});

}  // namespace qzeno
