#pragma once

#include "report.hpp"
#include "scenario.hpp"

namespace cycstab {

// Executes a scenario's queries in order. When `override_query` is
// non-null it is run instead of the scenario's own [queries] section
// (this is how CLI subcommands reuse a scenario's declarations).
Report run_scenario(const Scenario& scenario, const Query* override_query = nullptr);

}  // namespace cycstab
