#pragma once

// Named verification suites run by `symtoda verify`. Each suite draws its
// samples from its own generator seeded by (seed, suite index), so a suite
// gives the same report whether it runs alone or inside the full set.

#include "symtoda/report.hpp"

#include <string>
#include <vector>

namespace symtoda {

struct SuiteConfig {
  int n = 3;
  unsigned long long seed = 0;
  Tolerances tolerances;
  /// Random points per suite where a suite samples points.
  int points = 20;
};

/// Suite names in execution order.
const std::vector<std::string>& suite_names();

/// Throws InputError for an unknown name or n outside [2, 8].
Report run_suite(const std::string& name, const SuiteConfig& config);

/// The named suites (all when `names` is empty) merged into one report named
/// "verify", with a per-suite summary (passed, max residual) under the
/// "suites" note.
Report run_suites(const std::vector<std::string>& names, const SuiteConfig& config);

}  // namespace symtoda
