#pragma once

#include <string>
#include <vector>

#include "cover.hpp"

namespace cycstab {

// Maximum average degree over all nonempty subsets of summands. This is
// mu_max of a split bundle computed without any filtration logic; it must
// agree with hn_filtration on every input.
Rational brute_force_mu_max(const SplitBundle& bundle, const SurfaceModel& surface);

// Cross-check of the Grothendieck-Riemann-Roch pushforward degree against
// the explicit decomposition pi_*pi^*F = F + F(-L) + ... + F(-(n-1)L);
// exact equality required.
bool grr_consistency(const CyclicCover& cover, const FormalSheaf& f);

// Splitting-principle expansion of Sym^l(O(D) + O(E)): the summands
// i*D + (l-i)*E for i = 0..l. rank and c1 must match sym_power_rank2.
SplitBundle sym_split_expand(const DivisorClass& d, const DivisorClass& e, int l);

struct SelfTestResult {
    bool passed = true;
    int checks_run = 0;
    std::vector<std::string> failures;
};

// The oracle suite behind the CLI `selftest` command: exhaustive HN
// cross-check on small split bundles, randomized pushforward-degree
// consistency, and symmetric-power expansion. Deterministic.
SelfTestResult run_selftest();

}  // namespace cycstab
