#pragma once
// End-to-end release gate: nine numbered checks covering the oracle-vs-chain
// agreement, the Monte Carlo estimators, the bounds, and the fixtures. Each
// check prints exactly one [PASS]/[FAIL] line.

#include <ostream>

namespace rmpslab {

// Runs all nine checks, streaming one line per check; returns true iff all pass.
bool run_acceptance(std::ostream& os);

}  // namespace rmpslab
