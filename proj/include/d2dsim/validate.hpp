#pragma once

#include <string>
#include <vector>

namespace d2dsim {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail; // empty when passed
};

/// Fast self-test of the core model invariants (Bessel mapping, AR(1)
/// moments, SINR identities, matching optimality, interval behavior,
/// degenerate outage limits, CSV round trip). Runs in about a second.
std::vector<CheckResult> run_validation();

bool all_passed(const std::vector<CheckResult>& results);

} // namespace d2dsim
