#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "olk/step_function.hpp"

namespace olk {

// One named invariant exercised over seeded random instances.
// worst_residual is the largest normalized violation observed; a clean
// run of an exact check reports 0.
struct CheckResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    real worst_residual = 0.0;
};

struct SuiteReport {
    std::uint64_t seed = 0;
    int cases = 0; // requested instances per check (heavy checks subsample)
    std::vector<CheckResult> checks;
    int total_failures() const;
    bool all_passed() const { return total_failures() == 0; }
};

// Every module invariant as a named check.  Each check draws from its
// own generator seeded by (seed, check index), so a fixed seed gives a
// byte-identical report regardless of how the caller consumes it.
// cases == 0 yields an empty summary.
SuiteReport run_suite(std::uint64_t seed, int cases);

std::vector<std::string> suite_check_names();

} // namespace olk
