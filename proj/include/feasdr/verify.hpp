#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "feasdr/diagnostics.hpp"

namespace feasdr {

/// One named property check with its verdict.
struct CheckResult {
    std::string name;
    Verdict verdict;
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    int failed() const {
        int n = 0;
        for (const auto& c : checks)
            if (!c.verdict.passed) ++n;
        return n;
    }
    bool all_passed() const { return failed() == 0; }
};

/// Runs one of the seeded property suites: "geometry" (projection laws),
/// "operators" (nonexpansiveness inequalities and operator identities),
/// "algorithms" (hand-traced values, monotonicity, equivalences), or "all".
/// Every check is deterministic in the seed.
VerifyReport verify_suite(const std::string& suite, std::uint64_t seed);

} // namespace feasdr
