// Self-check behind `brachistochrone verify`: a reduced-scale run of the
// oracle comparisons and errata checks, each reported by a stable name.
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace brach {

struct CheckResult {
    enum class Bound { at_most, at_least };

    std::string name;
    std::string description;
    double value = 0.0;
    double threshold = 0.0;
    Bound bound = Bound::at_most;
    bool passed = false;
};

struct VerifyOptions {
    /// Replaces the threshold of every at_most check.
    std::optional<double> tolerance;
};

std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

}  // namespace brach
