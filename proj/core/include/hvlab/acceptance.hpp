#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hvlab {

struct AcceptanceOptions {
    std::uint64_t seed = 7;
    std::int64_t n_intervals = 1'000'000;  // per statistical point
    int partitions = 1;
    std::ostream* log = nullptr;  // one line per criterion as it completes
};

struct CriterionResult {
    int index = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Runs the full acceptance suite: Malus law, coincidence curves, CHSH
/// violation and controls, marginal uniformity, Boolean saw-tooth and
/// separation, ortho-normality, interference outputs and classifier, the
/// four-party swap reports, and CSV reproducibility across partitions.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace hvlab
