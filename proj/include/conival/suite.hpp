#pragma once

#include <string>
#include <vector>

namespace conival::suite {

/**
 * The acceptance battery: ten numbered criteria mixing exact identities and
 * seeded Monte Carlo checks. Every tolerance, seed, sample count and runtime
 * budget is pinned in the implementation, so a run is reproducible and a
 * criterion either passes or names the first instance that failed.
 */
struct CriterionResult {
    int number = 0;
    std::string name;
    bool ok = false;
    std::string detail;
    double seconds = 0.0;
};

inline constexpr int kCriterionCount = 10;

std::string criterion_name(int number);

/** Run one criterion (1-based). Throws std::invalid_argument out of range. */
CriterionResult run_criterion(int number);

/** Run all criteria in order. */
std::vector<CriterionResult> run_all();

}  // namespace conival::suite
