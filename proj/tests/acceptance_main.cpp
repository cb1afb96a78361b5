// Runs every acceptance criterion and prints one verdict line per criterion.
// Exit status is nonzero when any criterion fails.

#include "conival/suite.hpp"

#include <cstdio>

int main() {
    bool all_ok = true;
    for (int i = 1; i <= conival::suite::kCriterionCount; ++i) {
        const conival::suite::CriterionResult r = conival::suite::run_criterion(i);
        all_ok = all_ok && r.ok;
        std::printf("[%s] criterion %2d: %s — %s (%.2f s)\n", r.ok ? "PASS" : "FAIL", r.number,
                    r.name.c_str(), r.detail.c_str(), r.seconds);
        std::fflush(stdout);
    }
    return all_ok ? 0 : 1;
}
