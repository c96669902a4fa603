// selftest.hpp — the regression gate: every headline number the library is
// expected to reproduce, run end to end with pinned tolerances.

#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ratlas::selftest {

struct Options {
    // When nonzero, tightens that criterion's tolerances absurdly so the
    // harness demonstrably reports failures (test mode only).
    int tamper_criterion{0};
    // When nonzero, runs only that criterion.
    int only_criterion{0};
};

struct CriterionResult {
    int id{0};
    std::string name;
    bool pass{false};
    std::string detail;   // measured values, and the violated bound on failure
};

using ProgressFn = std::function<void(const CriterionResult&)>;

// Runs all criteria in order; on_done (optional) fires after each one.
std::vector<CriterionResult> run_acceptance(const Options& opts = {},
                                            const ProgressFn& on_done = {});

} // namespace ratlas::selftest
