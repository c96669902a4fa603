// Acceptance gate: runs every criterion and prints one pass/fail line each.

#include <cstdio>

#include "ratlas/selftest.hpp"

int main() {
    bool all = true;
    auto progress = [&](const ratlas::selftest::CriterionResult& r) {
        std::printf("[%d/9] %s  %s\n      %s\n", r.id, r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.detail.c_str());
        std::fflush(stdout);
        all = all && r.pass;
    };
    ratlas::selftest::run_acceptance({}, progress);
    std::printf("%s\n", all ? "ACCEPTANCE: all criteria passed"
                            : "ACCEPTANCE: FAILURES PRESENT");
    return all ? 0 : 1;
}
