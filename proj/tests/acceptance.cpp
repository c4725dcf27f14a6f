// Acceptance suite: one line per criterion, exit 0 iff all pass.

#include <cstdio>

#include "endo/verify.hpp"

int main() {
    auto results = endo::verify::acceptance_criteria();
    bool all = true;
    for (const auto& r : results) {
        std::printf("[%s] %s  (%ld trials, %.2f s)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.trials, r.seconds);
        if (!r.pass) std::printf("        %s\n", r.detail.c_str());
        all = all && r.pass;
    }
    std::printf("%s\n", all ? "acceptance: ALL CRITERIA PASS" : "acceptance: FAILURES PRESENT");
    return all ? 0 : 1;
}
