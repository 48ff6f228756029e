#include <cstdio>

#include "posetlab/criteria.hpp"

// Runs every acceptance criterion and prints one line per result; exits
// nonzero when any criterion fails.
int main() {
    auto results = posetlab::run_acceptance();
    bool all = true;
    for (const auto& r : results) {
        std::printf("%s %2d %s%s%s\n", r.pass ? "PASS" : "FAIL", r.index, r.name.c_str(),
                    r.detail.empty() ? "" : ": ", r.detail.c_str());
        all = all && r.pass;
    }
    std::printf("%s\n", all ? "all criteria passed" : "some criteria FAILED");
    return all ? 0 : 1;
}
