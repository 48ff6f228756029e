#pragma once

#include <string>
#include <vector>

namespace posetlab {

struct criterion_result {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // failure note or key numbers
};

// The twelve checks behind the `repro` subcommand and the acceptance binary.
std::vector<criterion_result> run_acceptance(int threads = 0);

}  // namespace posetlab
