#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mtm {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Oracle-backed verification suites. Each check compares library results
// against enumeration, brute-force counting, or the generic chain pipeline.
std::vector<Check> verify_core(int matrices = 50, int models = 20, std::uint64_t seed = 0);
std::vector<Check> verify_manhattan(int max_n = 5);
std::vector<Check> verify_modular(int balanced = 20, int unbalanced = 10, std::uint64_t seed = 0);
std::vector<Check> verify_downtown(int max_n = 2);

}  // namespace mtm
