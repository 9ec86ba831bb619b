#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace reopt {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Self-check battery over the core operators and oracles: mutation and
/// parent-selection distributions, slot-distance and elitism invariants,
/// equal-fitness acceptance, evaluation accounting, penalty dominance, and
/// brute-force cross-validation of the optimum oracles. Deterministic for a
/// fixed seed.
std::vector<CheckResult> run_verify_suite(std::uint64_t seed);

} // namespace reopt
