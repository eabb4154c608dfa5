#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace dendro {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;
    double seconds;
    double budget_seconds;
};

/// Runs the acceptance battery, printing one PASS/FAIL line per criterion
/// as it completes. A criterion over its time budget fails.
std::vector<CriterionResult> run_acceptance(std::ostream& out, std::uint64_t seed);

}  // namespace dendro
