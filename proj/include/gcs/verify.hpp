#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gcs {

// One row of the cross-module invariant suite.
struct CheckResult {
    std::string name;
    bool pass = false;
    double value = 0.0;      // the measured residual / fitted constant
    std::string details;
};

// Runs every check whose name contains `filter` (all when empty).
std::vector<CheckResult> run_verification_suite(const std::string& filter = "");

// Pass/fail table; returns true when every executed check passed.
bool print_verification_table(std::ostream& os, const std::vector<CheckResult>& results);

}  // namespace gcs
