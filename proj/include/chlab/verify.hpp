#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chlab {

struct Check {
    std::string name;
    bool pass = false;
    double value = 0.0;      // measured quantity
    double threshold = 0.0;  // bound it was held against
};

// Invariant suites runnable from the CLI. Each check is self-contained and
// deterministic.
std::vector<Check> verify_spectral();
std::vector<Check> verify_lp();
std::vector<Check> verify_oracle();
std::vector<Check> verify_conservation();

// Prints one PASS/FAIL line per check; returns 0 when all pass, 1 otherwise.
int run_verify_suite(const std::string& suite, std::ostream& out);

} // namespace chlab
