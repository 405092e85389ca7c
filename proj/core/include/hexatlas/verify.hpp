#pragma once

#include <string>
#include <vector>

#include "hexatlas/targets.hpp"

// Verification suites for the counting and intersection theorems the
// catalogs are expected to satisfy.  Each suite runs a list of named checks
// and reports pass/fail with a short detail string; any theory violation
// inside a check is caught and reported as a failure rather than aborting
// the whole suite.

namespace hexatlas::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool all_pass() const;
};

// Suites: counts, hexagon-counts, planes, spreads, degrees,
// violated-is-hexagon, hexcomp, doily-patterns, trace-out, cabello, all.
std::vector<std::string> suite_names();

SuiteReport run_suite(const std::string& name, const TargetBundle& b);

// {suite, checks: [{name, pass, detail}, ...]}
std::string report_json(const SuiteReport& r);

// one row per check: name, pass, detail
std::string report_csv(const SuiteReport& r);

}  // namespace hexatlas::verify
