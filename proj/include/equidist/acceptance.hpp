// acceptance.hpp
//
// The acceptance suite: nine criteria, each reported as one line. Reports
// carry no timings, so two runs with different worker counts must match
// byte for byte.

#ifndef EQUIDIST_ACCEPTANCE_HPP
#define EQUIDIST_ACCEPTANCE_HPP

#include <string>
#include <vector>

namespace eqd {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
};

/// Criteria 1 to 8 with the given worker count.
std::vector<CriterionResult> run_criteria(unsigned workers);

/// Criteria 1 to 8 at `workers`, then again at a second worker count (8, or
/// 1 when workers is 8); criterion 9 holds when both reports are identical.
std::vector<CriterionResult> run_acceptance(unsigned workers);

/// "criterion <id> <PASS|FAIL> <title>: <detail>", one line each.
std::string format_report(const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace eqd

#endif
