#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qsdlab {

/// Outcome of one validation criterion.
struct CriterionResult {
    std::string id;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Identifiers and names of all validation criteria, in run order.
std::vector<std::pair<std::string, std::string>> list_criteria();

/// Run every criterion, printing one PASS/FAIL line per criterion to `log`.
/// `full` selects acceptance-scale runs; otherwise reduced sizes.
std::vector<CriterionResult> run_validation(bool full, std::ostream& log);

/// Negative control: a consistently mis-forced qubit Riccati
/// (lambda*gamma/2 in place of lambda*gamma*Gamma/2, run at Gamma = 2)
/// must be caught by the ensemble trace statistic. Returns true when the
/// corruption is detected and the correct build passes the same check.
bool run_negative_control(std::ostream& log);

}  // namespace qsdlab
