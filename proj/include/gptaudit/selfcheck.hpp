#pragma once

#include <string>
#include <vector>

namespace gptaudit {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SelfcheckReport {
    std::vector<CheckResult> checks;
    std::vector<std::string> notes;
    bool all_pass = true;
};

// Runs the full reproduction ledger. `qubit_symmetry_tolerance` bounds the
// accepted error asymmetry in the quantum checks; the optimum is symmetric in
// closed form, so even 0 passes.
SelfcheckReport run_selfcheck(double qubit_symmetry_tolerance = 1e-9);

}  // namespace gptaudit
