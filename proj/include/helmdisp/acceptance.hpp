#pragma once

#include <string>
#include <vector>

namespace helmdisp::acceptance {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
};

/// Runs the full acceptance suite (12 criteria), printing one line per
/// criterion to stdout as it completes. Returns all results.
std::vector<CriterionResult> run_all();

/// True when every criterion passed.
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace helmdisp::acceptance
