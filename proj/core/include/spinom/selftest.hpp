#pragma once

#include <string>
#include <vector>

namespace spinom {

struct SelftestCase {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Derived-constant checks and a quick pass of the numerical oracles.
std::vector<SelftestCase> run_selftest();

}  // namespace spinom
