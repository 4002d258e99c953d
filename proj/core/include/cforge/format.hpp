#pragma once

#include <string>
#include <vector>

#include "cforge/contract.hpp"

namespace cforge {

/// Text block:
///   InVars: [i]
///   OutVars:[o_p]
///   A: [
///       i <= 0.2
///   ]
///   G: [ ... ]
std::string format_contract(const PolyhedralContract& c);

std::string format_var_list(const std::vector<std::string>& names);

}  // namespace cforge
