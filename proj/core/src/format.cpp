#include "cforge/format.hpp"

#include "cforge/parser.hpp"

namespace cforge {

std::string format_var_list(const std::vector<std::string>& names) {
  std::string out = "[";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += ", ";
    out += names[i];
  }
  return out + "]";
}

std::string format_contract(const PolyhedralContract& c) {
  std::string out = "InVars: " + format_var_list(c.inputs()) + "\n";
  out += "OutVars:" + format_var_list(c.outputs()) + "\n";
  out += "A: [\n";
  for (const auto& line : render(c.assumptions())) out += "    " + line + "\n";
  out += "]\nG: [\n";
  for (const auto& line : render(c.guarantees())) out += "    " + line + "\n";
  out += "]\n";
  return out;
}

}  // namespace cforge
