#include "tq/sym/print.hpp"
#include "tq/sym/simplify.hpp"
#include "tq/cases/cases.hpp"

namespace tq::cases {

Check compare(const std::string& name, const Expr& derived, const Expr& expected, const sym::Context& ctx,
              const std::string& note) {
  Check c;
  c.name = name;
  c.derived = sym::print(sym::simplify(derived, ctx), ctx);
  c.expected = sym::print(expected, ctx);
  auto eq = sym::equivalent(derived, expected, ctx);
  c.pass = eq.equal;
  c.note = note;
  if (c.pass && !eq.symbolic) c.note += std::string(c.note.empty() ? "" : "; ") + "numeric (" + std::to_string(eq.probes) + " probes)";
  return c;
}

bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

}  // namespace tq::cases
