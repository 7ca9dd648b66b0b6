#pragma once

#include <string>

#include "tq/sym/context.hpp"
#include "tq/sym/expr.hpp"

namespace tq::sym {

// Infix grammar, no spaces: `2*sqrt(m^2-e^2)/e`, `exp(-gamma0)`, `psi.'`.
// Derivative markers follow the function name: `.` for the first
// argument, `'` for the last one, `@k` for argument k in between. The
// argument list is printed unless it equals the declared one.

std::string print(const Expr& e);
std::string print(const Expr& e, const Context& ctx);

/// Marker suffix of a function node, e.g. "'" or ".." or "@1".
std::string derivative_suffix(const Expr& fn);

}  // namespace tq::sym
