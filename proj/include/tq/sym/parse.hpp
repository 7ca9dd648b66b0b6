#pragma once

#include <string>

#include "tq/sym/context.hpp"
#include "tq/sym/expr.hpp"

namespace tq::sym {

/// Parses infix text against `ctx`. Every identifier must be declared (or
/// be one of sin, cos, exp, ln, log, sqrt, pi). Decimal literals are read
/// exactly. Throws ParseError / UndeclaredSymbolError.
Expr parse(const std::string& text, const Context& ctx);

}  // namespace tq::sym
