#pragma once

#include <map>
#include <string>
#include <vector>

#include "tq/sym/context.hpp"
#include "tq/sym/expr.hpp"

namespace tq::sym {

/// d e / d v, raw (no normal form). `v` may be any symbol name.
Expr diff_raw(const Expr& e, const std::string& v);
/// d e / d v in normal form.
Expr differentiate(const Expr& e, const std::string& v, const Context& ctx);

using Bindings = std::map<std::string, Expr>;

/// Simultaneous substitution without simplification. A key naming a
/// declared function binds the function itself: the value is an expression
/// in the function's declared arguments, and derivative markers become the
/// corresponding derivatives of it. Throws tq::Error when such a value uses
/// a coordinate outside the declared argument list.
Expr substitute_raw(const Expr& e, const Bindings& b, const Context& ctx);
Expr substitute(const Expr& e, const Bindings& b, const Context& ctx);

/// Replaces whole subtrees (typically derivative-marker nodes) verbatim.
Expr replace_nodes(const Expr& e, const std::map<Expr, Expr, ExprLess>& b);

/// Expands every `define`d parameter until none remain.
Expr substitute_definitions(const Expr& e, const Context& ctx);

/// A constraint on an unknown function: marker node `lhs` equals `rhs`.
/// Higher markers of the same function are rewritten through derivatives of
/// the rule (psi'' -> rhs gives psi''. -> d/dt rhs).
struct MarkerRule {
  Expr lhs;
  Expr rhs;
};
Expr reduce_markers(const Expr& e, const std::vector<MarkerRule>& rules, const Context& ctx);

}  // namespace tq::sym
