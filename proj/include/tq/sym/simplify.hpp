#pragma once

#include <set>
#include <string>

#include "tq/sym/context.hpp"
#include "tq/sym/expr.hpp"

namespace tq::sym {

struct Simplified {
  Expr expr;
  std::set<std::string> used;  // labels of the assumptions a cancellation relied on
};

/// Canonical form: expanded numerator over a product of primitive
/// denominator factors, like terms collected, sin^2+cos^2 folded, exp/ln
/// merged, radicals on the positive branch. Idempotent.
///
/// A multi-term denominator factor is cancelled only when an assumption
/// says it is nonzero (or the context is in generic mode).
Simplified simplify_with(const Expr& e, const Context& ctx);
Expr simplify(const Expr& e, const Context& ctx);
Expr simplify(const Expr& e);

bool is_zero(const Expr& e, const Context& ctx);

}  // namespace tq::sym
