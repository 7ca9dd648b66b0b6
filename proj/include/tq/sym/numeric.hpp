#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>

#include "tq/sym/context.hpp"
#include "tq/sym/expr.hpp"

namespace tq::sym {

/// Values keyed by symbol name; unknown-function nodes are keyed by name
/// plus marker suffix ("psi", "psi'", "psi.'").
using NumBindings = std::map<std::string, double>;

/// Double evaluation. Throws DomainError (pole, log of a nonpositive value,
/// even root of a negative value) carrying the offending subtree, and
/// tq::Error for an unbound symbol.
double eval_numeric(const Expr& e, const NumBindings& b);

/// Key under which `eval_numeric` looks up a function node.
std::string numeric_key(const Expr& function_node);

/// A random point admissible under the context's assumptions. Defined
/// parameters are evaluated from the others. With `zeros`, unconstrained
/// symbols are set to 0.
NumBindings sample_point(const Context& ctx, std::mt19937_64& rng, bool zeros = false);

struct Equivalence {
  bool equal = false;
  bool symbolic = false;  // decided without probing
  int probes = 0;
  NumBindings witness;    // counterexample when !equal
};

/// simplify(a-b) == 0 (also after expanding definitions), else `trials`
/// random admissible probes at mixed tolerance `tol`.
Equivalence equivalent(const Expr& a, const Expr& b, const Context& ctx, int trials = 50,
                       std::uint64_t seed = 0, double tol = 1e-8);

}  // namespace tq::sym
