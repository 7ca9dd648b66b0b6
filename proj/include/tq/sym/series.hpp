#pragma once

#include <map>
#include <string>

#include "tq/sym/context.hpp"
#include "tq/sym/expr.hpp"

namespace tq::sym {

/// Truncated (Puiseux) expansion in h = v - point. Coefficients are in
/// normal form; every exponent up to the requested order is present when
/// nonzero, and the remainder is O(h^remainder).
struct Series {
  std::map<Q, Expr, std::less<>> terms;
  Q remainder;

  /// sum c_k (v - point)^k
  Expr polynomial(const std::string& v, const Expr& point) const;
  /// Coefficient of h^k (zero when absent).
  Expr coefficient(const Q& k) const;
};

/// Expansion of `e` about v = point through order `order`. Unknown
/// functions of v are replaced by their declared series data. Throws
/// UnsupportedError for essential or logarithmic singularities and for
/// unknown functions of v without series data.
Series series_at(const Expr& e, const std::string& v, const Expr& point, long order, const Context& ctx);

/// Exponent of the leading nonzero term of the expansion about the point.
/// Throws UnsupportedError when no nonzero term shows up within `max_order`.
Q leading_exponent(const Expr& e, const std::string& v, const Expr& point, const Context& ctx,
                   long max_order = 12);

}  // namespace tq::sym
