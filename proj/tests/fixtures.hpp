#pragma once

// Coframes shared by the cartan/gauge/bundle suites.

#include "tq/ext/coframe.hpp"
#include "tq/sym/parse.hpp"

namespace tq::test {

inline ext::Matrix diag(const ext::ChartPtr& ch, const std::vector<std::string>& d) {
  ext::Matrix m(4, std::vector<sym::Expr>(4, sym::num(0)));
  for (std::size_t i = 0; i < 4; ++i) m[i][i] = sym::parse(d[i], ch->context());
  return m;
}

inline ext::Coframe flat_polar() {
  sym::Context c;
  c.coordinate("t").coordinate("r").coordinate("phi").coordinate("z");
  c.positive("r");
  auto ch = ext::make_chart({{"t"}, {"r"}, {"phi"}, {"z"}}, c);
  return ext::Coframe(ch, diag(ch, {"1", "1", "r", "1"}));
}

inline ext::Coframe sphere_block() {
  sym::Context c;
  c.coordinate("t").coordinate("theta").coordinate("phi").coordinate("z");
  c.range("theta", sym::num(0), sym::pi());
  auto ch = ext::make_chart({{"t"}, {"theta"}, {"phi"}, {"z"}}, c);
  return ext::Coframe(ch, diag(ch, {"1", "1", "sin(theta)", "1"}));
}

// Reissner-Nordstrom written with Delta = r^2 - 2 m r + e^2
inline ext::Coframe rn(bool charged = true) {
  sym::Context c;
  c.coordinate("t").coordinate("r").coordinate("theta").coordinate("phi");
  c.parameter("m").parameter("e").positive("m").positive("r").generic_nonzero(true);
  c.range("theta", sym::num(0), sym::pi());
  auto ch = ext::make_chart({{"t"}, {"r"}, {"theta"}, {"phi"}}, c);
  std::string delta = charged ? "(r^2-2*m*r+e^2)" : "(r^2-2*m*r)";
  return ext::Coframe(ch, diag(ch, {"sqrt" + delta + "/r", "r/sqrt" + delta, "r", "r*sin(theta)"}));
}

inline sym::Context er_context() {
  sym::Context c;
  c.coordinate("t").coordinate("rho").coordinate("z").coordinate("phi");
  c.positive("rho");
  c.function("psi", {"t", "rho"}).function("gamma", {"t", "rho"});
  return c;
}

inline ext::Coframe einstein_rosen(const sym::Context& c = er_context()) {
  auto ch = ext::make_chart({{"t"}, {"rho"}, {"z"}, {"phi"}}, c);
  return ext::Coframe(ch, diag(ch, {"exp(gamma-psi)", "exp(gamma-psi)", "exp(psi)", "rho*exp(-psi)"}));
}

}  // namespace tq::test
