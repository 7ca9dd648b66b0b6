#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "tq/sym/calculus.hpp"
#include "tq/sym/error.hpp"
#include "tq/sym/numeric.hpp"
#include "tq/sym/parse.hpp"
#include "tq/sym/print.hpp"
#include "tq/sym/simplify.hpp"

using namespace tq::sym;

namespace {

Context positive_xyz() {
  Context c;
  c.coordinate("x").coordinate("y").coordinate("z");
  c.positive("x").positive("y").positive("z");
  return c;
}

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)}); }

// size of the largest intermediate a floating-point sum of `e` goes through
double eval_magnitude(const Expr& e, const NumBindings& p) {
  if (e.kind() == Kind::Add) {
    double m = 0;
    for (const auto& a : e.args()) m += eval_magnitude(a, p);
    return m;
  }
  if (e.kind() == Kind::Mul) {
    double m = 1;
    for (const auto& a : e.args()) m *= eval_magnitude(a, p);
    return m;
  }
  try {
    return std::abs(eval_numeric(e, p));
  } catch (const tq::Error&) {
    return 0;
  }
}

// largest |argument| of a sin/cos node; beyond ~1e4 double sin() itself
// is not good to 1e-10
double max_trig_arg(const Expr& e, const NumBindings& p) {
  double m = 0;
  for (const auto& a : e.args()) m = std::max(m, max_trig_arg(a, p));
  if (e.kind() == Kind::Apply && (e.fn() == Fn::Sin || e.fn() == Fn::Cos)) {
    try {
      m = std::max(m, std::abs(eval_numeric(e.arg(), p)));
    } catch (const tq::Error&) {
    }
  }
  return m;
}

}  // namespace

// Radicands and logarithm arguments are taken on the positive branch, so a
// point is admissible when both the input and its normal form evaluate
// without a domain error.
TEST_CASE("simplify preserves numeric value, is idempotent and reparses") {
  Context c = positive_xyz();
  tq::test::TreeGen gen(20261018);
  int trees = 0;
  int points = 0;
  int failures = 0;
  while (trees < 1000) {
    Expr e = gen.tree(6);
    if (node_count(e) > 45) continue;
    Expr s;
    try {
      s = simplify(e, c);
    } catch (const tq::DomainError&) {
      continue;  // the tree is identically singular (e.g. 1/0)
    }
    ++trees;
    if (simplify(s, c) != s) {
      ++failures;
      MESSAGE("not idempotent: " << print(e));
    }
    if (parse(print(s), c) != s) {
      ++failures;
      MESSAGE("print/parse mismatch: " << print(s));
    }
    int got = 0;
    for (int attempt = 0; attempt < 40 && got < 5; ++attempt) {
      NumBindings p{{"x", gen.uniform(0.3, 2.5)}, {"y", gen.uniform(0.3, 2.5)}, {"z", gen.uniform(0.3, 2.5)}};
      double a = 0;
      try {
        a = eval_numeric(e, p);
      } catch (const tq::DomainError&) {
        continue;
      }
      if (std::abs(a) > 1e8 || max_trig_arg(e, p) > 1e4) continue;
      double b = 0;
      try {
        b = eval_numeric(s, p);
      } catch (const tq::DomainError&) {
        continue;
      }
      ++got;
      ++points;
      // summed cancellation in an expanded form loses a few digits
      if (!close(a, b, 1e-10) && !close(a, b, 1e-10 * std::max(1.0, eval_magnitude(s, p)))) {
        ++failures;
        MESSAGE(print(e) << " -> " << print(s) << " : " << a << " vs " << b);
      }
    }
  }
  CHECK(points > 2500);
  CHECK(failures == 0);
}

TEST_CASE("derivatives agree with central differences") {
  Context c = positive_xyz();
  tq::test::TreeGen gen(7);
  int cases = 0;
  int failures = 0;
  while (cases < 500) {
    Expr e = gen.smooth(4);
    if (node_count(e) > 30) continue;
    ++cases;
    const char* v = gen.coin() ? "x" : "y";
    Expr d = differentiate(e, v, c);
    NumBindings p{{"x", gen.uniform(-1.5, 1.5)}, {"y", gen.uniform(-1.5, 1.5)}, {"z", gen.uniform(-1.5, 1.5)}};
    double h = 1e-5;
    NumBindings hi = p;
    NumBindings lo = p;
    hi[v] += h;
    lo[v] -= h;
    double fd = (eval_numeric(e, hi) - eval_numeric(e, lo)) / (2 * h);
    double an = eval_numeric(d, p);
    if (std::abs(eval_numeric(e, p)) > 1e4) continue;
    if (!close(fd, an, 1e-6)) {
      ++failures;
      MESSAGE(print(e) << " d/d" << v << " = " << print(d) << ": " << an << " vs " << fd);
    }
  }
  CHECK(failures == 0);
}
