#pragma once

// Canonical rational form used by simplify. Not part of the public API.
//
// A value is num / prod(den_i ^ k_i). `num` is an expanded sum of terms
// c * K1^e1 * ... * exp(X); kernels are symbols, unknown-function nodes,
// sin/cos/ln applications (any rational exponent) and radical bases
// (primes or multi-term polynomials, exponent kept in [0,1)). Denominator
// factors are multi-term, primitive, sign-normalised polynomials free of
// square-root kernels.

#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tq/sym/context.hpp"
#include "tq/sym/expr.hpp"

namespace tq::sym::nf {

struct Rat;

struct Mono {
  std::vector<std::pair<Expr, Q>> pw;  // sorted by kernel, no zero exponent
  std::shared_ptr<const Rat> ex;       // argument of the exp factor, null if none
};

struct Term {
  Q c;
  Mono m;
};

using Poly = std::vector<Term>;  // strictly decreasing monomials, no zero coefficient

struct Factor {
  Poly p;
  int k = 1;
};

struct Rat {
  Poly num;
  std::vector<Factor> den;
  bool is_zero() const { return num.empty(); }
};

int cmp_mono(const Mono& a, const Mono& b);
int cmp_poly(const Poly& a, const Poly& b);
int cmp_rat(const Rat& a, const Rat& b);

bool is_radical_kernel(const Expr& k);

struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e.hash(); }
};

class Normalizer {
 public:
  explicit Normalizer(const Context& ctx) : ctx_(ctx) {}

  Rat rat(const Expr& e);
  Expr expr(const Rat& r);
  Expr poly_expr(const Poly& p);

  Rat add(const Rat& a, const Rat& b);
  Rat neg(const Rat& a);
  Rat mul(const Rat& a, const Rat& b);
  Rat inv(const Rat& a);
  Rat pow_int(const Rat& a, long k);
  Rat pow_q(const Rat& a, const Q& q);

  static Rat constant(const Q& c);
  Rat kernel(const Expr& k, const Q& e);

  const std::set<std::string>& used() const { return used_; }

 private:
  const Context& ctx_;
  std::set<std::string> used_;
  std::unordered_map<Expr, Rat, ExprHash> memo_;
  std::vector<std::pair<Poly, std::string>> nonzero_;
  bool nonzero_ready_ = false;

  bool sign_safe(const Expr& k) const;
  Rat to_rat(const Expr& e);
  Rat pow_expr(const Expr& base, const Q& q);
  Rat apply_rat(Fn f, const Expr& arg);
  Rat ln_rat(const Rat& a, const Expr& original);

  Mono mono_mul(const Mono& a, const Mono& b);
  Mono mono_div(const Mono& a, const Mono& b);
  Mono mono_pow(const Mono& a, const Q& q);
  std::shared_ptr<const Rat> ex_sum(const std::shared_ptr<const Rat>& a, const std::shared_ptr<const Rat>& b,
                                    bool subtract);

  Poly combine(std::vector<Term> terms);
  Poly poly_add(const Poly& a, const Poly& b);
  Poly poly_mul(const Poly& a, const Poly& b);
  Poly poly_pow(const Poly& a, long k);
  Poly poly_scale(const Poly& a, const Q& c, const Mono& m);
  Poly reduce(Poly p);
  const Poly& kernel_poly(const Expr& k);

  struct Content {
    Q c;
    Mono g;
    Poly prim;
  };
  Content content(const Poly& p, bool sign_normalize);

  void canon(Rat& r);
  bool fix_radicals(Rat& r);
  bool normalize_den(Rat& r);
  bool cancel(Rat& r);
  bool divide(const Poly& n, const Poly& f, Poly& q);
  bool may_cancel(const Poly& f);

  Expr term_expr(const Term& t, std::vector<std::pair<Expr, Q>>* extra_neg);
};

}  // namespace tq::sym::nf
