#include "tq/sym/simplify.hpp"

#include "normal_form.hpp"
#include "tq/sym/calculus.hpp"

namespace tq::sym {

namespace {

const char* const kEps = "__eps";

Expr scale_tagged(const Expr& e, const Context& ctx) {
  switch (e.kind()) {
    case Kind::Number:
      return e;
    case Kind::Symbol:
      return ctx.is_tagged(e.name()) ? mul({sym(kEps), e}) : e;
    case Kind::Function:
      return ctx.is_tagged(e.name()) ? mul({sym(kEps), e}) : e;
    case Kind::Pow:
      return pow(scale_tagged(e.base(), ctx), e.exponent());
    case Kind::Apply:
      return apply(e.fn(), scale_tagged(e.arg(), ctx));
    case Kind::Mul:
    case Kind::Add: {
      std::vector<Expr> xs;
      xs.reserve(e.args().size());
      for (const auto& a : e.args()) xs.push_back(scale_tagged(a, ctx));
      return e.kind() == Kind::Mul ? mul(std::move(xs)) : add(std::move(xs));
    }
  }
  return e;
}

}  // namespace

Simplified simplify_with(const Expr& e, const Context& ctx) {
  if (ctx.linearized() && !ctx.tags().empty()) {
    Context plain = ctx;
    plain.linearized(false);
    Expr f = scale_tagged(e, ctx);
    Expr f0 = replace_nodes(f, {{sym(kEps), num(0)}});
    Expr f1 = replace_nodes(diff_raw(f, kEps), {{sym(kEps), num(0)}});
    return simplify_with(add({f0, f1}), plain);
  }
  nf::Normalizer n(ctx);
  Expr out = n.expr(n.rat(e));
  return {out, n.used()};
}

Expr simplify(const Expr& e, const Context& ctx) { return simplify_with(e, ctx).expr; }

Expr simplify(const Expr& e) {
  static const Context empty;
  return simplify(e, empty);
}

bool is_zero(const Expr& e, const Context& ctx) { return simplify(e, ctx).is_zero(); }

}  // namespace tq::sym
