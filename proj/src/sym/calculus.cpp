#include "tq/sym/calculus.hpp"

#include <algorithm>

#include "tq/sym/error.hpp"
#include "tq/sym/simplify.hpp"

namespace tq::sym {

namespace {

Expr rebuild(const Expr& e, std::vector<Expr> xs) {
  switch (e.kind()) {
    case Kind::Add: return add(std::move(xs));
    case Kind::Mul: return mul(std::move(xs));
    case Kind::Pow: return pow(xs[0], e.exponent());
    case Kind::Apply: return apply(e.fn(), xs[0]);
    case Kind::Function: return func(e.name(), std::move(xs), e.derivs());
    default: return e;
  }
}

}  // namespace

Expr diff_raw(const Expr& e, const std::string& v) {
  switch (e.kind()) {
    case Kind::Number:
      return num(0);
    case Kind::Symbol:
      return num(e.name() == v ? 1 : 0);
    case Kind::Function: {
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < e.args().size(); ++i) {
        Expr da = diff_raw(e.arg(i), v);
        if (da.is_zero()) continue;
        std::vector<int> d = e.derivs();
        ++d[i];
        terms.push_back(mul({da, func(e.name(), e.args(), std::move(d))}));
      }
      return add(std::move(terms));
    }
    case Kind::Add: {
      std::vector<Expr> terms;
      for (const auto& a : e.args()) {
        Expr da = diff_raw(a, v);
        if (!da.is_zero()) terms.push_back(da);
      }
      return add(std::move(terms));
    }
    case Kind::Mul: {
      std::vector<Expr> terms;
      const auto& fs = e.args();
      for (std::size_t i = 0; i < fs.size(); ++i) {
        Expr df = diff_raw(fs[i], v);
        if (df.is_zero()) continue;
        std::vector<Expr> prod;
        for (std::size_t j = 0; j < fs.size(); ++j) prod.push_back(j == i ? df : fs[j]);
        terms.push_back(mul(std::move(prod)));
      }
      return add(std::move(terms));
    }
    case Kind::Pow: {
      Expr db = diff_raw(e.base(), v);
      if (db.is_zero()) return num(0);
      return mul({num(e.exponent()), pow(e.base(), e.exponent() - 1), db});
    }
    case Kind::Apply: {
      Expr da = diff_raw(e.arg(), v);
      if (da.is_zero()) return num(0);
      switch (e.fn()) {
        case Fn::Sin: return mul({cos(e.arg()), da});
        case Fn::Cos: return mul({num(-1), sin(e.arg()), da});
        case Fn::Exp: return mul({e, da});
        case Fn::Ln: return mul({da, pow(e.arg(), -1)});
      }
    }
  }
  return num(0);
}

Expr differentiate(const Expr& e, const std::string& v, const Context& ctx) { return simplify(diff_raw(e, v), ctx); }

Expr substitute_raw(const Expr& e, const Bindings& b, const Context& ctx) {
  if (b.empty()) return e;
  switch (e.kind()) {
    case Kind::Number:
      return e;
    case Kind::Symbol: {
      auto it = b.find(e.name());
      return it == b.end() ? e : it->second;
    }
    case Kind::Function: {
      std::vector<Expr> args;
      for (const auto& a : e.args()) args.push_back(substitute_raw(a, b, ctx));
      auto it = b.find(e.name());
      const FunctionDecl* decl = ctx.find_function(e.name());
      if (it == b.end() || decl == nullptr) return func(e.name(), std::move(args), e.derivs());
      for (const auto& s : free_symbols(it->second)) {
        if (!ctx.is_coordinate(s)) continue;
        if (std::find(decl->args.begin(), decl->args.end(), s) == decl->args.end()) {
          throw Error("binding for " + e.name() + " depends on '" + s + "', which is not one of its arguments");
        }
      }
      Expr v = it->second;
      for (std::size_t i = 0; i < decl->args.size(); ++i) {
        for (int k = 0; k < e.derivs()[i]; ++k) v = diff_raw(v, decl->args[i]);
      }
      Bindings at;
      for (std::size_t i = 0; i < decl->args.size(); ++i) {
        if (!args[i].is_symbol(decl->args[i])) at.emplace(decl->args[i], args[i]);
      }
      return substitute_raw(v, at, ctx);
    }
    default: {
      std::vector<Expr> xs;
      xs.reserve(e.args().size());
      for (const auto& a : e.args()) xs.push_back(substitute_raw(a, b, ctx));
      return rebuild(e, std::move(xs));
    }
  }
}

Expr substitute(const Expr& e, const Bindings& b, const Context& ctx) { return simplify(substitute_raw(e, b, ctx), ctx); }

Expr replace_nodes(const Expr& e, const std::map<Expr, Expr, ExprLess>& b) {
  if (b.empty()) return e;
  auto it = b.find(e);
  if (it != b.end()) return it->second;
  if (e.args().empty()) return e;
  std::vector<Expr> xs;
  xs.reserve(e.args().size());
  for (const auto& a : e.args()) xs.push_back(replace_nodes(a, b));
  return rebuild(e, std::move(xs));
}

Expr substitute_definitions(const Expr& e, const Context& ctx) {
  if (ctx.definitions().empty()) return e;
  Bindings defs(ctx.definitions().begin(), ctx.definitions().end());
  Expr out = e;
  for (int round = 0; round < 32; ++round) {
    bool any = false;
    for (const auto& s : free_symbols(out)) {
      if (defs.count(s) != 0) any = true;
    }
    if (!any) return out;
    out = substitute_raw(out, defs, ctx);
  }
  throw Error("parameter definitions are circular");
}

Expr reduce_markers(const Expr& e, const std::vector<MarkerRule>& rules, const Context& ctx) {
  Expr cur = e;
  for (int round = 0; round < 16; ++round) {
    std::map<Expr, Expr, ExprLess> repl;
    for (const auto& node : function_nodes(cur)) {
      for (const auto& r : rules) {
        if (r.lhs.name() != node.name() || r.lhs.args() != node.args()) continue;
        bool fits = true;
        for (std::size_t i = 0; i < node.derivs().size(); ++i) {
          if (r.lhs.derivs()[i] > node.derivs()[i]) fits = false;
        }
        if (!fits) continue;
        Expr v = r.rhs;
        for (std::size_t i = 0; i < node.derivs().size(); ++i) {
          if (node.arg(i).kind() != Kind::Symbol) continue;
          for (int k = r.lhs.derivs()[i]; k < node.derivs()[i]; ++k) v = diff_raw(v, node.arg(i).name());
        }
        repl.emplace(node, v);
        break;
      }
    }
    if (repl.empty()) return cur;
    cur = simplify(replace_nodes(cur, repl), ctx);
  }
  return cur;
}

}  // namespace tq::sym
