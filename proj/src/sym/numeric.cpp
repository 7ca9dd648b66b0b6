#include "tq/sym/numeric.hpp"

#include <cmath>
#include <numbers>

#include "tq/sym/calculus.hpp"
#include "tq/sym/error.hpp"
#include "tq/sym/print.hpp"
#include "tq/sym/simplify.hpp"

namespace tq::sym {

std::string numeric_key(const Expr& f) { return f.name() + derivative_suffix(f); }

double eval_numeric(const Expr& e, const NumBindings& b) {
  double out = 0;
  switch (e.kind()) {
    case Kind::Number:
      return to_double(e.value());
    case Kind::Symbol: {
      if (e.name() == "pi") return std::numbers::pi;
      auto it = b.find(e.name());
      if (it == b.end()) throw Error("no value for '" + e.name() + "'");
      return it->second;
    }
    case Kind::Function: {
      auto it = b.find(numeric_key(e));
      if (it == b.end()) it = b.find(print(e));
      if (it == b.end()) throw Error("no value for '" + print(e) + "'");
      return it->second;
    }
    case Kind::Add:
      for (const auto& a : e.args()) out += eval_numeric(a, b);
      break;
    case Kind::Mul:
      out = 1;
      for (const auto& a : e.args()) out *= eval_numeric(a, b);
      break;
    case Kind::Pow: {
      double x = eval_numeric(e.base(), b);
      const Q& q = e.exponent();
      if (x == 0 && q < 0) throw DomainError("division by zero", print(e));
      if (is_integer(q)) {
        out = std::pow(x, to_double(q));
      } else if (x < 0) {
        if (mpz_class(q.get_den()) % 2 == 0) throw DomainError("even root of a negative value", print(e));
        double m = std::pow(-x, to_double(q));
        out = mpz_class(q.get_num()) % 2 == 0 ? m : -m;
      } else {
        out = std::pow(x, to_double(q));
      }
      break;
    }
    case Kind::Apply: {
      double x = eval_numeric(e.arg(), b);
      switch (e.fn()) {
        case Fn::Sin: out = std::sin(x); break;
        case Fn::Cos: out = std::cos(x); break;
        case Fn::Exp: out = std::exp(x); break;
        case Fn::Ln:
          if (x <= 0) throw DomainError("logarithm of a nonpositive value", print(e));
          out = std::log(x);
          break;
      }
      break;
    }
  }
  if (!std::isfinite(out)) throw DomainError("non-finite value", print(e));
  return out;
}

namespace {

bool admissible(const Context& ctx, const NumBindings& p) {
  try {
    for (const auto& a : ctx.assumptions()) {
      double s = eval_numeric(a.subject, p);
      switch (a.pred) {
        case Pred::Positive:
          if (!(s > 0)) return false;
          break;
        case Pred::Nonzero:
          if (std::abs(s) < 1e-9) return false;
          break;
        case Pred::Integer:
          if (std::abs(s - std::round(s)) > 1e-12) return false;
          break;
        case Pred::Range:
          if (a.lo && !(s > eval_numeric(*a.lo, p))) return false;
          if (a.hi && !(s < eval_numeric(*a.hi, p))) return false;
          break;
      }
    }
  } catch (const Error&) {
    return false;
  }
  return true;
}

const Assumption* symbol_assumption(const Context& ctx, const std::string& name, Pred pred) {
  for (const auto& a : ctx.assumptions()) {
    if (a.pred == pred && a.subject.is_symbol(name)) return &a;
  }
  return nullptr;
}

bool eval_definitions(const Context& ctx, NumBindings& p) {
  try {
    for (const auto& [name, value] : ctx.definitions()) p[name] = eval_numeric(value, p);
  } catch (const Error&) {
    return false;
  }
  return true;
}

}  // namespace

NumBindings sample_point(const Context& ctx, std::mt19937_64& rng, bool zeros) {
  std::uniform_real_distribution<double> pos(0.1, 3.0);
  std::uniform_real_distribution<double> any(-3.0, 3.0);
  std::uniform_real_distribution<double> inner(0.05, 0.95);
  std::uniform_int_distribution<int> small(1, 5);
  std::vector<std::string> names = ctx.coordinates();
  names.insert(names.end(), ctx.parameters().begin(), ctx.parameters().end());

  for (int attempt = 0; attempt < 400; ++attempt) {
    bool use_zeros = zeros && attempt == 0;
    NumBindings p;
    std::vector<const Assumption*> ranged;
    for (const auto& n : names) {
      if (ctx.definition(n) != nullptr) continue;
      if (const Assumption* r = symbol_assumption(ctx, n, Pred::Range); r != nullptr) {
        ranged.push_back(r);
      } else if (symbol_assumption(ctx, n, Pred::Integer) != nullptr) {
        p[n] = small(rng);
      } else if (symbol_assumption(ctx, n, Pred::Positive) != nullptr) {
        p[n] = pos(rng);
      } else {
        p[n] = use_zeros ? 0.0 : any(rng);
      }
    }
    if (!eval_definitions(ctx, p)) continue;
    bool ok = true;
    for (const Assumption* r : ranged) {
      try {
        const std::string& n = r->subject.name();
        if (r->lo && r->hi) {
          double lo = eval_numeric(*r->lo, p);
          double hi = eval_numeric(*r->hi, p);
          if (!(lo < hi)) {
            ok = false;
            break;
          }
          p[n] = lo + (hi - lo) * inner(rng);
        } else if (r->lo) {
          p[n] = eval_numeric(*r->lo, p) + pos(rng);
        } else if (r->hi) {
          p[n] = eval_numeric(*r->hi, p) - pos(rng);
        } else {
          p[n] = any(rng);
        }
      } catch (const Error&) {
        ok = false;
        break;
      }
    }
    if (!ok || !eval_definitions(ctx, p)) continue;
    if (admissible(ctx, p)) return p;
  }
  throw Error("no admissible sample point for the declared assumptions");
}

Equivalence equivalent(const Expr& a, const Expr& b, const Context& ctx, int trials, std::uint64_t seed,
                       double tol) {
  Equivalence out;
  Expr diff = add({a, mul({num(-1), b})});
  if (is_zero(diff, ctx) || is_zero(substitute_definitions(diff, ctx), ctx)) {
    out.equal = true;
    out.symbolic = true;
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> fval(-1.5, 1.5);
  std::vector<Expr> fns = function_nodes(a);
  for (const auto& f : function_nodes(b)) fns.push_back(f);
  int good = 0;
  for (int trial = 0; trial < trials; ++trial) {
    for (int attempt = 0; attempt < 50; ++attempt) {
      NumBindings p;
      try {
        p = sample_point(ctx, rng, trial == 0 && attempt == 0);
      } catch (const Error&) {
        return out;
      }
      for (const auto& f : fns) p.emplace(numeric_key(f), fval(rng));
      double va = 0;
      double vb = 0;
      try {
        va = eval_numeric(a, p);
        vb = eval_numeric(b, p);
      } catch (const DomainError&) {
        continue;
      }
      ++out.probes;
      ++good;
      double scale = std::max({1.0, std::abs(va), std::abs(vb)});
      if (std::abs(va - vb) > tol * scale) {
        out.witness = p;
        return out;
      }
      break;
    }
  }
  out.equal = good > 0;
  return out;
}

}  // namespace tq::sym
