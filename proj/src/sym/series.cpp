#include "tq/sym/series.hpp"

#include "tq/sym/calculus.hpp"
#include "tq/sym/error.hpp"
#include "tq/sym/simplify.hpp"

namespace tq::sym {

namespace {

struct NeedMore {};

struct S {
  std::map<Q, Expr, std::less<>> c;
  Q prec;
};

class Engine {
 public:
  Engine(const Context& ctx, std::string v, Q bound) : ctx_(ctx), v_(std::move(v)), bound_(std::move(bound)) {}

  S run(const Expr& e) {
    switch (e.kind()) {
      case Kind::Number:
        return constant(e);
      case Kind::Symbol:
        if (e.name() == v_) {
          S s;
          s.c.emplace(Q(1), num(1));
          s.prec = bound_;
          return tidy(std::move(s));
        }
        return constant(e);
      case Kind::Function:
        if (depends_on(e, v_)) throw UnsupportedError("no series data for " + e.name() + " near the expansion point");
        return constant(e);
      case Kind::Add: {
        S acc = constant(num(0));
        for (const auto& a : e.args()) acc = add(acc, run(a));
        return acc;
      }
      case Kind::Mul: {
        S acc = constant(num(1));
        for (const auto& a : e.args()) acc = mul(acc, run(a));
        return acc;
      }
      case Kind::Pow:
        return power(run(e.base()), e.exponent());
      case Kind::Apply:
        return elementary(e.fn(), run(e.arg()));
    }
    return constant(num(0));
  }

 private:
  const Context& ctx_;
  std::string v_;
  Q bound_;

  S constant(const Expr& x) {
    S s;
    Expr y = simplify(x, ctx_);
    if (!y.is_zero()) s.c.emplace(Q(0), y);
    s.prec = bound_;
    return s;
  }

  S tidy(S s) {
    if (s.prec > bound_) s.prec = bound_;
    for (auto it = s.c.begin(); it != s.c.end();) {
      if (it->first >= s.prec) {
        it = s.c.erase(it);
        continue;
      }
      it->second = simplify(it->second, ctx_);
      if (it->second.is_zero()) {
        it = s.c.erase(it);
      } else {
        ++it;
      }
    }
    return s;
  }

  static Q val(const S& s) { return s.c.empty() ? s.prec : s.c.begin()->first; }

  S add(const S& a, const S& b) {
    S s;
    s.prec = std::min(a.prec, b.prec);
    std::map<Q, std::vector<Expr>, std::less<>> parts;
    for (const auto& [k, x] : a.c) parts[k].push_back(x);
    for (const auto& [k, x] : b.c) parts[k].push_back(x);
    for (auto& [k, xs] : parts) s.c.emplace(k, sym::add(std::move(xs)));
    return tidy(std::move(s));
  }

  S mul(const S& a, const S& b) {
    S s;
    s.prec = std::min(a.prec + val(b), b.prec + val(a));
    std::map<Q, std::vector<Expr>, std::less<>> parts;
    for (const auto& [i, x] : a.c) {
      for (const auto& [j, y] : b.c) {
        if (i + j < s.prec) parts[i + j].push_back(sym::mul({x, y}));
      }
    }
    for (auto& [k, xs] : parts) s.c.emplace(k, sym::add(std::move(xs)));
    return tidy(std::move(s));
  }

  S scale(const S& a, const Expr& c, const Q& shift) {
    S s;
    s.prec = a.prec + shift;
    for (const auto& [k, x] : a.c) s.c.emplace(k + shift, sym::mul({c, x}));
    return tidy(std::move(s));
  }

  // sum_j w_j u^j for a series u with positive valuation
  S compose(const S& u, const std::vector<Q>& w) {
    S acc;
    acc.prec = u.prec;
    if (!w.empty() && w[0] != 0) acc.c.emplace(Q(0), num(w[0]));
    S pw = constant(num(1));
    Q vu = val(u);
    for (std::size_t j = 1; j < w.size(); ++j) {
      pw = mul(pw, u);
      if (pw.c.empty() && val(pw) >= acc.prec) break;
      if (w[j] != 0) acc = add(acc, scale(pw, num(w[j]), Q(0)));
      if (vu * static_cast<long>(j + 1) >= acc.prec) break;
    }
    return tidy(std::move(acc));
  }

  std::size_t terms_needed(const S& u) const {
    Q vu = val(u);
    if (vu <= 0) return 1;
    Q n = u.prec / vu;
    return static_cast<std::size_t>(to_long(floor_q(n))) + 2;
  }

  // a = c0 h^v0 (1 + u)
  void split(const S& a, Q& v0, Expr& c0, S& u) {
    if (a.c.empty()) throw NeedMore{};
    v0 = a.c.begin()->first;
    c0 = a.c.begin()->second;
    Expr inv = pow(c0, -1);
    u = S{};
    u.prec = a.prec - v0;
    for (auto it = std::next(a.c.begin()); it != a.c.end(); ++it) u.c.emplace(it->first - v0, sym::mul({it->second, inv}));
    u = tidy(std::move(u));
  }

  S power(const S& a, const Q& q) {
    if (q == 0) return constant(num(1));
    if (is_integer(q) && q > 0) {
      S acc = constant(num(1));
      for (long i = 0; i < to_long(q); ++i) acc = mul(acc, a);
      return acc;
    }
    Q v0;
    Expr c0;
    S u;
    split(a, v0, c0, u);
    std::size_t n = terms_needed(u);
    std::vector<Q> w;
    for (std::size_t j = 0; j < n; ++j) w.push_back(binomial(q, static_cast<long>(j)));
    S series = compose(u, w);
    return scale(series, pow(c0, q), q * v0);
  }

  S elementary(Fn f, const S& a) {
    if (f == Fn::Ln) {
      Q v0;
      Expr c0;
      S u;
      split(a, v0, c0, u);
      if (v0 != 0) throw UnsupportedError("logarithmic singularity at the expansion point");
      std::vector<Q> w{Q(0)};
      for (std::size_t j = 1; j < terms_needed(u); ++j) w.push_back(Q(j % 2 == 1 ? 1 : -1, static_cast<long>(j)));
      return add(constant(ln(c0)), compose(u, w));
    }
    for (const auto& [k, x] : a.c) {
      if (k < 0) throw UnsupportedError("essential singularity at the expansion point");
    }
    if (a.prec <= 0) throw NeedMore{};
    Expr a0 = num(0);
    S u = a;
    if (auto it = u.c.find(Q(0)); it != u.c.end()) {
      a0 = it->second;
      u.c.erase(it);
    }
    std::size_t n = terms_needed(u);
    std::vector<Q> we;
    std::vector<Q> ws;
    std::vector<Q> wc;
    for (std::size_t j = 0; j < n; ++j) {
      Q inv = 1 / factorial(static_cast<long>(j));
      we.push_back(inv);
      ws.push_back(j % 2 == 1 ? (j % 4 == 1 ? inv : -inv) : Q(0));
      wc.push_back(j % 2 == 0 ? (j % 4 == 0 ? inv : -inv) : Q(0));
    }
    if (f == Fn::Exp) return scale(compose(u, we), exp(a0), Q(0));
    S su = compose(u, ws);
    S cu = compose(u, wc);
    if (f == Fn::Sin) return add(scale(su, cos(a0), Q(0)), scale(cu, sin(a0), Q(0)));
    return add(scale(cu, cos(a0), Q(0)), scale(su, sym::mul({num(-1), sin(a0)}), Q(0)));
  }
};

Expr prepare(const Expr& e, const std::string& v, const Expr& point, const Context& ctx) {
  Bindings fb;
  for (const auto& f : function_nodes(e)) {
    if (!depends_on(f, v)) continue;
    if (const SeriesData* sd = ctx.find_series(f.name()); sd != nullptr) fb.emplace(f.name(), sd->expansion);
  }
  Expr x = fb.empty() ? e : substitute_raw(e, fb, ctx);
  if (!point.is_zero()) x = substitute_raw(x, {{v, add({point, sym(v)})}}, ctx);
  return x;
}

}  // namespace

Expr Series::polynomial(const std::string& v, const Expr& point) const {
  Expr h = point.is_zero() ? sym(v) : add({sym(v), mul({num(-1), point})});
  std::vector<Expr> xs;
  for (const auto& [k, c] : terms) xs.push_back(mul({c, pow(h, k)}));
  return add(std::move(xs));
}

Expr Series::coefficient(const Q& k) const {
  auto it = terms.find(k);
  return it == terms.end() ? num(0) : it->second;
}

Series series_at(const Expr& e, const std::string& v, const Expr& point, long order, const Context& ctx) {
  Expr x = prepare(e, v, point, ctx);
  Q bound = Q(order + 1);
  for (int round = 0; round < 10; ++round) {
    try {
      S s = Engine(ctx, v, bound).run(x);
      if (s.prec > order) {
        Series out;
        for (const auto& [k, c] : s.c) {
          if (k <= order) out.terms.emplace(k, c);
        }
        out.remainder = s.prec;
        return out;
      }
    } catch (const NeedMore&) {
    }
    bound += 2 + round;
  }
  throw UnsupportedError("expansion did not reach the requested order");
}

Q leading_exponent(const Expr& e, const std::string& v, const Expr& point, const Context& ctx, long max_order) {
  for (long order = 0; order <= max_order; order += 3) {
    Series s = series_at(e, v, point, order, ctx);
    if (!s.terms.empty()) return s.terms.begin()->first;
  }
  throw UnsupportedError("no nonzero term up to order " + std::to_string(max_order));
}

}  // namespace tq::sym
