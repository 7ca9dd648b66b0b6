#include "normal_form.hpp"

#include <algorithm>
#include <map>

#include "tq/sym/error.hpp"
#include "tq/sym/print.hpp"

namespace tq::sym::nf {

namespace {

int cmpq(const Q& a, const Q& b) { return a < b ? -1 : (b < a ? 1 : 0); }

bool is_ln_kernel(const Expr& k) { return k.kind() == Kind::Apply && k.fn() == Fn::Ln; }

Q exponent_of(const Mono& m, const Expr& k) {
  for (const auto& [kk, e] : m.pw) {
    if (kk == k) return e;
  }
  return Q(0);
}

void set_exponent(Mono& m, const Expr& k, const Q& e) {
  auto it = std::lower_bound(m.pw.begin(), m.pw.end(), k,
                             [](const std::pair<Expr, Q>& p, const Expr& x) { return compare(p.first, x) < 0; });
  if (it != m.pw.end() && it->first == k) {
    if (e == 0) {
      m.pw.erase(it);
    } else {
      it->second = e;
    }
  } else if (e != 0) {
    m.pw.insert(it, {k, e});
  }
}

}  // namespace

bool Normalizer::sign_safe(const Expr& k) const {
  switch (k.kind()) {
    case Kind::Number:
      return k.value() > 0;
    case Kind::Add:
    case Kind::Pow:
      return true;
    case Kind::Symbol:
      if (k.name() == "pi") return true;
      for (const auto& a : ctx_.assumptions()) {
        if (a.pred == Pred::Positive && a.subject == k) return true;
      }
      return false;
    default:
      return false;
  }
}

bool is_radical_kernel(const Expr& k) { return k.kind() == Kind::Number || k.kind() == Kind::Add; }

int cmp_mono(const Mono& a, const Mono& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.pw.size() || j < b.pw.size()) {
    int c;
    if (i == a.pw.size()) {
      c = 1;
    } else if (j == b.pw.size()) {
      c = -1;
    } else {
      c = compare(a.pw[i].first, b.pw[j].first);
    }
    if (c < 0) return a.pw[i].second > 0 ? 1 : -1;
    if (c > 0) return b.pw[j].second > 0 ? -1 : 1;
    int d = cmpq(a.pw[i].second, b.pw[j].second);
    if (d != 0) return d;
    ++i;
    ++j;
  }
  if (!a.ex && !b.ex) return 0;
  if (!a.ex) return -1;
  if (!b.ex) return 1;
  return cmp_rat(*a.ex, *b.ex);
}

int cmp_poly(const Poly& a, const Poly& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp_mono(a[i].m, b[i].m);
    if (c != 0) return c;
    c = cmpq(a[i].c, b[i].c);
    if (c != 0) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

int cmp_rat(const Rat& a, const Rat& b) {
  int c = cmp_poly(a.num, b.num);
  if (c != 0) return c;
  if (a.den.size() != b.den.size()) return a.den.size() < b.den.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.den.size(); ++i) {
    c = cmp_poly(a.den[i].p, b.den[i].p);
    if (c != 0) return c;
    if (a.den[i].k != b.den[i].k) return a.den[i].k < b.den[i].k ? -1 : 1;
  }
  return 0;
}

// ---------------------------------------------------------------- monomials

std::shared_ptr<const Rat> Normalizer::ex_sum(const std::shared_ptr<const Rat>& a,
                                              const std::shared_ptr<const Rat>& b, bool subtract) {
  if (!b) return a;
  if (!a) return subtract ? std::make_shared<const Rat>(neg(*b)) : b;
  Rat s = subtract ? add(*a, neg(*b)) : add(*a, *b);
  if (s.is_zero()) return nullptr;
  return std::make_shared<const Rat>(std::move(s));
}

Mono Normalizer::mono_mul(const Mono& a, const Mono& b) {
  Mono out;
  out.pw.reserve(a.pw.size() + b.pw.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.pw.size() || j < b.pw.size()) {
    int c;
    if (i == a.pw.size()) {
      c = 1;
    } else if (j == b.pw.size()) {
      c = -1;
    } else {
      c = compare(a.pw[i].first, b.pw[j].first);
    }
    if (c < 0) {
      out.pw.push_back(a.pw[i++]);
    } else if (c > 0) {
      out.pw.push_back(b.pw[j++]);
    } else {
      Q e = a.pw[i].second + b.pw[j].second;
      if (e != 0) out.pw.emplace_back(a.pw[i].first, e);
      ++i;
      ++j;
    }
  }
  out.ex = ex_sum(a.ex, b.ex, false);
  return out;
}

Mono Normalizer::mono_div(const Mono& a, const Mono& b) {
  Mono inv = mono_pow(b, Q(-1));
  return mono_mul(a, inv);
}

Mono Normalizer::mono_pow(const Mono& a, const Q& q) {
  Mono out;
  if (q == 0) return out;
  for (const auto& [k, e] : a.pw) out.pw.emplace_back(k, e * q);
  if (a.ex) out.ex = std::make_shared<const Rat>(mul(*a.ex, constant(q)));
  return out;
}

// -------------------------------------------------------------- polynomials

Poly Normalizer::combine(std::vector<Term> terms) {
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& x, const Term& y) { return cmp_mono(x.m, y.m) > 0; });
  Poly out;
  for (auto& t : terms) {
    if (!out.empty() && cmp_mono(out.back().m, t.m) == 0) {
      out.back().c += t.c;
      if (out.back().c == 0) out.pop_back();
    } else if (t.c != 0) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

Poly Normalizer::poly_add(const Poly& a, const Poly& b) {
  std::vector<Term> all(a);
  all.insert(all.end(), b.begin(), b.end());
  return combine(std::move(all));
}

Poly Normalizer::poly_mul(const Poly& a, const Poly& b) {
  std::vector<Term> all;
  all.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) all.push_back({x.c * y.c, mono_mul(x.m, y.m)});
  }
  return combine(std::move(all));
}

Poly Normalizer::poly_pow(const Poly& a, long k) {
  Poly out{Term{Q(1), Mono{}}};
  for (long i = 0; i < k; ++i) out = poly_mul(out, a);
  return out;
}

Poly Normalizer::poly_scale(const Poly& a, const Q& c, const Mono& m) {
  std::vector<Term> all;
  all.reserve(a.size());
  for (const auto& t : a) all.push_back({t.c * c, mono_mul(t.m, m)});
  return combine(std::move(all));
}

const Poly& Normalizer::kernel_poly(const Expr& k) {
  auto it = memo_.find(k);
  if (it == memo_.end()) {
    rat(k);
    it = memo_.find(k);
  }
  return it->second.num;
}

// Folds integer parts of numeric radicals, expands radical bases raised to
// a power >= 1, and rewrites cos^2 as 1 - sin^2.
Poly Normalizer::reduce(Poly p) {
  for (int guard = 0; guard < 400; ++guard) {
    bool changed = false;
    std::vector<Term> out;
    for (const Term& t : p) {
      Term u = t;
      for (auto it = u.m.pw.begin(); it != u.m.pw.end();) {
        if (it->first.kind() == Kind::Number) {
          Q fl = floor_q(it->second);
          if (fl != 0) {
            u.c *= qpow(it->first.value(), to_long(fl));
            it->second -= fl;
            changed = true;
          }
          if (it->second == 0) {
            it = u.m.pw.erase(it);
            continue;
          }
        }
        ++it;
      }
      Poly factor;
      bool found = false;
      for (std::size_t i = 0; i < u.m.pw.size() && !found; ++i) {
        const Expr k = u.m.pw[i].first;
        const Q e = u.m.pw[i].second;
        if (k.kind() == Kind::Add && e >= 1) {
          Q fl = floor_q(e);
          factor = poly_pow(kernel_poly(k), to_long(fl));
          set_exponent(u.m, k, e - fl);
          found = true;
        } else if (k.kind() == Kind::Pow && (e >= 1 || e < 0)) {
          Q fl = floor_q(e);
          set_exponent(u.m, k, e - fl);
          Mono b;
          b.pw.emplace_back(k.base(), k.exponent() * fl);
          u.m = mono_mul(u.m, b);
          changed = true;
          break;
        } else if (k.kind() == Kind::Apply && k.fn() == Fn::Cos && e >= 2) {
          set_exponent(u.m, k, e - 2);
          Mono s2;
          s2.pw.emplace_back(apply(Fn::Sin, k.arg()), Q(2));
          factor = combine({Term{Q(1), Mono{}}, Term{Q(-1), s2}});
          found = true;
        }
      }
      if (found) {
        Poly piece = poly_mul(Poly{u}, factor);
        out.insert(out.end(), piece.begin(), piece.end());
        changed = true;
      } else {
        out.push_back(std::move(u));
      }
    }
    p = combine(std::move(out));
    if (!changed) break;
  }
  return p;
}

Normalizer::Content Normalizer::content(const Poly& p, bool sign_normalize) {
  Content out;
  std::map<Expr, Q, ExprLess> mins;
  for (const auto& t : p) {
    for (const auto& [k, e] : t.m.pw) mins.emplace(k, Q(0));
  }
  for (auto& [k, mn] : mins) {
    bool first = true;
    for (const auto& t : p) {
      Q e = exponent_of(t.m, k);
      if (first || e < mn) mn = e;
      first = false;
    }
  }
  for (const auto& [k, mn] : mins) {
    if (mn != 0) out.g.pw.emplace_back(k, mn);
  }
  bool common_ex = !p.empty() && p[0].m.ex != nullptr;
  for (const auto& t : p) {
    if (!t.m.ex || (p[0].m.ex && cmp_rat(*t.m.ex, *p[0].m.ex) != 0)) common_ex = false;
  }
  if (common_ex) out.g.ex = p[0].m.ex;

  mpz_class l = 1;
  for (const auto& t : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
  mpz_class g = 0;
  for (const auto& t : p) {
    Q s = t.c * Q(l);
    mpz_class n = s.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  if (g == 0) g = 1;
  out.c = Q(g, l);
  out.c.canonicalize();
  if (sign_normalize && !p.empty() && p[0].c < 0) out.c = -out.c;

  bool trivial = out.g.pw.empty() && !out.g.ex;
  std::vector<Term> prim;
  prim.reserve(p.size());
  for (const auto& t : p) prim.push_back({t.c / out.c, trivial ? t.m : mono_div(t.m, out.g)});
  out.prim = reduce(combine(std::move(prim)));
  return out;
}

// ------------------------------------------------------------ canonical form

Rat Normalizer::constant(const Q& c) {
  Rat r;
  if (c != 0) r.num.push_back({c, Mono{}});
  return r;
}

Rat Normalizer::kernel(const Expr& k, const Q& e) {
  Rat r;
  Mono m;
  if (e != 0) m.pw.emplace_back(k, e);
  r.num.push_back({Q(1), std::move(m)});
  canon(r);
  return r;
}

void Normalizer::canon(Rat& r) {
  for (int guard = 0; guard < 200; ++guard) {
    bool changed = fix_radicals(r);
    r.num = reduce(std::move(r.num));
    if (r.num.empty()) {
      r.den.clear();
      return;
    }
    if (changed) continue;
    if (normalize_den(r)) continue;
    if (!cancel(r)) return;
  }
}

// Keeps radical exponents in [0,1): a negative power moves to the
// denominator, an overflow cancels against a matching denominator factor.
bool Normalizer::fix_radicals(Rat& r) {
  std::set<Expr, ExprLess> ks;
  for (const auto& t : r.num) {
    for (const auto& [k, e] : t.m.pw) {
      if (k.kind() == Kind::Add) ks.insert(k);
    }
  }
  for (const Expr& k : ks) {
    Q kmin = 0;
    bool first = true;
    for (const auto& t : r.num) {
      Q fl = floor_q(exponent_of(t.m, k));
      if (first || fl < kmin) kmin = fl;
      first = false;
    }
    if (kmin < 0) {
      for (auto& t : r.num) set_exponent(t.m, k, exponent_of(t.m, k) - kmin);
      r.den.push_back({kernel_poly(k), static_cast<int>(to_long(-kmin))});
      return true;
    }
    if (kmin >= 1 && !r.den.empty()) {
      Content ct = content(kernel_poly(k), true);
      for (auto& f : r.den) {
        if (cmp_poly(f.p, ct.prim) != 0) continue;
        long n = std::min<long>(to_long(kmin), f.k);
        for (auto& t : r.num) {
          set_exponent(t.m, k, exponent_of(t.m, k) - n);
          t.c *= qpow(ct.c, n);
        }
        if (!ct.g.pw.empty() || ct.g.ex) r.num = poly_scale(r.num, Q(1), mono_pow(ct.g, Q(n)));
        f.k -= static_cast<int>(n);
        r.den.erase(std::remove_if(r.den.begin(), r.den.end(), [](const Factor& x) { return x.k == 0; }),
                    r.den.end());
        return true;
      }
    }
  }
  return false;
}

bool Normalizer::normalize_den(Rat& r) {
  bool changed = false;
  std::vector<Factor> out;
  for (auto& f : r.den) {
    Poly p = reduce(f.p);
    if (p.empty()) throw DomainError("division by zero", "0");
    if (p.size() == 1) {
      r.num = poly_scale(r.num, qpow(p[0].c, -f.k), mono_pow(p[0].m, Q(-f.k)));
      changed = true;
      continue;
    }
    Content ct = content(p, true);
    if (ct.c != 1 || !ct.g.pw.empty() || ct.g.ex) {
      r.num = poly_scale(r.num, qpow(ct.c, -f.k), mono_pow(ct.g, Q(-f.k)));
      p = ct.prim;
      changed = true;
    }
    Expr root;
    bool has_root = false;
    for (const auto& t : p) {
      for (const auto& [k, e] : t.m.pw) {
        if (is_radical_kernel(k) && e == Q(1, 2)) {
          root = k;
          has_root = true;
          break;
        }
      }
      if (has_root) break;
    }
    if (has_root) {
      std::vector<Term> conj;
      for (const auto& t : p) {
        Term u = t;
        if (exponent_of(t.m, root) != 0) u.c = -u.c;
        conj.push_back(std::move(u));
      }
      Poly cj = combine(std::move(conj));
      Poly norm = reduce(poly_mul(p, cj));
      if (norm.empty()) throw DomainError("division by zero", print(poly_expr(p)));
      r.num = poly_mul(r.num, poly_pow(cj, f.k));
      out.push_back({norm, f.k});
      changed = true;
      continue;
    }
    if (cmp_poly(p, f.p) != 0) changed = true;
    out.push_back({p, f.k});
  }
  std::stable_sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) { return cmp_poly(a.p, b.p) < 0; });
  std::vector<Factor> merged;
  for (auto& f : out) {
    if (!merged.empty() && cmp_poly(merged.back().p, f.p) == 0) {
      merged.back().k += f.k;
      changed = true;
    } else {
      merged.push_back(std::move(f));
    }
  }
  r.den = std::move(merged);
  return changed;
}

bool Normalizer::may_cancel(const Poly& f) {
  if (ctx_.generic_nonzero()) return true;
  if (!nonzero_ready_) {
    nonzero_ready_ = true;
    auto note = [&](const Expr& e, const std::string& label) {
      Rat s = rat(e);
      if (!s.den.empty() || s.num.size() < 2) return;
      nonzero_.emplace_back(content(s.num, true).prim, label);
    };
    for (const auto& a : ctx_.assumptions()) {
      if (a.pred == Pred::Positive || a.pred == Pred::Nonzero) note(a.subject, a.label);
      if (a.pred == Pred::Range) {
        if (a.lo) note(a.subject - *a.lo, a.label);
        if (a.hi) note(a.subject - *a.hi, a.label);
      }
    }
  }
  for (const auto& [p, label] : nonzero_) {
    if (cmp_poly(p, f) == 0) {
      used_.insert(label);
      return true;
    }
  }
  return false;
}

bool Normalizer::divide(const Poly& n, const Poly& f, Poly& q) {
  Poly rem = n;
  std::vector<Term> quot;
  const std::size_t cap = 4 * (n.size() + f.size()) + 64;
  for (std::size_t step = 0; step < cap; ++step) {
    if (rem.empty()) {
      q = combine(std::move(quot));
      return true;
    }
    Mono m = mono_div(rem[0].m, f[0].m);
    for (const auto& [k, e] : m.pw) {
      if (is_radical_kernel(k) && (e < 0 || e >= 1)) return false;
    }
    Q c = rem[0].c / f[0].c;
    quot.push_back({c, m});
    rem = reduce(poly_add(rem, poly_scale(f, -c, m)));
    if (rem.size() > cap) return false;
  }
  return false;
}

bool Normalizer::cancel(Rat& r) {
  bool changed = false;
  for (auto& f : r.den) {
    while (f.k > 0) {
      Poly q;
      if (!divide(r.num, f.p, q)) break;
      if (!may_cancel(f.p)) break;
      r.num = std::move(q);
      --f.k;
      changed = true;
    }
  }
  r.den.erase(std::remove_if(r.den.begin(), r.den.end(), [](const Factor& x) { return x.k == 0; }), r.den.end());
  return changed;
}

// -------------------------------------------------------------- arithmetic

Rat Normalizer::neg(const Rat& a) {
  Rat r = a;
  for (auto& t : r.num) t.c = -t.c;
  return r;
}

Rat Normalizer::add(const Rat& a, const Rat& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  Rat r;
  if (a.den.empty() && b.den.empty()) {
    r.num = poly_add(a.num, b.num);
    canon(r);
    return r;
  }
  // common denominator: every factor at its highest multiplicity
  std::vector<Factor> den = a.den;
  for (const auto& f : b.den) {
    bool hit = false;
    for (auto& g : den) {
      if (cmp_poly(g.p, f.p) == 0) {
        g.k = std::max(g.k, f.k);
        hit = true;
      }
    }
    if (!hit) den.push_back(f);
  }
  auto lift = [&](const Rat& x) {
    Poly n = x.num;
    for (const auto& g : den) {
      int have = 0;
      for (const auto& f : x.den) {
        if (cmp_poly(g.p, f.p) == 0) have = f.k;
      }
      if (g.k > have) n = poly_mul(n, poly_pow(g.p, g.k - have));
    }
    return n;
  };
  r.num = poly_add(lift(a), lift(b));
  r.den = std::move(den);
  canon(r);
  return r;
}

Rat Normalizer::mul(const Rat& a, const Rat& b) {
  if (a.is_zero() || b.is_zero()) return Rat{};
  Rat r;
  r.num = poly_mul(a.num, b.num);
  r.den = a.den;
  r.den.insert(r.den.end(), b.den.begin(), b.den.end());
  canon(r);
  return r;
}

Rat Normalizer::inv(const Rat& a) {
  if (a.is_zero()) throw DomainError("division by zero", "0");
  Rat r;
  r.num = Poly{Term{Q(1), Mono{}}};
  for (const auto& f : a.den) r.num = poly_mul(r.num, poly_pow(f.p, f.k));
  if (a.num.size() == 1) {
    r.num = poly_scale(r.num, 1 / a.num[0].c, mono_pow(a.num[0].m, Q(-1)));
  } else {
    r.den.push_back({a.num, 1});
  }
  canon(r);
  return r;
}

Rat Normalizer::pow_int(const Rat& a, long k) {
  if (k == 0) return constant(1);
  if (a.is_zero()) {
    if (k < 0) throw DomainError("division by zero", "0");
    return a;
  }
  if (a.den.empty() && a.num.size() == 1) {
    Rat r;
    r.num.push_back({qpow(a.num[0].c, k), mono_pow(a.num[0].m, Q(k))});
    canon(r);
    return r;
  }
  if (k < 0) return pow_int(inv(a), -k);
  Rat result = constant(1);
  Rat base = a;
  while (k > 0) {
    if ((k & 1) != 0) result = mul(result, base);
    k >>= 1;
    if (k > 0) base = mul(base, base);
  }
  return result;
}

// Positive-branch rational power: (c*g*P / prod F^k)^q splits factorwise.
Rat Normalizer::pow_q(const Rat& a, const Q& q) {
  if (is_integer(q)) return pow_int(a, to_long(q));
  if (a.is_zero()) {
    if (q > 0) return a;
    throw DomainError("division by zero", "0");
  }
  Q c;
  Mono g;
  Poly prim;
  if (a.num.size() == 1) {
    c = a.num[0].c;
    g = a.num[0].m;
  } else {
    Content ct = content(a.num, false);
    c = ct.c;
    g = ct.g;
    prim = ct.prim;
  }
  std::vector<Factor> den = a.den;
  if (c < 0) {
    for (auto& f : den) {
      if (f.k % 2 != 0) {
        for (auto& t : f.p) t.c = -t.c;
        c = -c;
        break;
      }
    }
  }
  Rat res = constant(1);
  if (c < 0) {
    res = kernel(num(-1), q);
    c = -c;
  }
  for (const auto& [p, m] : factor_integer(c.get_num())) res = mul(res, kernel(num(Q(p)), Q(m) * q));
  for (const auto& [p, m] : factor_integer(c.get_den())) res = mul(res, kernel(num(Q(p)), Q(-m) * q));
  // a kernel of unknown sign raised to an even power keeps its modulus:
  // (K^2)^(1/2) becomes the kernel K^2 under a root, not K
  auto odd = [](const Q& x) { return mpz_class(x.get_num()) % 2 != 0; };
  Rat gm;
  Mono gq;
  for (const auto& [k, e] : g.pw) {
    Q f = e * q;
    if (!odd(e) && odd(f) && !sign_safe(k)) {
      res = mul(res, kernel(pow(k, 2), (e / 2) * q));
    } else {
      gq.pw.emplace_back(k, f);
    }
  }
  if (g.ex) gq.ex = std::make_shared<const Rat>(mul(*g.ex, constant(q)));
  gm.num.push_back({Q(1), std::move(gq)});
  canon(gm);
  res = mul(res, gm);
  if (!prim.empty()) res = mul(res, kernel(poly_expr(prim), q));
  for (const auto& f : den) {
    Q x = Q(-f.k) * q;
    if (f.k % 2 == 0 && odd(x)) {
      res = mul(res, kernel(poly_expr(poly_pow(f.p, 2)), x / 2));
    } else {
      res = mul(res, kernel(poly_expr(f.p), x));
    }
  }
  return res;
}

// ------------------------------------------------------------- conversion

Rat Normalizer::rat(const Expr& e) {
  auto it = memo_.find(e);
  if (it != memo_.end()) return it->second;
  Rat r = to_rat(e);
  memo_.emplace(e, r);
  return r;
}

Rat Normalizer::to_rat(const Expr& e) {
  switch (e.kind()) {
    case Kind::Number:
      return constant(e.value());
    case Kind::Symbol:
    case Kind::Function:
      return kernel(e, Q(1));
    case Kind::Add: {
      Rat acc;
      bool plain = true;
      std::vector<Rat> parts;
      parts.reserve(e.args().size());
      for (const auto& a : e.args()) {
        parts.push_back(rat(a));
        if (!parts.back().den.empty()) plain = false;
      }
      if (plain) {
        std::vector<Term> all;
        for (const auto& p : parts) all.insert(all.end(), p.num.begin(), p.num.end());
        acc.num = combine(std::move(all));
        canon(acc);
        return acc;
      }
      for (const auto& p : parts) acc = add(acc, p);
      return acc;
    }
    case Kind::Mul: {
      Rat acc = constant(1);
      for (const auto& a : e.args()) {
        acc = mul(acc, rat(a));
        if (acc.is_zero()) break;
      }
      return acc;
    }
    case Kind::Pow:
      return pow_expr(e.base(), e.exponent());
    case Kind::Apply:
      return apply_rat(e.fn(), e.arg());
  }
  return Rat{};
}

Rat Normalizer::pow_expr(const Expr& base, const Q& q) {
  if (is_integer(q)) return pow_int(rat(base), to_long(q));
  if (base.kind() == Kind::Mul) {
    Rat acc = constant(1);
    for (const auto& f : base.args()) acc = mul(acc, pow_expr(f, q));
    return acc;
  }
  if (base.kind() == Kind::Pow) {
    const Expr& b = base.base();
    const Q& p = base.exponent();
    bool odd = mpz_class(p.get_num()) % 2 != 0;
    bool positive = (b.kind() == Kind::Symbol && sign_safe(b)) || (b.is_number() && b.value() > 0);
    Q pq = p * q;
    if (odd || positive || mpz_class(pq.get_num()) % 2 == 0) return pow_expr(b, pq);
    // an even power of an atom of unknown sign keeps its modulus
    if (b.kind() == Kind::Symbol || b.kind() == Kind::Function || b.kind() == Kind::Apply) {
      Rat rb = rat(b);
      if (rb.den.empty() && rb.num.size() == 1 && rb.num[0].c == 1 && !rb.num[0].m.ex &&
          rb.num[0].m.pw.size() == 1 && rb.num[0].m.pw[0].second == 1) {
        const Expr& k = rb.num[0].m.pw[0].first;
        if (sign_safe(k)) return kernel(k, pq);
        return kernel(pow(k, 2), (p / 2) * q);
      }
    }
  }
  return pow_q(rat(base), q);
}

Rat Normalizer::apply_rat(Fn f, const Expr& arg) {
  Rat a = rat(arg);
  switch (f) {
    case Fn::Sin:
    case Fn::Cos: {
      if (a.is_zero()) return constant(f == Fn::Sin ? 0 : 1);
      bool flipped = a.num[0].c < 0;
      if (flipped) a = neg(a);
      if (a.den.empty() && a.num.size() == 1 && !a.num[0].m.ex && a.num[0].m.pw.size() == 1 &&
          a.num[0].m.pw[0].first.is_symbol("pi") && a.num[0].m.pw[0].second == 1) {
        Q twice = 2 * a.num[0].c;
        if (is_integer(twice)) {
          long k = ((to_long(twice) % 4) + 4) % 4;
          static const int sv[4] = {0, 1, 0, -1};
          static const int cv[4] = {1, 0, -1, 0};
          int v = f == Fn::Sin ? sv[k] : cv[k];
          if (f == Fn::Sin && flipped) v = -v;
          return constant(v);
        }
      }
      Rat r = kernel(apply(f, expr(a)), Q(1));
      if (f == Fn::Sin && flipped) r = neg(r);
      return r;
    }
    case Fn::Exp: {
      if (a.is_zero()) return constant(1);
      Rat factor = constant(1);
      Rat rest = a;
      if (a.den.empty()) {
        std::vector<Term> keep;
        for (const auto& t : a.num) {
          if (!t.m.ex && t.m.pw.size() == 1 && t.m.pw[0].second == 1 && is_ln_kernel(t.m.pw[0].first)) {
            factor = mul(factor, pow_expr(t.m.pw[0].first.arg(), t.c));
          } else {
            keep.push_back(t);
          }
        }
        rest.num = combine(std::move(keep));
      }
      if (rest.is_zero()) return factor;
      Rat e;
      Mono m;
      m.ex = std::make_shared<const Rat>(std::move(rest));
      e.num.push_back({Q(1), std::move(m)});
      return mul(factor, e);
    }
    case Fn::Ln:
      return ln_rat(a, arg);
  }
  return Rat{};
}

Rat Normalizer::ln_rat(const Rat& a, const Expr& original) {
  if (a.is_zero()) throw DomainError("logarithm of zero", print(original));
  Rat out;
  auto ln_kernel = [&](const Expr& k) { return kernel(apply(Fn::Ln, k), Q(1)); };
  auto ln_positive = [&](const Q& c, const Mono& m) {
    for (const auto& [p, mult] : factor_integer(c.get_num())) {
      out = add(out, mul(constant(Q(mult)), ln_kernel(num(Q(p)))));
    }
    for (const auto& [p, mult] : factor_integer(c.get_den())) {
      out = add(out, mul(constant(Q(-mult)), ln_kernel(num(Q(p)))));
    }
    for (const auto& [k, e] : m.pw) {
      if (mpz_class(e.get_num()) % 2 == 0 && !sign_safe(k)) {
        Rat sq = rat(pow(k, 2));
        out = add(out, mul(constant(e / 2), sq.num.size() == 1 && sq.den.empty() ? ln_kernel(pow(k, 2)) : ln_rat(sq, pow(k, 2))));
      } else {
        out = add(out, mul(constant(e), ln_kernel(k)));
      }
    }
    if (m.ex) out = add(out, *m.ex);
  };
  if (a.num.size() == 1) {
    if (a.num[0].c < 0) return ln_kernel(expr(a));
    ln_positive(a.num[0].c, a.num[0].m);
  } else {
    Content ct = content(a.num, false);
    ln_positive(ct.c, ct.g);
    out = add(out, ln_kernel(poly_expr(ct.prim)));
  }
  for (const auto& f : a.den) out = add(out, mul(constant(Q(-f.k)), ln_kernel(poly_expr(f.p))));
  return out;
}

Expr Normalizer::term_expr(const Term& t, std::vector<std::pair<Expr, Q>>* extra_neg) {
  std::vector<Expr> fs;
  if (t.c != 1) fs.push_back(num(t.c));
  std::vector<std::pair<Expr, Q>> negs;
  for (const auto& [k, e] : t.m.pw) {
    if (e > 0) {
      fs.push_back(pow(k, e));
    } else {
      negs.emplace_back(k, e);
    }
  }
  if (t.m.ex) fs.push_back(exp(expr(*t.m.ex)));
  if (extra_neg != nullptr) {
    negs.insert(negs.end(), extra_neg->begin(), extra_neg->end());
    std::stable_sort(negs.begin(), negs.end(),
                     [](const auto& x, const auto& y) { return compare(x.first, y.first) < 0; });
  }
  for (const auto& [k, e] : negs) fs.push_back(pow(k, e));
  if (fs.empty()) return num(1);
  return sym::mul(std::move(fs));
}

Expr Normalizer::poly_expr(const Poly& p) {
  std::vector<Expr> terms;
  terms.reserve(p.size());
  for (const auto& t : p) {
    if (t.c > 0) terms.push_back(term_expr(t, nullptr));
  }
  for (const auto& t : p) {
    if (t.c < 0) terms.push_back(term_expr(t, nullptr));
  }
  return sym::add(std::move(terms));
}

Expr Normalizer::expr(const Rat& r) {
  if (r.is_zero()) return num(0);
  if (r.den.empty()) return poly_expr(r.num);
  if (r.num.size() == 1) {
    Term t = r.num[0];
    std::vector<std::pair<Expr, Q>> merged;
    std::vector<Expr> rest;
    for (const auto& f : r.den) {
      Expr fe = poly_expr(f.p);
      Q e = exponent_of(t.m, fe);
      if (e != 0) {
        set_exponent(t.m, fe, Q(0));
        merged.emplace_back(fe, e - f.k);
      } else {
        rest.push_back(pow(fe, Q(-f.k)));
      }
    }
    Expr body = term_expr(t, &merged);
    std::vector<Expr> fs{body};
    fs.insert(fs.end(), rest.begin(), rest.end());
    return sym::mul(std::move(fs));
  }
  std::vector<Expr> fs{poly_expr(r.num)};
  for (const auto& f : r.den) fs.push_back(pow(poly_expr(f.p), Q(-f.k)));
  return sym::mul(std::move(fs));
}

}  // namespace tq::sym::nf
