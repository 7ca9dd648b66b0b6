#include "tq/sym/expr.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace tq::sym {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t hash_node(const Node& n) {
  std::size_t h = std::hash<int>{}(static_cast<int>(n.kind));
  switch (n.kind) {
    case Kind::Number:
    case Kind::Pow:
      h = mix(h, std::hash<std::string>{}(n.value.get_str()));
      break;
    case Kind::Symbol:
    case Kind::Function:
      h = mix(h, std::hash<std::string>{}(n.name));
      break;
    case Kind::Apply:
      h = mix(h, static_cast<std::size_t>(n.fn));
      break;
    default:
      break;
  }
  for (const auto& a : n.args) h = mix(h, a.hash());
  for (int d : n.derivs) h = mix(h, static_cast<std::size_t>(d));
  return h;
}

Node number_node(const Q& q) {
  Node n;
  n.kind = Kind::Number;
  n.value = q;
  n.value.canonicalize();
  return n;
}

}  // namespace

const char* fn_name(Fn f) {
  switch (f) {
    case Fn::Sin: return "sin";
    case Fn::Cos: return "cos";
    case Fn::Exp: return "exp";
    case Fn::Ln: return "ln";
  }
  return "?";
}

Expr Expr::from_node(Node n) {
  n.hash = hash_node(n);
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr::Expr() : Expr(Q(0)) {}
Expr::Expr(int v) : Expr(Q(v)) {}
Expr::Expr(long v) : Expr(Q(v)) {}
Expr::Expr(const Q& v) {
  Node n = number_node(v);
  n.hash = hash_node(n);
  n_ = std::make_shared<const Node>(std::move(n));
}

int compare(const Expr& a, const Expr& b) {
  if (a.same_node(b)) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  auto cmp_q = [](const Q& x, const Q& y) { return x < y ? -1 : (y < x ? 1 : 0); };
  auto cmp_args = [](const std::vector<Expr>& x, const std::vector<Expr>& y) {
    std::size_t n = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) {
      int c = compare(x[i], y[i]);
      if (c != 0) return c;
    }
    if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
    return 0;
  };
  switch (a.kind()) {
    case Kind::Number:
      return cmp_q(a.value(), b.value());
    case Kind::Symbol:
      return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
    case Kind::Function: {
      if (a.name() != b.name()) return a.name() < b.name() ? -1 : 1;
      if (a.derivs() != b.derivs()) {
        // lower total derivative order first
        int sa = 0, sb = 0;
        for (int d : a.derivs()) sa += d;
        for (int d : b.derivs()) sb += d;
        if (sa != sb) return sa < sb ? -1 : 1;
        return a.derivs() > b.derivs() ? -1 : 1;
      }
      return cmp_args(a.args(), b.args());
    }
    case Kind::Apply:
      if (a.fn() != b.fn()) return a.fn() < b.fn() ? -1 : 1;
      return compare(a.arg(), b.arg());
    case Kind::Pow: {
      int c = compare(a.base(), b.base());
      if (c != 0) return c;
      return cmp_q(a.exponent(), b.exponent());
    }
    case Kind::Mul:
    case Kind::Add:
      return cmp_args(a.args(), b.args());
  }
  return 0;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.same_node(b)) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

Expr num(const Q& q) { return Expr(q); }

Expr sym(const std::string& name) {
  Node n;
  n.kind = Kind::Symbol;
  n.name = name;
  return Expr::from_node(std::move(n));
}

Expr pi() { return sym("pi"); }

Expr func(const std::string& name, std::vector<Expr> args, std::vector<int> derivs) {
  Node n;
  n.kind = Kind::Function;
  n.name = name;
  if (derivs.empty()) derivs.assign(args.size(), 0);
  n.args = std::move(args);
  n.derivs = std::move(derivs);
  return Expr::from_node(std::move(n));
}

Expr add(std::vector<Expr> terms) {
  // the folded constant keeps the slot of the first literal seen
  std::vector<Expr> flat;
  Q constant = 0;
  long slot = -1;
  auto push = [&](const Expr& u) {
    if (u.is_number()) {
      constant += u.value();
      if (slot < 0) {
        slot = static_cast<long>(flat.size());
        flat.push_back(u);
      }
    } else {
      flat.push_back(u);
    }
  };
  for (const auto& t : terms) {
    if (t.kind() == Kind::Add) {
      for (const auto& u : t.args()) push(u);
    } else {
      push(t);
    }
  }
  if (slot >= 0) {
    if (constant == 0) {
      flat.erase(flat.begin() + slot);
    } else {
      flat[static_cast<std::size_t>(slot)] = num(constant);
    }
  }
  if (flat.empty()) return num(0);
  if (flat.size() == 1) return flat.front();
  Node n;
  n.kind = Kind::Add;
  n.args = std::move(flat);
  return Expr::from_node(std::move(n));
}

Expr mul(std::vector<Expr> factors) {
  std::vector<Expr> flat;
  Q coeff = 1;
  for (auto& f : factors) {
    if (f.kind() == Kind::Mul) {
      for (const auto& g : f.args()) {
        if (g.is_number()) {
          coeff *= g.value();
        } else {
          flat.push_back(g);
        }
      }
    } else if (f.is_number()) {
      coeff *= f.value();
    } else {
      flat.push_back(std::move(f));
    }
  }
  if (coeff == 0) return num(0);
  if (flat.empty()) return num(coeff);
  if (coeff == 1 && flat.size() == 1) return flat.front();
  if (coeff != 1) flat.insert(flat.begin(), num(coeff));
  Node n;
  n.kind = Kind::Mul;
  n.args = std::move(flat);
  return Expr::from_node(std::move(n));
}

Expr pow(const Expr& base, const Q& exponent_in) {
  Q exponent = exponent_in;
  exponent.canonicalize();
  if (exponent == 1) return base;
  if (exponent == 0) return num(1);
  if (is_integer(exponent)) {
    long k = to_long(exponent);
    if (base.is_number()) {
      if (base.value() == 0 && k < 0) {
        // keep the pole visible instead of folding it away
      } else {
        return num(qpow(base.value(), k));
      }
    }
    if (base.kind() == Kind::Pow) {
      return pow(base.base(), base.exponent() * exponent);
    }
    if (base.kind() == Kind::Mul) {
      std::vector<Expr> fs;
      fs.reserve(base.args().size());
      for (const auto& f : base.args()) fs.push_back(pow(f, exponent));
      return mul(std::move(fs));
    }
  }
  Node n;
  n.kind = Kind::Pow;
  n.value = exponent;
  n.args = {base};
  return Expr::from_node(std::move(n));
}

Expr apply(Fn f, const Expr& arg) {
  Node n;
  n.kind = Kind::Apply;
  n.fn = f;
  n.args = {arg};
  return Expr::from_node(std::move(n));
}

Expr operator+(const Expr& a, const Expr& b) { return add({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return add({a, mul({num(-1), b})}); }
Expr operator-(const Expr& a) { return mul({num(-1), a}); }
Expr operator*(const Expr& a, const Expr& b) { return mul({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return mul({a, pow(b, -1)}); }

namespace {

void walk(const Expr& e, const std::function<void(const Expr&)>& f) {
  f(e);
  for (const auto& a : e.args()) walk(a, f);
}

}  // namespace

std::vector<std::string> free_symbols(const Expr& e) {
  std::set<std::string> names;
  walk(e, [&](const Expr& x) {
    if (x.kind() == Kind::Symbol && x.name() != "pi") names.insert(x.name());
  });
  return {names.begin(), names.end()};
}

bool depends_on(const Expr& e, const std::string& name) {
  if (e.kind() == Kind::Symbol) return e.name() == name;
  for (const auto& a : e.args()) {
    if (depends_on(a, name)) return true;
  }
  return false;
}

std::vector<Expr> function_nodes(const Expr& e) {
  std::set<Expr, ExprLess> found;
  walk(e, [&](const Expr& x) {
    if (x.kind() == Kind::Function) found.insert(x);
  });
  return {found.begin(), found.end()};
}

std::size_t node_count(const Expr& e) {
  std::size_t n = 1;
  for (const auto& a : e.args()) n += node_count(a);
  return n;
}

}  // namespace tq::sym
