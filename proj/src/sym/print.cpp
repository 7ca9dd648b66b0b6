#include "tq/sym/print.hpp"

#include <sstream>

namespace tq::sym {

namespace {

class Printer {
 public:
  explicit Printer(const Context* ctx) : ctx_(ctx) {}

  std::string str(const Expr& e) {
    switch (e.kind()) {
      case Kind::Number: return number(e.value());
      case Kind::Symbol: return e.name();
      case Kind::Function: return function(e);
      case Kind::Apply: return std::string(fn_name(e.fn())) + "(" + str(e.arg()) + ")";
      case Kind::Pow: return lone_pow(e);
      case Kind::Mul: return product(e);
      case Kind::Add: return sum(e);
    }
    return "?";
  }

 private:
  const Context* ctx_;

  static std::string number(const Q& q) { return q.get_str(); }

  std::string function(const Expr& e) {
    std::string out = e.name() + derivative_suffix(e);
    bool show = true;
    if (ctx_ != nullptr) {
      if (const FunctionDecl* d = ctx_->find_function(e.name()); d != nullptr && d->args.size() == e.args().size()) {
        show = false;
        for (std::size_t i = 0; i < d->args.size(); ++i) {
          if (!e.arg(i).is_symbol(d->args[i])) show = true;
        }
      }
    }
    if (show) {
      out += "(";
      for (std::size_t i = 0; i < e.args().size(); ++i) {
        if (i > 0) out += ",";
        out += str(e.arg(i));
      }
      out += ")";
    }
    return out;
  }

  // operand of ^ : atoms print bare, everything else gets parentheses
  std::string base(const Expr& b) {
    switch (b.kind()) {
      case Kind::Number:
        if (is_integer(b.value()) && b.value() >= 0) return number(b.value());
        return "(" + number(b.value()) + ")";
      case Kind::Symbol:
      case Kind::Function:
      case Kind::Apply:
        return str(b);
      default:
        return "(" + str(b) + ")";
    }
  }

  // b^q with q > 0
  std::string positive_pow(const Expr& b, const Q& q) {
    if (q == 1) return base(b);
    if (q == Q(1, 2)) return "sqrt(" + str(b) + ")";
    if (is_integer(q)) return base(b) + "^" + number(q);
    return base(b) + "^(" + number(q) + ")";
  }

  std::string lone_pow(const Expr& e) {
    const Q& q = e.exponent();
    if (q > 0) return positive_pow(e.base(), q);
    return "1/" + positive_pow(e.base(), -q);
  }

  // factor inside a product
  std::string factor(const Expr& f) {
    if (f.kind() == Kind::Add) return "(" + str(f) + ")";
    if (f.kind() == Kind::Pow) {
      if (f.exponent() > 0) return positive_pow(f.base(), f.exponent());
      if (is_integer(f.exponent())) return base(f.base()) + "^" + number(f.exponent());
      return base(f.base()) + "^(" + number(f.exponent()) + ")";
    }
    return str(f);
  }

  std::string product(const Expr& e) {
    const auto& fs = e.args();
    std::size_t start = 0;
    Q coeff = 1;
    if (fs[0].is_number()) {
      coeff = fs[0].value();
      start = 1;
    }
    // trailing run of negative powers becomes the denominator
    std::size_t tail = fs.size();
    while (tail > start && fs[tail - 1].kind() == Kind::Pow && fs[tail - 1].exponent() < 0) --tail;

    std::vector<std::string> den;
    mpz_class cden = coeff.get_den();
    if (cden != 1) den.push_back(cden.get_str());
    for (std::size_t i = tail; i < fs.size(); ++i) den.push_back(positive_pow(fs[i].base(), -fs[i].exponent()));

    std::string out;
    mpz_class cnum = coeff.get_num();
    bool negative = cnum < 0;
    if (negative) cnum = -cnum;
    std::vector<std::string> numer;
    if (cnum != 1) numer.push_back(cnum.get_str());
    for (std::size_t i = start; i < tail; ++i) numer.push_back(factor(fs[i]));
    if (numer.empty()) numer.push_back("1");
    if (negative) out = "-";
    for (std::size_t i = 0; i < numer.size(); ++i) {
      if (i > 0) out += "*";
      out += numer[i];
    }
    if (!den.empty()) {
      out += "/";
      if (den.size() == 1) {
        out += den[0];
      } else {
        out += "(";
        for (std::size_t i = 0; i < den.size(); ++i) {
          if (i > 0) out += "*";
          out += den[i];
        }
        out += ")";
      }
    }
    return out;
  }

  static bool negative_term(const Expr& t) {
    if (t.is_number()) return t.value() < 0;
    return t.kind() == Kind::Mul && t.arg(0).is_number() && t.arg(0).value() < 0;
  }

  std::string sum(const Expr& e) {
    std::string out;
    bool first = true;
    for (const auto& t : e.args()) {
      std::string s = str(t);
      if (!first && !negative_term(t)) out += "+";
      out += s;
      first = false;
    }
    return out;
  }
};

}  // namespace

std::string derivative_suffix(const Expr& fn) {
  if (fn.kind() != Kind::Function) return "";
  const auto& d = fn.derivs();
  std::string out;
  if (d.size() == 1) {
    out.append(static_cast<std::size_t>(d[0]), '\'');
    return out;
  }
  if (d.empty()) return out;
  out.append(static_cast<std::size_t>(d[0]), '.');
  for (std::size_t k = 1; k + 1 < d.size(); ++k) {
    for (int i = 0; i < d[k]; ++i) out += "@" + std::to_string(k);
  }
  out.append(static_cast<std::size_t>(d.back()), '\'');
  return out;
}

std::string print(const Expr& e) { return Printer(nullptr).str(e); }

std::string print(const Expr& e, const Context& ctx) { return Printer(&ctx).str(e); }

}  // namespace tq::sym
