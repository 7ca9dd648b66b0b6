#include "tq/sym/parse.hpp"

#include <cctype>

#include "tq/sym/error.hpp"

namespace tq::sym {

namespace {

class Parser {
 public:
  Parser(const std::string& s, const Context& ctx) : s_(s), ctx_(ctx) {}

  Expr run() {
    Expr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  const std::string& s_;
  const Context& ctx_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])) != 0) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) {
      if (pos_ >= s_.size()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "'");
    }
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    for (;;) {
      if (eat('+')) {
        terms.push_back(term());
      } else if (eat('-')) {
        terms.push_back(mul({num(-1), term()}));
      } else {
        break;
      }
    }
    return add(std::move(terms));
  }

  Expr term() {
    Expr acc = unary();
    for (;;) {
      if (eat('*')) {
        acc = mul({acc, unary()});
      } else if (eat('/')) {
        acc = mul({acc, pow(unary(), -1)});
      } else {
        break;
      }
    }
    return acc;
  }

  Expr unary() {
    if (eat('-')) return mul({num(-1), unary()});
    if (eat('+')) return unary();
    return power();
  }

  Expr power() {
    Expr b = primary();
    if (eat('^')) {
      Expr x = unary();
      if (x.is_number()) return pow(b, x.value());
      return exp(mul({x, ln(b)}));
    }
    return b;
  }

  Expr number_literal() {
    std::size_t start = pos_;
    mpz_class whole = 0;
    mpz_class frac = 0;
    mpz_class scale = 1;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])) != 0) {
      whole = whole * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])) != 0) {
        frac = frac * 10 + (s_[pos_] - '0');
        scale *= 10;
        ++pos_;
      }
    }
    if (pos_ == start) fail("expected a number");
    Q v(whole * scale + frac, scale);
    v.canonicalize();
    return num(v);
  }

  std::vector<Expr> arg_list() {
    std::vector<Expr> args;
    if (eat(')')) return args;
    args.push_back(expr());
    while (eat(',')) args.push_back(expr());
    expect(')');
    return args;
  }

  Expr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) != 0 || c == '.') return number_literal();
    if (std::isalpha(static_cast<unsigned char>(c)) == 0 && c != '_') fail("unexpected '" + std::string(1, c) + "'");

    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) != 0 || s_[pos_] == '_')) {
      ++pos_;
    }
    std::string name = s_.substr(start, pos_ - start);

    static const std::pair<const char*, int> builtins[] = {
        {"sin", 0}, {"cos", 1}, {"exp", 2}, {"ln", 3}, {"log", 3}, {"sqrt", 4}};
    for (const auto& [bname, id] : builtins) {
      if (name != bname || ctx_.is_declared(name)) continue;
      expect('(');
      Expr a = expr();
      expect(')');
      switch (id) {
        case 0: return sin(a);
        case 1: return cos(a);
        case 2: return exp(a);
        case 3: return ln(a);
        default: return sqrt(a);
      }
    }
    if (name == "pi") return pi();

    if (const FunctionDecl* f = ctx_.find_function(name); f != nullptr) {
      std::vector<int> derivs(f->args.size(), 0);
      for (;;) {
        if (pos_ < s_.size() && s_[pos_] == '\'') {
          if (derivs.empty()) fail("derivative of a constant function");
          ++derivs.back();
          ++pos_;
        } else if (pos_ < s_.size() && s_[pos_] == '.' &&
                   !(pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])) != 0)) {
          if (derivs.empty()) fail("derivative of a constant function");
          ++derivs.front();
          ++pos_;
        } else if (pos_ < s_.size() && s_[pos_] == '@') {
          ++pos_;
          std::size_t k0 = pos_;
          std::size_t k = 0;
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])) != 0) {
            k = k * 10 + static_cast<std::size_t>(s_[pos_] - '0');
            ++pos_;
          }
          if (pos_ == k0 || k >= derivs.size()) fail("bad derivative slot");
          ++derivs[k];
        } else {
          break;
        }
      }
      std::vector<Expr> args;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '(') {
        ++pos_;
        args = arg_list();
        if (args.size() != f->args.size()) fail("wrong number of arguments for " + name);
      } else {
        for (const auto& a : f->args) args.push_back(sym(a));
      }
      return func(name, std::move(args), std::move(derivs));
    }
    if (!ctx_.is_declared(name)) throw UndeclaredSymbolError(name, start);
    return sym(name);
  }
};

}  // namespace

Expr parse(const std::string& text, const Context& ctx) { return Parser(text, ctx).run(); }

}  // namespace tq::sym
