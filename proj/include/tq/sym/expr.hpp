#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tq/sym/number.hpp"

namespace tq::sym {

enum class Kind : std::uint8_t { Number, Symbol, Function, Apply, Pow, Mul, Add };

/// Elementary functions carried by `Kind::Apply` nodes.
enum class Fn : std::uint8_t { Sin, Cos, Exp, Ln };

const char* fn_name(Fn f);

class Expr;

struct Node {
  Kind kind = Kind::Number;
  Fn fn = Fn::Sin;
  Q value;                  // Number value, or the exponent of a Pow
  std::string name;         // Symbol / Function name
  std::vector<Expr> args;   // Add terms, Mul factors, Pow base, Apply argument, Function arguments
  std::vector<int> derivs;  // Function: derivative count per argument slot
  std::size_t hash = 0;
};

/// Immutable symbolic expression. Copies share the underlying tree, so an
/// Expr can be handed to several threads without synchronisation.
class Expr {
 public:
  Expr();
  Expr(int v);  // NOLINT(google-explicit-constructor)
  Expr(long v);  // NOLINT(google-explicit-constructor)
  Expr(const Q& v);  // NOLINT(google-explicit-constructor)

  Kind kind() const { return n_->kind; }
  Fn fn() const { return n_->fn; }
  const Q& value() const { return n_->value; }
  const Q& exponent() const { return n_->value; }
  const std::string& name() const { return n_->name; }
  const std::vector<Expr>& args() const { return n_->args; }
  const Expr& arg(std::size_t i = 0) const { return n_->args[i]; }
  const Expr& base() const { return n_->args[0]; }
  const std::vector<int>& derivs() const { return n_->derivs; }
  std::size_t hash() const { return n_->hash; }

  bool is_number() const { return kind() == Kind::Number; }
  bool is_zero() const { return is_number() && value() == 0; }
  bool is_one() const { return is_number() && value() == 1; }
  bool is_symbol(const std::string& s) const { return kind() == Kind::Symbol && name() == s; }

  bool same_node(const Expr& o) const { return n_ == o.n_; }

  static Expr from_node(Node n);

 private:
  explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

/// Structural total order. Deterministic across runs; used for canonical
/// ordering of kernels and for map keys.
int compare(const Expr& a, const Expr& b);
bool operator==(const Expr& a, const Expr& b);
inline bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }
struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

// Raw builders. They flatten nested sums/products and fold numeric
// literals, nothing more; `simplify` produces the normal form.
Expr num(const Q& q);
Expr sym(const std::string& name);
Expr func(const std::string& name, std::vector<Expr> args, std::vector<int> derivs = {});
Expr add(std::vector<Expr> terms);
Expr mul(std::vector<Expr> factors);
Expr pow(const Expr& base, const Q& exponent);
Expr apply(Fn f, const Expr& arg);

inline Expr sin(const Expr& e) { return apply(Fn::Sin, e); }
inline Expr cos(const Expr& e) { return apply(Fn::Cos, e); }
inline Expr exp(const Expr& e) { return apply(Fn::Exp, e); }
inline Expr ln(const Expr& e) { return apply(Fn::Ln, e); }
inline Expr sqrt(const Expr& e) { return pow(e, Q(1, 2)); }
Expr pi();

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);

/// Names of all symbols occurring in `e` (function names excluded; `pi` excluded).
std::vector<std::string> free_symbols(const Expr& e);
/// True when `e` mentions symbol `name`, directly or as a function argument.
bool depends_on(const Expr& e, const std::string& name);
/// Derivative-marker / unknown-function nodes occurring in `e`.
std::vector<Expr> function_nodes(const Expr& e);
/// Number of nodes (used by property-test generators and diagnostics).
std::size_t node_count(const Expr& e);

}  // namespace tq::sym
