#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tq/sym/expr.hpp"

namespace tq::sym {

enum class Pred { Positive, Nonzero, Integer, Range };

/// A fact the simplifier may rely on. `subject` is the constrained
/// expression (usually a bare symbol); `lo`/`hi` are used by Range only and
/// may be left empty for a one-sided bound.
struct Assumption {
  std::string label;
  Pred pred = Pred::Positive;
  Expr subject;
  std::optional<Expr> lo;
  std::optional<Expr> hi;
};

struct FunctionDecl {
  std::string name;
  std::vector<std::string> args;
};

/// Declared behaviour of an unknown function near a point, used by
/// `series_at` in place of the (opaque) function itself.
struct SeriesData {
  std::string function;
  Expr expansion;  // expression in the function's declared arguments
};

/// Declarations an expression is interpreted against. Plain value type; no
/// shared state.
class Context {
 public:
  Context& coordinate(const std::string& name);
  Context& parameter(const std::string& name);
  Context& function(const std::string& name, std::vector<std::string> args);
  /// Declares `name` as a parameter standing for `value`.
  Context& define(const std::string& name, const Expr& value);
  Context& assume(Assumption a);
  Context& positive(const std::string& name);
  Context& nonzero(const Expr& subject, const std::string& label = "");
  Context& integer(const std::string& name);
  Context& range(const std::string& name, std::optional<Expr> lo, std::optional<Expr> hi,
                 const std::string& label = "");
  Context& tag(const std::string& name);
  Context& series(const std::string& function, const Expr& expansion);
  Context& generic_nonzero(bool on);
  Context& linearized(bool on);

  bool is_coordinate(const std::string& name) const;
  bool is_parameter(const std::string& name) const;
  bool is_declared(const std::string& name) const;
  const FunctionDecl* find_function(const std::string& name) const;
  const Expr* definition(const std::string& name) const;
  bool is_tagged(const std::string& name) const;
  const SeriesData* find_series(const std::string& function) const;

  const std::vector<std::string>& coordinates() const { return coords_; }
  const std::vector<std::string>& parameters() const { return params_; }
  const std::vector<FunctionDecl>& functions() const { return funcs_; }
  const std::vector<std::pair<std::string, Expr>>& definitions() const { return defs_; }
  const std::vector<Assumption>& assumptions() const { return assumptions_; }
  const std::set<std::string>& tags() const { return tags_; }
  const std::vector<SeriesData>& series_data() const { return series_; }
  bool generic_nonzero() const { return generic_nonzero_; }
  bool linearized() const { return linearized_; }

  /// The function node `name(args...)` with its declared arguments.
  Expr function_node(const std::string& name, std::vector<int> derivs = {}) const;
  /// Copy with `name` removed from the assumption list (by label).
  Context without_assumption(const std::string& label) const;

 private:
  std::vector<std::string> coords_;
  std::vector<std::string> params_;
  std::vector<FunctionDecl> funcs_;
  std::vector<std::pair<std::string, Expr>> defs_;
  std::vector<Assumption> assumptions_;
  std::set<std::string> tags_;
  std::vector<SeriesData> series_;
  bool generic_nonzero_ = false;
  bool linearized_ = false;
};

}  // namespace tq::sym
