#include "tq/sym/context.hpp"

#include <algorithm>

#include "tq/sym/error.hpp"

namespace tq::sym {

namespace {

void check_fresh(const Context& c, const std::string& name) {
  if (name.empty()) throw Error("empty declaration name");
  if (c.is_declared(name)) throw Error("'" + name + "' declared twice");
}

}  // namespace

Context& Context::coordinate(const std::string& name) {
  check_fresh(*this, name);
  coords_.push_back(name);
  return *this;
}

Context& Context::parameter(const std::string& name) {
  check_fresh(*this, name);
  params_.push_back(name);
  return *this;
}

Context& Context::function(const std::string& name, std::vector<std::string> args) {
  check_fresh(*this, name);
  for (const auto& a : args) {
    if (!is_coordinate(a)) throw Error("argument '" + a + "' of " + name + " is not a coordinate");
  }
  funcs_.push_back({name, std::move(args)});
  return *this;
}

Context& Context::define(const std::string& name, const Expr& value) {
  if (!is_declared(name)) params_.push_back(name);
  defs_.emplace_back(name, value);
  return *this;
}

Context& Context::assume(Assumption a) {
  if (a.label.empty()) a.label = "a" + std::to_string(assumptions_.size());
  assumptions_.push_back(std::move(a));
  return *this;
}

Context& Context::positive(const std::string& name) {
  return assume({name + ">0", Pred::Positive, sym(name), {}, {}});
}

Context& Context::nonzero(const Expr& subject, const std::string& label) {
  return assume({label, Pred::Nonzero, subject, {}, {}});
}

Context& Context::integer(const std::string& name) {
  return assume({name + " integer", Pred::Integer, sym(name), {}, {}});
}

Context& Context::range(const std::string& name, std::optional<Expr> lo, std::optional<Expr> hi,
                        const std::string& label) {
  return assume({label, Pred::Range, sym(name), std::move(lo), std::move(hi)});
}

Context& Context::tag(const std::string& name) {
  tags_.insert(name);
  return *this;
}

Context& Context::series(const std::string& function, const Expr& expansion) {
  series_.erase(std::remove_if(series_.begin(), series_.end(),
                               [&](const SeriesData& s) { return s.function == function; }),
                series_.end());
  series_.push_back({function, expansion});
  return *this;
}

Context& Context::generic_nonzero(bool on) {
  generic_nonzero_ = on;
  return *this;
}

Context& Context::linearized(bool on) {
  linearized_ = on;
  return *this;
}

bool Context::is_coordinate(const std::string& name) const {
  return std::find(coords_.begin(), coords_.end(), name) != coords_.end();
}

bool Context::is_parameter(const std::string& name) const {
  return std::find(params_.begin(), params_.end(), name) != params_.end();
}

bool Context::is_declared(const std::string& name) const {
  return name == "pi" || is_coordinate(name) || is_parameter(name) || find_function(name) != nullptr;
}

const FunctionDecl* Context::find_function(const std::string& name) const {
  for (const auto& f : funcs_) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

const Expr* Context::definition(const std::string& name) const {
  for (const auto& d : defs_) {
    if (d.first == name) return &d.second;
  }
  return nullptr;
}

bool Context::is_tagged(const std::string& name) const { return tags_.count(name) != 0; }

const SeriesData* Context::find_series(const std::string& function) const {
  for (const auto& s : series_) {
    if (s.function == function) return &s;
  }
  return nullptr;
}

Expr Context::function_node(const std::string& name, std::vector<int> derivs) const {
  const FunctionDecl* f = find_function(name);
  if (f == nullptr) throw Error("unknown function '" + name + "'");
  std::vector<Expr> args;
  for (const auto& a : f->args) args.push_back(sym(a));
  return func(name, std::move(args), std::move(derivs));
}

Context Context::without_assumption(const std::string& label) const {
  Context c = *this;
  c.assumptions_.erase(std::remove_if(c.assumptions_.begin(), c.assumptions_.end(),
                                      [&](const Assumption& a) { return a.label == label; }),
                       c.assumptions_.end());
  return c;
}

}  // namespace tq::sym
