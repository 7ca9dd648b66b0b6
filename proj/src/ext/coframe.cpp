#include "tq/ext/coframe.hpp"

#include "tq/sym/error.hpp"
#include "tq/sym/simplify.hpp"

namespace tq::ext {

Coframe::Coframe(ChartPtr chart, Matrix rows) : chart_(std::move(chart)), rows_(std::move(rows)) {
  if (rows_.size() != chart_->dim()) throw Error("coframe needs one 1-form per coordinate");
  for (const auto& r : rows_) {
    if (r.size() != chart_->dim()) throw Error("coframe row has the wrong length");
  }
  rows_ = simplify(rows_, chart_->context());
  inv_ = ext::inverse(rows_, chart_->context());
  for (const auto& r : rows_) e_.push_back(Form::one(chart_, r));
}

Coframe Coframe::from_forms(const std::vector<Form>& e) {
  if (e.empty()) throw Error("empty coframe");
  ChartPtr ch = e[0].chart();
  Matrix rows;
  for (const auto& f : e) {
    if (f.degree() != 1 || f.basis() != Basis::Coordinate) throw Error("coframe entries must be coordinate 1-forms");
    std::vector<Expr> row;
    for (std::size_t mu = 0; mu < ch->dim(); ++mu) row.push_back(f.component({static_cast<int>(mu)}));
    rows.push_back(row);
  }
  return Coframe(ch, rows);
}

namespace {

// Rewrites every basis 1-form through `basis1[i]` (already in the target basis).
Form rebase(const Form& a, const std::vector<Form>& basis1, Basis target) {
  Form out(a.chart(), a.degree(), target, a.imaginary());
  for (const auto& [idx, c] : a.terms()) {
    Form acc = Form::scalar(a.chart(), c).in_basis_tag(target);
    for (int i : idx) acc = wedge(acc, basis1[static_cast<std::size_t>(i)]);
    out = out + acc.with_imaginary(a.imaginary());
  }
  return out;
}

}  // namespace

Form to_frame_basis(const Form& a, const Coframe& c) {
  if (a.basis() == Basis::Frame) return a;
  std::vector<Form> dx;
  for (std::size_t mu = 0; mu < c.size(); ++mu) dx.push_back(Form::one(c.chart(), c.inverse()[mu], Basis::Frame));
  return rebase(a, dx, Basis::Frame);
}

Form from_frame_basis(const Form& a, const Coframe& c) {
  if (a.basis() == Basis::Coordinate) return a;
  return rebase(a, c.forms(), Basis::Coordinate);
}

Matrix metric_from_coframe(const Coframe& c) {
  std::size_t n = c.size();
  const auto& E = c.matrix();
  Matrix g(n, std::vector<Expr>(n, sym::num(0)));
  for (std::size_t mu = 0; mu < n; ++mu) {
    for (std::size_t nu = mu; nu < n; ++nu) {
      std::vector<Expr> terms;
      for (std::size_t a = 0; a < n; ++a) terms.push_back(sym::mul({sym::num(eta_sign(a)), E[a][mu], E[a][nu]}));
      g[mu][nu] = sym::simplify(sym::add(terms), c.chart()->context());
      g[nu][mu] = g[mu][nu];
    }
  }
  return g;
}

}  // namespace tq::ext
