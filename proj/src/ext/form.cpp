#include "tq/ext/form.hpp"

#include <algorithm>
#include <map>

#include "tq/sym/calculus.hpp"
#include "tq/sym/error.hpp"
#include "tq/sym/print.hpp"
#include "tq/sym/simplify.hpp"

namespace tq::ext {

namespace {

// sorts idx in place; returns the permutation sign, 0 on a repeated index
int sort_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < idx.size(); ++i) {
    if (idx[i] == idx[i - 1]) return 0;
  }
  return sign;
}

// unsimplified terms per sorted index; one simplification per component in `into`
struct RawTerms {
  std::map<std::vector<int>, std::vector<Expr>> t;
  void add(std::vector<int> idx, const Expr& c) {
    int s = sort_sign(idx);
    if (s == 0 || c.is_zero()) return;
    t[idx].push_back(s > 0 ? c : sym::mul({sym::num(-1), c}));
  }
  void into(Form& out) const {
    for (const auto& [idx, ts] : t) out.accumulate(idx, sym::add(ts));
  }
};

void raw_wedge(const Form& a, const Form& b, RawTerms& acc) {
  bool flip = a.imaginary() && b.imaginary();
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      std::vector<int> idx = ka;
      idx.insert(idx.end(), kb.begin(), kb.end());
      Expr c = sym::mul({ca, cb});
      acc.add(idx, flip ? sym::mul({sym::num(-1), c}) : c);
    }
  }
}

void check_compatible(const Form& a, const Form& b) {
  if (a.chart() != b.chart() && a.chart()->coords().size() != b.chart()->coords().size()) {
    throw Error("forms live on different charts");
  }
  if (a.basis() != b.basis()) throw Error("forms are expressed in different bases");
}

}  // namespace

Form::Form(ChartPtr chart, int degree, Basis basis, bool imaginary)
    : chart_(std::move(chart)), degree_(degree), basis_(basis), imaginary_(imaginary) {}

Form Form::scalar(ChartPtr chart, const Expr& f) {
  Form out(std::move(chart), 0);
  out.accumulate({}, f);
  return out;
}

Form Form::dx(ChartPtr chart, const std::string& coordinate) {
  int i = chart->index(coordinate);
  if (i < 0) throw Error("'" + coordinate + "' is not a coordinate of the chart");
  Form out(std::move(chart), 1);
  out.accumulate({i}, sym::num(1));
  return out;
}

Form Form::one(ChartPtr chart, const std::vector<Expr>& c, Basis basis) {
  Form out(std::move(chart), 1, basis);
  for (std::size_t i = 0; i < c.size(); ++i) out.accumulate({static_cast<int>(i)}, c[i]);
  return out;
}

Form Form::with_imaginary(bool on) const {
  Form out = *this;
  out.imaginary_ = on;
  return out;
}

Form Form::in_basis_tag(Basis b) const {
  Form out = *this;
  out.basis_ = b;
  return out;
}

Expr Form::component(std::vector<int> idx) const {
  int s = sort_sign(idx);
  if (s == 0) return sym::num(0);
  auto it = terms_.find(idx);
  if (it == terms_.end()) return sym::num(0);
  return s > 0 ? it->second : sym::simplify(-it->second, chart_->context());
}

void Form::accumulate(std::vector<int> idx, const Expr& c) {
  if (degree_ > static_cast<int>(chart_->dim())) return;
  int s = sort_sign(idx);
  if (s == 0 || c.is_zero()) return;
  Expr add = s > 0 ? c : sym::mul({sym::num(-1), c});
  auto it = terms_.find(idx);
  Expr v = it == terms_.end() ? add : sym::add({it->second, add});
  v = sym::simplify(v, chart_->context());
  if (v.is_zero()) {
    if (it != terms_.end()) terms_.erase(it);
  } else {
    terms_[idx] = v;
  }
}

Form Form::operator+(const Form& o) const {
  if (o.is_zero() && o.degree_ == degree_) return *this;
  if (is_zero() && o.degree_ == degree_) return o;
  check_compatible(*this, o);
  if (o.degree_ != degree_) throw Error("adding forms of different degree");
  if (o.imaginary_ != imaginary_) throw Error("adding a real and an imaginary form");
  Form out = *this;
  for (const auto& [k, c] : o.terms_) out.accumulate(k, c);
  return out;
}

Form Form::operator-() const {
  Form out(chart_, degree_, basis_, imaginary_);
  for (const auto& [k, c] : terms_) out.accumulate(k, sym::mul({sym::num(-1), c}));
  return out;
}

Form Form::operator-(const Form& o) const { return *this + (-o); }

Form Form::scaled(const Expr& f) const {
  Form out(chart_, degree_, basis_, imaginary_);
  if (f.is_zero()) return out;
  for (const auto& [k, c] : terms_) out.accumulate(k, sym::mul({f, c}));
  return out;
}

Form Form::simplified(const sym::Context& ctx) const {
  Form out(chart_, degree_, basis_, imaginary_);
  for (const auto& [k, c] : terms_) {
    Expr v = sym::simplify(c, ctx);
    if (!v.is_zero()) out.terms_[k] = v;
  }
  return out;
}

Form wedge(const Form& a, const Form& b) {
  check_compatible(a, b);
  bool im = a.imaginary() != b.imaginary();
  Form out(a.chart(), a.degree() + b.degree(), a.basis(), im);
  if (out.degree() > static_cast<int>(a.chart()->dim())) return out;
  RawTerms acc;
  raw_wedge(a, b, acc);  // i*i = -1 handled there
  acc.into(out);
  return out;
}

Form d(const Form& a) {
  if (a.basis() != Basis::Coordinate) throw Error("exterior derivative needs the coordinate basis");
  Form out(a.chart(), a.degree() + 1, Basis::Coordinate, a.imaginary());
  const auto& ch = *a.chart();
  RawTerms acc;
  for (const auto& [k, c] : a.terms()) {
    for (std::size_t mu = 0; mu < ch.dim(); ++mu) {
      if (std::find(k.begin(), k.end(), static_cast<int>(mu)) != k.end()) continue;
      Expr dc = sym::diff_raw(c, ch.name(mu));
      if (dc.is_zero()) continue;
      std::vector<int> idx{static_cast<int>(mu)};
      idx.insert(idx.end(), k.begin(), k.end());
      acc.add(idx, dc);
    }
  }
  acc.into(out);
  return out;
}

bool same_form(const Form& a, const Form& b) {
  if (a.is_zero() && b.is_zero()) return true;
  if (a.degree() != b.degree() || a.imaginary() != b.imaginary()) return false;
  return (a - b).is_zero();
}

std::string to_string(const Form& f) {
  if (f.is_zero()) return "0";
  const auto& ch = *f.chart();
  std::string out;
  bool first = true;
  for (const auto& [k, c] : f.terms()) {
    std::string word;
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (i > 0) word += "^";
      word += f.basis() == Basis::Frame ? "e" + std::to_string(k[i]) : "d" + ch.name(static_cast<std::size_t>(k[i]));
    }
    std::string coef = sym::print(c, ch.context());
    bool negative = !coef.empty() && coef[0] == '-' && c.kind() != sym::Kind::Add;
    if (negative) coef = coef.substr(1);
    std::string term;
    if (word.empty()) {
      term = coef;
    } else if (coef == "1") {
      term = word;
    } else if (c.kind() == sym::Kind::Add) {
      term = "(" + coef + ")*" + word;
    } else {
      term = coef + "*" + word;
    }
    if (first) {
      out = (negative ? "-" : "") + term;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
    first = false;
  }
  if (f.imaginary()) out = "i*(" + out + ")";
  return out;
}

bool MatrixForm::is_zero() const {
  for (const auto& row : m) {
    for (const auto& f : row) {
      if (!f.is_zero()) return false;
    }
  }
  return true;
}

MatrixForm zero_matrix(ChartPtr chart, std::size_t n, int degree, Algebra algebra) {
  MatrixForm out;
  out.algebra = algebra;
  out.m.assign(n, std::vector<Form>(n, Form(std::move(chart), degree)));
  return out;
}

MatrixForm operator+(const MatrixForm& a, const MatrixForm& b) {
  MatrixForm out = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) out.m[i][j] = a.m[i][j] + b.m[i][j];
  }
  return out;
}

MatrixForm operator-(const MatrixForm& a, const MatrixForm& b) {
  MatrixForm out = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) out.m[i][j] = a.m[i][j] - b.m[i][j];
  }
  return out;
}

MatrixForm wedge(const MatrixForm& a, const MatrixForm& b) {
  std::size_t n = a.size();
  MatrixForm out = zero_matrix(a.m[0][0].chart(), n, a.degree() + b.degree(), a.algebra);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      RawTerms acc;
      bool im = false;
      for (std::size_t k = 0; k < n; ++k) {
        if (a.m[i][k].is_zero() || b.m[k][j].is_zero()) continue;
        raw_wedge(a.m[i][k], b.m[k][j], acc);
        im = a.m[i][k].imaginary() != b.m[k][j].imaginary();
      }
      Form f(a.m[0][0].chart(), a.degree() + b.degree(), a.m[0][0].basis(), im);
      if (f.degree() <= static_cast<int>(f.chart()->dim())) acc.into(f);
      out.m[i][j] = f;
    }
  }
  return out;
}

MatrixForm d(const MatrixForm& a) {
  MatrixForm out = a;
  for (auto& row : out.m) {
    for (auto& f : row) f = d(f);
  }
  return out;
}

MatrixForm left(const Matrix& l, const MatrixForm& a) {
  std::size_t n = a.size();
  MatrixForm out = zero_matrix(a.m[0][0].chart(), n, a.degree(), a.algebra);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Form acc(a.m[0][0].chart(), a.degree());
      for (std::size_t k = 0; k < n; ++k) {
        if (l[i][k].is_zero() || a.m[k][j].is_zero()) continue;
        acc = acc + a.m[k][j].scaled(l[i][k]);
      }
      out.m[i][j] = acc;
    }
  }
  return out;
}

MatrixForm right(const MatrixForm& a, const Matrix& r) {
  std::size_t n = a.size();
  MatrixForm out = zero_matrix(a.m[0][0].chart(), n, a.degree(), a.algebra);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Form acc(a.m[0][0].chart(), a.degree());
      for (std::size_t k = 0; k < n; ++k) {
        if (a.m[i][k].is_zero() || r[k][j].is_zero()) continue;
        acc = acc + a.m[i][k].scaled(r[k][j]);
      }
      out.m[i][j] = acc;
    }
  }
  return out;
}

MatrixForm d(ChartPtr chart, const Matrix& s) {
  std::size_t n = s.size();
  MatrixForm out = zero_matrix(chart, n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.m[i][j] = d(Form::scalar(chart, s[i][j]));
  }
  return out;
}

bool lowered_antisymmetric(const MatrixForm& w) {
  std::size_t n = w.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      Form s = w.m[a][b].scaled(sym::num(eta_sign(a))) + w.m[b][a].scaled(sym::num(eta_sign(b)));
      if (!s.is_zero()) return false;
    }
  }
  return true;
}

}  // namespace tq::ext
