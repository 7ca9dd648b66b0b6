#pragma once

#include <map>
#include <string>
#include <vector>

#include "tq/ext/chart.hpp"
#include "tq/ext/matrix.hpp"

namespace tq::ext {

/// Which 1-forms the index tuples refer to: coordinate differentials dx^mu
/// or the frame e^a of some coframe.
enum class Basis { Coordinate, Frame };

/// Antisymmetric p-form on a chart. Only strictly increasing index tuples
/// are stored and every coefficient is in normal form. `imaginary` marks a
/// u(1)-valued form i*(real form); the coefficients stay real.
class Form {
 public:
  Form() = default;
  Form(ChartPtr chart, int degree, Basis basis = Basis::Coordinate, bool imaginary = false);

  static Form scalar(ChartPtr chart, const Expr& f);
  static Form dx(ChartPtr chart, const std::string& coordinate);
  /// sum_i c[i] * (dx^i or e^i)
  static Form one(ChartPtr chart, const std::vector<Expr>& c, Basis basis = Basis::Coordinate);

  const ChartPtr& chart() const { return chart_; }
  int degree() const { return degree_; }
  Basis basis() const { return basis_; }
  bool imaginary() const { return imaginary_; }
  Form with_imaginary(bool on) const;
  Form in_basis_tag(Basis b) const;

  const std::map<std::vector<int>, Expr>& terms() const { return terms_; }
  /// Coefficient on the given (not necessarily sorted) index tuple.
  Expr component(std::vector<int> idx) const;
  /// Adds c to the component on `idx` (any order; sign handled).
  void accumulate(std::vector<int> idx, const Expr& c);
  bool is_zero() const { return terms_.empty(); }

  Form operator+(const Form& o) const;
  Form operator-(const Form& o) const;
  Form operator-() const;
  Form scaled(const Expr& f) const;
  /// Re-simplifies all coefficients under `ctx`.
  Form simplified(const sym::Context& ctx) const;
  /// Applies f to every coefficient (result re-simplified).
  template <class F>
  Form map(F f) const {
    Form out(chart_, degree_, basis_, imaginary_);
    for (const auto& [k, c] : terms_) out.accumulate(k, f(c));
    return out;
  }

 private:
  ChartPtr chart_;
  int degree_ = 0;
  Basis basis_ = Basis::Coordinate;
  bool imaginary_ = false;
  std::map<std::vector<int>, Expr> terms_;
};

Form wedge(const Form& a, const Form& b);
/// Exterior derivative (coordinate basis only).
Form d(const Form& a);
bool same_form(const Form& a, const Form& b);

/// "2*r*sin(theta)*dr + r^2*cos(theta)*dtheta"; frame basis prints e0..e3.
std::string to_string(const Form& f);

enum class Algebra { So13, U1, General };

/// n x n grid of forms of a common degree.
struct MatrixForm {
  std::vector<std::vector<Form>> m;
  Algebra algebra = Algebra::General;

  std::size_t size() const { return m.size(); }
  const Form& operator()(std::size_t i, std::size_t j) const { return m[i][j]; }
  Form& operator()(std::size_t i, std::size_t j) { return m[i][j]; }
  int degree() const { return m.empty() ? 0 : m[0][0].degree(); }
  bool is_zero() const;
};

MatrixForm zero_matrix(ChartPtr chart, std::size_t n, int degree, Algebra algebra = Algebra::General);
MatrixForm operator+(const MatrixForm& a, const MatrixForm& b);
MatrixForm operator-(const MatrixForm& a, const MatrixForm& b);
/// (A ^ B)_ij = sum_k A_ik ^ B_kj
MatrixForm wedge(const MatrixForm& a, const MatrixForm& b);
MatrixForm d(const MatrixForm& a);
/// L * A and A * R with scalar matrices.
MatrixForm left(const Matrix& l, const MatrixForm& a);
MatrixForm right(const MatrixForm& a, const Matrix& r);
/// Elementwise d of a scalar matrix.
MatrixForm d(ChartPtr chart, const Matrix& s);
/// eta_aa w^a_b + eta_bb w^b_a == 0 for all a, b.
bool lowered_antisymmetric(const MatrixForm& w);

}  // namespace tq::ext
