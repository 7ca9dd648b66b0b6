#pragma once

#include <vector>

#include "tq/ext/form.hpp"

namespace tq::ext {

/// Orthonormal coframe e^a = E^a_mu dx^mu, signature (+,-,-,-).
class Coframe {
 public:
  /// rows[a][mu] = E^a_mu
  Coframe(ChartPtr chart, Matrix rows);
  static Coframe from_forms(const std::vector<Form>& e);

  const ChartPtr& chart() const { return chart_; }
  std::size_t size() const { return e_.size(); }
  const Matrix& matrix() const { return rows_; }
  /// inv[mu][a], with dx^mu = inv[mu][a] e^a. Throws DomainError when singular.
  const Matrix& inverse() const { return inv_; }
  /// e^a as a coordinate-basis form.
  const Form& operator[](std::size_t a) const { return e_[a]; }
  const std::vector<Form>& forms() const { return e_; }

 private:
  ChartPtr chart_;
  Matrix rows_;
  Matrix inv_;
  std::vector<Form> e_;
};

Form to_frame_basis(const Form& a, const Coframe& c);
Form from_frame_basis(const Form& a, const Coframe& c);

/// g_{mu nu} = eta_ab E^a_mu E^b_nu
Matrix metric_from_coframe(const Coframe& c);

}  // namespace tq::ext
