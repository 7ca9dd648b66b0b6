#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "tq/ext/form.hpp"

namespace tq::gauge {

using ext::Form;
using ext::Matrix;
using ext::MatrixForm;
using sym::Expr;

enum class Group { SO13, U1 };

/// SO(1,3) matrix, or the u(1) phase exp(i*chi) stored by its real chi.
struct GroupElement {
  Group group = Group::U1;
  Matrix m;
  Expr chi = sym::num(0);

  static GroupElement so13(Matrix m) { return {Group::SO13, std::move(m), sym::num(0)}; }
  static GroupElement phase(Expr chi) { return {Group::U1, {}, std::move(chi)}; }
};

GroupElement identity(Group g);
/// SO(1,3): eta L^T eta. u(1): -chi.
GroupElement inverse(const GroupElement& g, const sym::Context& ctx);
/// a * b
GroupElement compose(const GroupElement& a, const GroupElement& b, const sym::Context& ctx);
bool equal(const GroupElement& a, const GroupElement& b, const sym::Context& ctx);
/// L^T eta L - eta == 0
bool verify_group_membership(const GroupElement& g, const sym::Context& ctx);
std::string to_string(const GroupElement& g, const sym::Context& ctx);

struct Generator {
  std::string name;
  Matrix m;
};

/// Rotation generator in the e1-e3 plane.
Generator t_phi();
/// Lowered grid eta T antisymmetric.
bool is_lorentz_generator(const Generator& t);

/// exp(theta T) in closed form: 1 + sin(theta) T + (1 - cos(theta)) T^2 when T^3 = -T,
/// 1 + sinh(theta) T + (cosh(theta) - 1) T^2 when T^3 = T. Anything else is unsupported.
GroupElement so13_exp(const Generator& t, const Expr& theta, const sym::Context& ctx);

/// w' = L w L^-1 + L d(L^-1)
MatrixForm gauge_transform_connection(const MatrixForm& w, const GroupElement& g, const ext::ChartPtr& chart);
/// A' = A - i dchi for an imaginary-tagged A.
Form gauge_transform_connection(const Form& a, const GroupElement& g, const ext::ChartPtr& chart);
/// Omega' = L Omega L^-1
MatrixForm gauge_transform_curvature(const MatrixForm& om, const GroupElement& g, const sym::Context& ctx);
/// u(1): F' = F
Form gauge_transform_curvature(const Form& f, const GroupElement& g);

/// Transition functions keyed by ordered patch pair (i, j).
using TransitionFamily = std::map<std::pair<int, int>, GroupElement>;

struct CocycleResult {
  bool pass = true;
  std::optional<std::tuple<int, int, int>> triple;  // first violating triple
  std::optional<std::pair<int, int>> pair;          // g_ji != g_ij^-1
  int checked = 0;
};

/// g_ij g_jk = g_ik on every triple where all three are known (directly or
/// through g_ji^-1), plus g_ji = g_ij^-1 for every pair given both ways.
CocycleResult cocycle_check(const TransitionFamily& family, const sym::Context& ctx);

}  // namespace tq::gauge
