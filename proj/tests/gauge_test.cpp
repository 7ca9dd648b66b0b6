#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "tq/cartan/cartan.hpp"
#include "tq/gauge/gauge.hpp"
#include "tq/sym/error.hpp"
#include "tq/sym/numeric.hpp"
#include "tq/sym/simplify.hpp"

using namespace tq;
using namespace tq::gauge;
using sym::parse;

namespace {

bool same(const Expr& a, const std::string& b, const sym::Context& ctx) {
  return sym::equivalent(a, parse(b, ctx), ctx).equal;
}

sym::Context theta_ctx() {
  sym::Context c;
  c.coordinate("x").parameter("th");
  return c;
}

}  // namespace

TEST_CASE("so13_exp closed form") {
  auto ctx = theta_ctx();
  auto t = t_phi();
  CHECK(is_lorentz_generator(t));
  CHECK(equal(so13_exp(t, sym::num(0), ctx), identity(Group::SO13), ctx));
  GroupElement l = so13_exp(t, parse("th", ctx), ctx);
  CHECK(same(l.m[1][1], "cos(th)", ctx));
  CHECK(same(l.m[1][3], "-sin(th)", ctx));
  CHECK(same(l.m[3][1], "sin(th)", ctx));
  CHECK(same(l.m[3][3], "cos(th)", ctx));
  CHECK(l.m[0][0] == sym::num(1));
  CHECK(l.m[2][2] == sym::num(1));
  CHECK(verify_group_membership(l, ctx));
  GroupElement back = compose(l, so13_exp(t, parse("-th", ctx), ctx), ctx);
  CHECK(equal(back, identity(Group::SO13), ctx));

  // 20-term power series at theta = pi/2
  double th = M_PI / 2;
  double term[4][4] = {}, sum[4][4] = {}, T[4][4] = {};
  T[1][3] = -1;
  T[3][1] = 1;
  for (int i = 0; i < 4; ++i) term[i][i] = sum[i][i] = 1;
  for (int k = 1; k < 20; ++k) {
    double nxt[4][4] = {};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int q = 0; q < 4; ++q) nxt[i][j] += term[i][q] * T[q][j] * th / k;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        term[i][j] = nxt[i][j];
        sum[i][j] += nxt[i][j];
      }
  }
  sym::NumBindings at{{"th", th}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(std::abs(sym::eval_numeric(l.m[i][j], at) - sum[i][j]) < 1e-12);
}

TEST_CASE("boost exponential and unsupported generators") {
  auto ctx = theta_ctx();
  Generator k{"K1", Matrix(4, std::vector<Expr>(4, sym::num(0)))};
  k.m[0][1] = sym::num(1);
  k.m[1][0] = sym::num(1);
  GroupElement b = so13_exp(k, parse("th", ctx), ctx);
  CHECK(verify_group_membership(b, ctx));
  CHECK(sym::equivalent(b.m[0][0], parse("(exp(th)+exp(-th))/2", ctx), ctx).equal);
  Generator mixed = k;
  mixed.m[1][3] = sym::num(-1);
  mixed.m[3][1] = sym::num(1);
  CHECK_THROWS_AS(so13_exp(mixed, parse("th", ctx), ctx), tq::UnsupportedError);
  Matrix d = ext::identity(4);
  d[0][0] = sym::num(2);
  CHECK_FALSE(verify_group_membership(GroupElement::so13(d), ctx));
  CHECK(verify_group_membership(identity(Group::SO13), ctx));
}

TEST_CASE("gauge transforms of the sphere connection") {
  auto c = test::sphere_block();
  const auto& ctx = c.chart()->context();
  auto w = cartan::solve_connection(c);
  auto om = cartan::curvature(w);
  GroupElement id = identity(Group::SO13);
  auto same_mf = [](const MatrixForm& a, const MatrixForm& b) { return (a - b).is_zero(); };
  CHECK(same_mf(gauge_transform_connection(w, id, c.chart()), w));
  CHECK(same_mf(gauge_transform_curvature(om, id, ctx), om));

  // rotation depending on the coordinates
  Generator t = t_phi();
  GroupElement l = so13_exp(t, parse("phi+theta^2", ctx), ctx);
  auto w2 = gauge_transform_connection(w, l, c.chart());
  CHECK(same_mf(cartan::curvature(w2), gauge_transform_curvature(om, l, ctx)));
  CHECK(same_mf(gauge_transform_connection(w2, inverse(l, ctx), c.chart()), w));
  CHECK(ext::lowered_antisymmetric(w2));

  // constant rotation: Omega^1_2 -> cos * Omega^1_2, Omega^3_2 -> sin * Omega^1_2
  GroupElement r = so13_exp(t, sym::num(1), ctx);
  auto om2 = gauge_transform_curvature(om, r, ctx);
  CHECK(same(om2(1, 2).component({1, 2}), "cos(1)*sin(theta)", ctx));
  CHECK(same(om2(3, 2).component({1, 2}), "sin(1)*sin(theta)", ctx));
}

TEST_CASE("Einstein-Rosen gauge fix reproduces the primed components") {
  sym::Context ctx0 = test::er_context();
  ctx0.parameter("gamma0");
  auto c = test::einstein_rosen(ctx0);
  const auto& ctx = c.chart()->context();
  auto w = cartan::solve_connection(c);
  GroupElement l = so13_exp(t_phi(), parse("exp(-gamma0)*phi", ctx), ctx);
  auto wp = gauge_transform_connection(w, l, c.chart());
  auto comp = [&](int a, int b, int mu) { return wp(a, b).component({mu}); };
  std::string ft = "cos(exp(-gamma0)*phi)", st = "sin(exp(-gamma0)*phi)";
  CHECK(same(comp(0, 1, 0), "(gamma'-psi')*" + ft, ctx));
  CHECK(same(comp(0, 3, 0), "(gamma'-psi')*" + st, ctx));
  CHECK(same(comp(0, 1, 1), "(gamma.-psi.)*" + ft, ctx));
  CHECK(same(comp(0, 3, 1), "(gamma.-psi.)*" + st, ctx));
  CHECK(same(comp(0, 2, 2), "psi.*exp(2*psi-gamma)", ctx));
  CHECK(same(comp(1, 2, 2), "-psi'*exp(2*psi-gamma)*" + ft, ctx));
  CHECK(same(comp(2, 3, 2), "psi'*exp(2*psi-gamma)*" + st, ctx));
  CHECK(same(comp(0, 1, 3), "rho*psi.*exp(-gamma)*" + st, ctx));
  CHECK(same(comp(0, 3, 3), "-rho*psi.*exp(-gamma)*" + ft, ctx));
  CHECK(same(comp(1, 3, 3), "exp(-gamma0)*(1-(1-rho*psi')*exp(gamma0-gamma))", ctx));
}

TEST_CASE("u(1) gauge transformation on Reissner-Nordstrom") {
  // outside the horizons, (r - rm)(r - rp) > 0
  sym::Context c1;
  c1.coordinate("t").coordinate("r").coordinate("theta").coordinate("phi");
  c1.parameter("e").parameter("rm").parameter("rp").positive("rm").positive("rp").positive("r");
  c1.generic_nonzero(true);
  auto ch1 = ext::make_chart({{"t"}, {"r"}, {"theta"}, {"phi"}}, c1);
  const auto& k1 = ch1->context();
  ext::Coframe cf(ch1, test::diag(ch1, {"sqrt((r-rm)*(r-rp))/r", "r/sqrt((r-rm)*(r-rp))", "r", "r*sin(theta)"}));
  Form a = Form::dx(ch1, "t").scaled(parse("e/r", k1)).with_imaginary(true);
  Form af = ext::to_frame_basis(a, cf);
  CHECK(same(af.component({0}), "e/sqrt((r-rm)*(r-rp))", k1));
  GroupElement g1 = GroupElement::phase(parse("e*t/rm", k1));
  Form a1 = ext::to_frame_basis(gauge_transform_connection(a, g1, ch1), cf);
  CHECK(a1.imaginary());
  CHECK(same(a1.component({0}), "-(e/rm)*sqrt((r-rm)/(r-rp))", k1));
  GroupElement g2 = GroupElement::phase(parse("e*t/rp", k1));
  Form a2 = ext::to_frame_basis(gauge_transform_connection(a, g2, ch1), cf);
  CHECK(same(a2.component({0}), "-(e/rp)*sqrt((r-rp)/(r-rm))", k1));
  // field strength unchanged
  CHECK(same_form(cartan::curvature(gauge_transform_connection(a, g1, ch1)), cartan::curvature(a)));
  CHECK(same_form(gauge_transform_curvature(cartan::curvature(a), g1), cartan::curvature(a)));
}

TEST_CASE("cocycle checks") {
  sym::Context ctx;
  ctx.coordinate("x").coordinate("y").parameter("eps");
  TransitionFamily two;
  two[{1, 2}] = GroupElement::phase(parse("x", ctx));
  two[{2, 1}] = GroupElement::phase(parse("-x", ctx));
  CHECK(cocycle_check(two, ctx).pass);

  TransitionFamily three;
  three[{1, 2}] = GroupElement::phase(parse("x", ctx));
  three[{2, 3}] = GroupElement::phase(parse("y^2", ctx));
  three[{1, 3}] = GroupElement::phase(parse("x+y^2", ctx));
  auto ok = cocycle_check(three, ctx);
  CHECK(ok.pass);
  CHECK(ok.checked == 1);
  three[{2, 3}] = GroupElement::phase(parse("y^2+eps", ctx));
  auto bad = cocycle_check(three, ctx);
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.triple.has_value());
  CHECK(*bad.triple == std::make_tuple(1, 2, 3));
}
