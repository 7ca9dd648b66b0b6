#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "tq/bundle/bundle.hpp"
#include "tq/cartan/cartan.hpp"
#include "tq/sym/error.hpp"
#include "tq/sym/print.hpp"
#include "tq/sym/simplify.hpp"

using namespace tq;
using namespace tq::bundle;
using sym::parse;

namespace {

ext::ChartPtr polar_chart() {
  sym::Context c;
  c.coordinate("t").coordinate("r").coordinate("phi").coordinate("z");
  c.positive("r");
  ext::Coordinate r{"r", sym::num(0), {}, {}, {sym::num(0)}};
  ext::Coordinate phi{"phi", {}, {}, sym::mul({sym::num(2), sym::pi()}), {}};
  return ext::make_chart({{"t"}, r, phi, {"z"}}, c);
}

// monopole potential on the unit-radius-free sphere chart (t, r, theta, phi)
struct Mono {
  ext::ChartPtr chart;
  Form a1, a2;
};

Mono sphere_potentials() {
  sym::Context c;
  c.coordinate("t").coordinate("r").coordinate("theta").coordinate("phi");
  c.parameter("g").parameter("n").integer("n").positive("r").range("theta", sym::num(0), sym::pi());
  ext::Coordinate th{"theta", sym::num(0), sym::pi(), {}, {}};
  ext::Coordinate phi{"phi", {}, {}, sym::mul({sym::num(2), sym::pi()}), {}};
  ext::Coordinate r{"r", sym::num(0), {}, {}, {sym::num(0)}};
  auto ch = ext::make_chart({{"t"}, r, th, phi}, c);
  const auto& ctx = ch->context();
  Mono m{ch, Form::one(ch, {sym::num(0), sym::num(0), sym::num(0), parse("g/2*(1+cos(theta))", ctx)}).with_imaginary(true),
         Form::one(ch, {sym::num(0), sym::num(0), sym::num(0), parse("g/2*(cos(theta)-1)", ctx)}).with_imaginary(true)};
  return m;
}

}  // namespace

TEST_CASE("flat polar: origin is a chart exclusion, nothing else") {
  auto ch = polar_chart();
  ext::Coframe c(ch, test::diag(ch, {"1", "1", "r", "1"}));
  auto w = cartan::solve_connection(c);
  Patch p{"P", ch, {}, std::nullopt, w};
  auto R = cartan::riemann_components(cartan::curvature(w), c);
  auto loci = singular_loci(p, c, cartan::kretschmann(R, ch->context()));
  for (const auto& l : loci) CHECK(l.kind == LocusKind::Chart);
  REQUIRE(loci.size() == 1);
  CHECK(loci[0].locus.coordinate == "r");
  CHECK(loci[0].locus.value.is_zero());
  CHECK(connection_finite(p, c));
}

TEST_CASE("u(1) transitions on the sphere") {
  Mono m = sphere_potentials();
  const auto& ctx = m.chart->context();
  Patch u1{"U1", m.chart, {{"theta", sym::pi()}}, m.a1, std::nullopt};
  Patch u2{"U2", m.chart, {{"theta", sym::num(0)}}, m.a2, std::nullopt};
  // A1 - A2 = i g dphi, so A1 = A2 - i d(-g phi)
  Transition t = u1_transition(u1, u2);
  CHECK(sym::is_zero(t.g.chi + parse("g*phi", ctx), ctx));
  Transition back = u1_transition(u2, u1);
  CHECK(sym::is_zero(back.g.chi - parse("g*phi", ctx), ctx));
  CHECK(ext::same_form(gauge::gauge_transform_connection(m.a2, t.g, m.chart), m.a1));

  Transition same = u1_transition(u1, u1);
  CHECK(gauge::equal(same.g, gauge::identity(gauge::Group::U1), ctx));

  QuantizationCondition q = quantize(back, *m.chart, "phi");
  CHECK(q.to_string(ctx) == "g = n");
  CHECK_THROWS_AS(quantize(parse("g*phi^2", ctx), *m.chart, "phi"), UnsupportedError);
  CHECK_THROWS_AS(quantize(parse("g*t", ctx), *m.chart, "t"), Error);

  // not closed: theta-dependent dphi coefficient against a dtheta-free partner
  Patch bad{"B", m.chart, {}, Form::one(m.chart, {sym::num(0), parse("theta", ctx), sym::num(0), sym::num(0)}).with_imaginary(true),
            std::nullopt};
  CHECK_THROWS_AS(u1_transition(bad, u1), Error);

  Atlas atlas{{u1, u2}, {{{0, 1}, t}}};
  CHECK(check_atlas(atlas).consistent);
  atlas.transitions[{0, 1}].g.chi = parse("g*phi", ctx);
  CHECK_FALSE(check_atlas(atlas).consistent);
}

TEST_CASE("Chern data on the sphere") {
  Mono m = sphere_potentials();
  const auto& ctx = m.chart->context();
  Form f = cartan::curvature(m.a1);
  ChernForms cf = chern_form(f);
  // F = i dA/i... A1 = i g/2 (1+cos) dphi, F = dA = -i g/2 sin dtheta^dphi
  // c1 = (i/2pi) F = g/(4pi) sin dtheta^dphi
  Form hand(m.chart, 2);
  hand.accumulate({2, 3}, parse("g*sin(theta)/(4*pi)", ctx));
  CHECK(ext::same_form(cf.c1, hand));
  Rectangle sphere{"theta", sym::num(0), sym::pi(), "phi", sym::num(0), sym::mul({sym::num(2), sym::pi()})};
  ChernNumber k = chern_number(cf.c1, sphere);
  // hand: g/(4 pi) * 2 * 2 pi
  CHECK(sym::is_zero(k.value - parse("g", ctx), ctx));
  CHECK_FALSE(k.numeric);
  CHECK(k.orientation == "dtheta^dphi");

  ChernNumber z = chern_number(Form(m.chart, 2), sphere);
  CHECK(z.value.is_zero());
  CHECK(chern_form(Form(m.chart, 2).with_imaginary(true)).c1.is_zero());
}

TEST_CASE("antiderivatives against numeric quadrature") {
  sym::Context c;
  c.coordinate("x").positive("x");
  const char* cases[] = {"x^2", "1/x^2", "sin(x)", "cos(2*x)", "exp(3*x)", "1/x", "3*x^3-2/x", "sqrt(x)"};
  for (const char* s : cases) {
    Expr e = parse(s, c);
    Expr v = definite_integral(e, "x", sym::num(1), sym::num(2), c);
    // midpoint rule oracle
    double sum = 0;
    int n = 20000;
    for (int i = 0; i < n; ++i) sum += sym::eval_numeric(e, {{"x", 1 + (i + 0.5) / n}});
    CHECK(sym::eval_numeric(v, {}) == doctest::Approx(sum / n).epsilon(1e-7));
  }
  CHECK_THROWS_AS(antiderivative(parse("exp(x^2)", c), "x", c), UnsupportedError);
}

TEST_CASE("C-energy") {
  sym::Context c;
  c.parameter("gamma0").parameter("n");
  auto e1 = c_energy(sym::sym("gamma0"), 1, sym::sym("n"), c);
  auto e2 = c_energy(sym::sym("gamma0"), 2, sym::sym("n"), c);
  CHECK(sym::print(e1.quantized) == "-ln(n)");
  CHECK(sym::is_zero(e2.quantized - parse("1-n^2", c), c));
  auto f1 = c_energy(sym::num(0), 1, sym::num(1), c);
  auto f2 = c_energy(sym::num(0), 2, sym::num(1), c);
  CHECK(f1.value.is_zero());
  CHECK(f2.value.is_zero());
  CHECK(f1.quantized.is_zero());
  CHECK_THROWS_AS(c_energy(sym::sym("gamma0"), 1, sym::num(0), c), DomainError);
}
