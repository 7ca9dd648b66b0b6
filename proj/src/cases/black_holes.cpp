#include "tq/cases/cases.hpp"
#include "tq/sym/calculus.hpp"
#include "tq/sym/error.hpp"
#include "tq/sym/parse.hpp"
#include "tq/sym/print.hpp"
#include "tq/sym/simplify.hpp"

namespace tq::cases {

namespace {

using sym::parse;

Expr two_pi() { return sym::mul({sym::num(2), sym::pi()}); }

std::vector<ext::Coordinate> bh_coords() {
  // inside the horizons t is an angle coordinate of period 2 pi
  ext::Coordinate t{"t", sym::num(0), two_pi(), two_pi(), {}};
  ext::Coordinate r{"r", sym::num(0), {}, {}, {sym::num(0)}};
  ext::Coordinate th{"theta", sym::num(0), sym::pi(), {}, {}};
  ext::Coordinate ph{"phi", {}, {}, two_pi(), {}};
  return {t, r, th, ph};
}

ext::Matrix diag(const ext::ChartPtr& ch, const std::vector<std::string>& d) {
  ext::Matrix m(4, std::vector<Expr>(4, sym::num(0)));
  for (std::size_t i = 0; i < 4; ++i) m[i][i] = parse(d[i], ch->context());
  return m;
}

}  // namespace

RnCase reissner_nordstrom(const std::optional<Expr>& m_in, const std::optional<Expr>& e_in) {
  sym::Context c;
  c.coordinate("t").coordinate("r").coordinate("theta").coordinate("phi");
  c.parameter("m").parameter("e").parameter("n").integer("n");
  c.positive("m").positive("r").range("theta", sym::num(0), sym::pi());
  Expr m = m_in ? *m_in : sym::sym("m");
  Expr e = e_in ? *e_in : sym::sym("e");
  if (sym::simplify(e, c).is_zero()) {
    throw Error("Reissner-Nordstrom with e = 0: the u(1) connection does not exist, no quantization");
  }
  if (!e_in) c.nonzero(sym::sym("e"), "e!=0");
  Expr s = sym::sqrt(sym::add({sym::pow(m, 2), sym::mul({sym::num(-1), sym::pow(e, 2)})}));
  c.define("rm", sym::add({m, sym::mul({sym::num(-1), s})}));
  c.define("rp", sym::add({m, s}));
  c.positive("rm").positive("rp");
  c.generic_nonzero(true);

  RnCase out;
  out.chart = ext::make_chart(bh_coords(), c);
  const auto& ctx = out.chart->context();
  out.coframe = std::make_shared<Coframe>(
      out.chart, diag(out.chart, {"sqrt((r-rm)*(r-rp))/r", "r/sqrt((r-rm)*(r-rp))", "r", "r*sin(theta)"}));

  // checks that need a real coframe are probed outside the outer horizon
  sym::Context outside = ctx;
  outside.range("r", sym::sym("rp"), std::nullopt, "r>rp");

  out.potential = Form::one(out.chart, {sym::mul({e, sym::pow(sym::sym("r"), -1)}), sym::num(0), sym::num(0), sym::num(0)})
                      .with_imaginary(true);
  out.a_frame = ext::to_frame_basis(out.potential, *out.coframe);
  out.checks.push_back(compare("A e0", out.a_frame.component({0}), sym::mul({e, parse("((r-rm)*(r-rp))^(-1/2)", ctx)}), outside));

  gauge::GroupElement g1 = gauge::GroupElement::phase(sym::mul({e, parse("t/rm", ctx)}));
  gauge::GroupElement g2 = gauge::GroupElement::phase(sym::mul({e, parse("t/rp", ctx)}));
  Form a1 = gauge::gauge_transform_connection(out.potential, g1, out.chart);
  Form a2 = gauge::gauge_transform_connection(out.potential, g2, out.chart);
  out.a1_frame = ext::to_frame_basis(a1, *out.coframe);
  out.a2_frame = ext::to_frame_basis(a2, *out.coframe);
  out.checks.push_back(compare("A1 e0", out.a1_frame.component({0}), sym::mul({sym::num(-1), e, parse("1/rm*((r-rm)/(r-rp))^(1/2)", ctx)}), outside));
  out.checks.push_back(compare("A2 e0", out.a2_frame.component({0}), sym::mul({sym::num(-1), e, parse("1/rp*((r-rp)/(r-rm))^(1/2)", ctx)}), outside));

  sym::Context in1 = ctx, in2 = ctx;
  in1.range("r", sym::num(0), sym::sym("rp"), "0<r<rp");
  in2.range("r", sym::sym("rm"), std::nullopt, "r>rm");
  bundle::Patch u1{"U1", ext::with_context(out.chart, in1), {{"r", sym::sym("rp")}}, a1, std::nullopt};
  bundle::Patch u2{"U2", ext::with_context(out.chart, in2), {{"r", sym::sym("rm")}}, a2, std::nullopt};
  out.atlas.patches = {u1, u2};
  bundle::Transition g12 = bundle::u1_transition(u1, u2, "rm<r<rp");
  out.atlas.transitions[{0, 1}] = g12;
  out.checks.push_back(compare("g12 phase", g12.g.chi, sym::mul({e, parse("(1/rm-1/rp)*t", ctx)}), ctx, "g12 = exp(i*e*(1/rm-1/rp)*t)"));
  out.condition = bundle::quantize(g12, *out.chart, "t");
  Expr printed = sym::mul({sym::num(2), s, sym::pow(e, -1)});
  out.checks.push_back({"condition", out.condition.to_string(ctx), sym::print(sym::simplify(printed, ctx), ctx) + " = n",
                        out.condition.lhs == sym::simplify(printed, ctx), "exact normal-form equality"});
  if (!m_in && !e_in) {
    auto forced = bundle::forced_value(out.condition, {{"e", sym::sym("m")}}, ctx);
    out.checks.push_back({"extreme e = m", forced ? "n = " + forced->get_str() : "undetermined", "n = 0", forced && *forced == 0, ""});
  }

  Form f = cartan::curvature(out.potential);
  Expr inv = cartan::field_invariant(f, *out.coframe);
  bundle::Patch whole{"M", out.chart, {}, out.potential, std::nullopt};
  out.loci = bundle::singular_loci(whole, *out.coframe, inv);

  out.chern_forms = bundle::chern_form(f);
  Form expect(out.chart, 2);
  expect.accumulate({0, 1}, sym::mul({sym::num(-1), e, parse("r^(-2)", ctx)}));
  out.checks.push_back({"Chern form (unnormalized)", ext::to_string(out.chern_forms.unnormalized), ext::to_string(expect),
                        ext::same_form(out.chern_forms.unnormalized, expect), "i*F"});
  out.chern = bundle::chern_number(out.chern_forms.c1, {"t", sym::num(0), two_pi(), "r", sym::sym("rm"), sym::sym("rp")},
                                   out.condition);

  cartan::Geometry geo = cartan::geometry(*out.coframe);
  out.field = cartan::verify_field_equations(geo, *out.coframe, cartan::em_stress_energy(f, *out.coframe));
  out.kretschmann = cartan::kretschmann(geo.riemann, ctx);
  return out;
}

KnCase kerr_newman() {
  sym::Context c;
  c.coordinate("t").coordinate("r").coordinate("theta").coordinate("phi");
  c.parameter("m").parameter("a").parameter("e").parameter("n").integer("n");
  c.positive("m").positive("r").positive("a").range("theta", sym::num(0), sym::pi());
  c.nonzero(sym::sym("e"), "e!=0");
  c.define("rm", parse("m-sqrt(m^2-a^2-e^2)", c));
  c.define("rp", parse("m+sqrt(m^2-a^2-e^2)", c));
  c.generic_nonzero(true);
  KnCase out;
  out.chart = ext::make_chart(bh_coords(), c);
  const auto& ctx = out.chart->context();

  // Boyer-Lindquist potential A = i e r / Sigma (dt - a sin^2 dphi), Sigma = r^2 + a^2 cos^2
  Expr sigma = parse("r^2+a^2*cos(theta)^2", ctx);
  Expr at = sym::simplify(sym::mul({parse("e*r", ctx), sym::pow(sigma, -1)}), ctx);
  Expr aphi = sym::simplify(sym::mul({parse("-e*r*a*sin(theta)^2", ctx), sym::pow(sigma, -1)}), ctx);
  Form pot = Form::one(out.chart, {at, sym::num(0), sym::num(0), aphi}).with_imaginary(true);

  // electric potential on a horizon co-rotating with Omega = a/(r^2+a^2)
  Expr omega_h = parse("a/(r^2+a^2)", ctx);
  Expr phi_h = sym::simplify(sym::add({at, sym::mul({omega_h, aphi})}), ctx);
  out.checks.push_back(compare("horizon potential", phi_h, parse("e*r/(r^2+a^2)", ctx), ctx, "theta-independent"));
  auto at_r = [&](const char* r) { return sym::substitute(phi_h, {{"r", sym::sym(r)}}, ctx); };

  Form a1 = gauge::gauge_transform_connection(pot, gauge::GroupElement::phase(sym::mul({at_r("rm"), sym::sym("t")})), out.chart);
  Form a2 = gauge::gauge_transform_connection(pot, gauge::GroupElement::phase(sym::mul({at_r("rp"), sym::sym("t")})), out.chart);
  sym::Context in1 = ctx, in2 = ctx;
  in1.range("r", sym::num(0), sym::sym("rp"));
  in2.range("r", sym::sym("rm"), std::nullopt);
  bundle::Patch u1{"U1", ext::with_context(out.chart, in1), {{"r", sym::sym("rp")}}, a1, std::nullopt};
  bundle::Patch u2{"U2", ext::with_context(out.chart, in2), {{"r", sym::sym("rm")}}, a2, std::nullopt};
  bundle::Transition g12 = bundle::u1_transition(u1, u2, "rm<r<rp");
  bundle::QuantizationCondition q = bundle::quantize(g12, *out.chart, "t");
  out.derived = q.lhs;
  out.printed = parse("2*e^3*sqrt(m^2-a^2-e^2)/(e^4+4*a^2*m^2)", ctx);
  auto eq = sym::equivalent(out.derived, out.printed, ctx);
  out.agree = eq.equal;
  out.agree_symbolic = eq.symbolic;
  out.checks.push_back({"derived vs printed coefficient", sym::print(out.derived, ctx), sym::print(out.printed, ctx), true,
                        std::string(out.agree ? "agree" : "differ") + (out.agree_symbolic ? " (symbolic)" : " (numeric)")});

  sym::Bindings a0{{"a", sym::num(0)}};
  Expr rn = parse("2*sqrt(m^2-e^2)/e", ctx);
  out.checks.push_back(compare("derived at a=0", sym::substitute(out.derived, a0, ctx), rn, ctx));
  out.checks.push_back(compare("printed at a=0", sym::substitute(out.printed, a0, ctx), rn, ctx));
  sym::Bindings extreme{{"m", parse("sqrt(a^2+e^2)", ctx)}};
  Expr px = sym::substitute(out.printed, extreme, ctx), dx = sym::substitute(out.derived, extreme, ctx);
  out.checks.push_back({"extreme m^2 = a^2+e^2 (printed)", sym::print(px, ctx) + " = n", "0 = n", px.is_zero(), ""});
  out.checks.push_back({"extreme m^2 = a^2+e^2 (derived)", sym::print(dx, ctx) + " = n", "0 = n", dx.is_zero(), ""});
  return out;
}

}  // namespace tq::cases
