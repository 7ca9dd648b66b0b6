#include "tq/cases/cases.hpp"
#include "tq/sym/error.hpp"
#include "tq/sym/parse.hpp"
#include "tq/sym/print.hpp"
#include "tq/sym/simplify.hpp"

namespace tq::cases {

namespace {

using sym::parse;

sym::Context base() {
  sym::Context c;
  c.coordinate("t").coordinate("r").coordinate("theta").coordinate("phi");
  c.parameter("m").parameter("g").parameter("n");
  c.positive("r").range("theta", sym::num(0), sym::pi());
  c.integer("n");
  return c;
}

std::vector<ext::Coordinate> coords() {
  ext::Coordinate r{"r", sym::num(0), {}, {}, {sym::num(0)}};
  ext::Coordinate th{"theta", sym::num(0), sym::pi(), {}, {}};
  ext::Coordinate ph{"phi", {}, {}, sym::mul({sym::num(2), sym::pi()}), {}};
  return {{"t"}, r, th, ph};
}

ext::Matrix rows(const ext::ChartPtr& ch, const std::vector<std::vector<std::string>>& txt) {
  ext::Matrix m;
  for (const auto& row : txt) {
    std::vector<Expr> r;
    for (const auto& s : row) r.push_back(parse(s, ch->context()));
    m.push_back(r);
  }
  return m;
}

// flat spherical metric diag(1, -1, -r^2, -r^2 sin^2) and sqrt|g| = r^2 sin(theta)
const char* kFlat[] = {"1", "-1", "-r^2", "-r^2*sin(theta)^2"};

}  // namespace

MonopoleCase weak_field_monopole() {
  MonopoleCase out;
  sym::Context lin = base();
  lin.tag("m").tag("g").linearized(true);
  out.chart = ext::make_chart(coords(), lin);
  out.exact_chart = ext::make_chart(coords(), base());
  const auto& lctx = out.chart->context();
  const auto& ctx = out.exact_chart->context();

  // Phi = m/r, chi = 2 g (1 + cos(theta)) so that A~ = -(1/4)(4 Phi, chi) gives A below
  const std::string phi = "(m/r)", chi = "(2*g*(1+cos(theta)))";
  out.coframe = std::make_shared<Coframe>(out.chart, rows(out.chart, {{"1-" + phi, "0", "0", "-" + chi},
                                                                     {"0", "1+" + phi, "0", "0"},
                                                                     {"0", "0", "(1+" + phi + ")*r", "0"},
                                                                     {"0", "0", "0", "(1+" + phi + ")*r*sin(theta)"}}));
  ext::Matrix gm = ext::metric_from_coframe(*out.coframe);
  out.checks.push_back(compare("g_tt", gm[0][0], parse("1-2*" + phi, lctx), lctx));
  out.checks.push_back(compare("g_tphi", gm[0][3], parse("-" + chi, lctx), lctx, "first order"));
  out.checks.push_back(compare("g_rr", gm[1][1], parse("-(1+2*" + phi + ")", lctx), lctx));

  std::vector<Expr> acoef{parse(phi, ctx), sym::num(0), sym::num(0), parse("g/2*(1+cos(theta))", ctx)};
  Form a_lin = Form::one(out.chart, acoef).with_imaginary(true);
  Form a_ex = Form::one(out.exact_chart, acoef).with_imaginary(true);
  out.a1_frame = ext::to_frame_basis(a_lin, *out.coframe);
  gauge::GroupElement gam = gauge::GroupElement::phase(parse("g*phi", ctx));
  out.a2_frame = ext::to_frame_basis(gauge::gauge_transform_connection(a_lin, gam, out.chart), *out.coframe);
  out.checks.push_back(compare("A1 e0", out.a1_frame.component({0}), parse(phi, lctx), lctx));
  out.checks.push_back(compare("A1 e3", out.a1_frame.component({3}), parse("g/2*(1+cos(theta))/(r*sin(theta))", lctx), lctx));
  out.checks.push_back(compare("A2 e3", out.a2_frame.component({3}), parse("g/2*(-1+cos(theta))/(r*sin(theta))", lctx), lctx));
  out.checks.push_back({"A1, A2 imaginary", "i*(...)", "i*(...)", out.a1_frame.imaginary() && out.a2_frame.imaginary(), ""});

  // Laplace equation for Phi and source-free Maxwell equations for A~ on the flat background
  Expr P = parse(phi, ctx);
  Expr lap = parse("0", ctx);
  {
    Expr dr = sym::differentiate(P, "r", ctx), dth = sym::differentiate(P, "theta", ctx);
    lap = sym::simplify(sym::add({sym::mul({sym::pow(sym::sym("r"), -2), sym::diff_raw(sym::mul({sym::pow(sym::sym("r"), 2), dr}), "r")}),
                                  sym::mul({parse("1/(r^2*sin(theta))", ctx), sym::diff_raw(sym::mul({sym::sin(sym::sym("theta")), dth}), "theta")})}),
                        ctx);
  }
  out.checks.push_back(compare("Laplace(Phi)", lap, sym::num(0), ctx));
  Form f_real = ext::d(a_ex).with_imaginary(false);
  Expr sqrtg = parse("r^2*sin(theta)", ctx);
  bool maxwell = true;
  for (int mu = 0; mu < 4; ++mu) {
    std::vector<Expr> terms;
    for (int nu = 0; nu < 4; ++nu) {
      // F^{mu nu} = g^mumu g^nunu F_{mu nu}
      Expr up = sym::mul({sym::pow(parse(kFlat[mu], ctx), -1), sym::pow(parse(kFlat[nu], ctx), -1), f_real.component({mu, nu})});
      terms.push_back(sym::diff_raw(sym::mul({sqrtg, up}), out.exact_chart->name(static_cast<std::size_t>(nu))));
    }
    maxwell = maxwell && sym::is_zero(sym::add(terms), ctx);
  }
  out.checks.push_back({"flat Maxwell equations for A~", maxwell ? "0" : "nonzero", "0", maxwell, "away from r=0 and the axis"});
  auto lin_field = cartan::verify_field_equations(*out.coframe, cartan::vacuum());
  out.checks.push_back({"linearized vacuum field equations", lin_field.pass ? "G=0" : lin_field.failing, "G=0", lin_field.pass,
                        "first order in m, g"});

  // patches
  bundle::Patch u1{"U1", ext::with_context(out.exact_chart, ctx), {{"theta", sym::num(0)}}, a_ex, std::nullopt};
  bundle::Patch u2{"U2", ext::with_context(out.exact_chart, ctx), {{"theta", sym::pi()}},
                   gauge::gauge_transform_connection(a_ex, gam, out.exact_chart), std::nullopt};
  out.atlas.patches = {u1, u2};
  // g12 carries A1 into A2
  out.g12 = bundle::u1_transition(u2, u1, "U1 n U2");
  out.atlas.transitions[{1, 0}] = out.g12;
  out.checks.push_back(compare("g12 phase", out.g12.g.chi, parse("g*phi", ctx), ctx, "g12 = exp(i*g*phi)"));
  out.condition = bundle::quantize(out.g12, *out.exact_chart, "phi");
  out.checks.push_back({"condition", out.condition.to_string(ctx), "g = n", out.condition.to_string(ctx) == "g = n", ""});

  ext::Coframe flat(out.exact_chart, rows(out.exact_chart, {{"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "r", "0"}, {"0", "0", "0", "r*sin(theta)"}}));
  Form f = cartan::curvature(a_ex);
  Expr inv = cartan::field_invariant(f, flat);
  out.loci1 = bundle::singular_loci(u1, flat, inv);
  out.loci2 = bundle::singular_loci(u2, flat, inv);

  // Chern number over a sphere r = const
  Form sphere(out.exact_chart, 2);
  sphere.accumulate({2, 3}, f.component({2, 3}));
  sphere = sphere.with_imaginary(true);
  bundle::ChernForms cf = bundle::chern_form(sphere);
  out.chern = bundle::chern_number(cf.c1, {"theta", sym::num(0), sym::pi(), "phi", sym::num(0), sym::mul({sym::num(2), sym::pi()})},
                                   out.condition);
  return out;
}

}  // namespace tq::cases
