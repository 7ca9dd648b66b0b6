#include "tq/cases/cases.hpp"
#include "tq/sym/error.hpp"
#include "tq/sym/parse.hpp"
#include "tq/sym/print.hpp"
#include "tq/sym/series.hpp"
#include "tq/sym/simplify.hpp"

namespace tq::cases {

namespace {

using sym::parse;

sym::Context er_base() {
  sym::Context c;
  c.coordinate("t").coordinate("rho").coordinate("z").coordinate("phi");
  c.positive("rho");
  c.function("psi", {"t", "rho"}).function("gamma", {"t", "rho"});
  c.parameter("gamma0").parameter("psi0").parameter("n");
  c.integer("n").positive("n");
  return c;
}

ext::ChartPtr er_chart(const sym::Context& c) {
  ext::Coordinate rho{"rho", sym::num(0), {}, {}, {}};
  ext::Coordinate phi{"phi", {}, {}, sym::mul({sym::num(2), sym::pi()}), {}};
  return ext::make_chart({{"t"}, rho, {"z"}, phi}, c);
}

std::shared_ptr<Coframe> er_coframe(const ext::ChartPtr& ch, const sym::Bindings& fns) {
  const auto& ctx = ch->context();
  ext::Matrix m(4, std::vector<Expr>(4, sym::num(0)));
  const char* d[] = {"exp(gamma-psi)", "exp(gamma-psi)", "exp(psi)", "rho*exp(-psi)"};
  for (int i = 0; i < 4; ++i) {
    Expr v = parse(d[i], ctx);
    m[i][i] = fns.empty() ? v : sym::substitute(v, fns, ctx);
  }
  return std::make_shared<Coframe>(ch, m);
}

sym::Bindings closed_forms(const ErFamily& f) {
  sym::Bindings b;
  if (f.psi) b["psi"] = *f.psi;
  if (f.gamma) b["gamma"] = *f.gamma;
  return b;
}

Expr marker(const sym::Context& c, const std::string& fn, int dt, int drho) { return c.function_node(fn, {dt, drho}); }

}  // namespace

ErFamily er_generic() { return {"generic", er_base(), std::nullopt, std::nullopt}; }

ErFamily er_levi_civita() {
  sym::Context c = er_base();
  c.parameter("a");
  return {"levi-civita", c, parse("a*ln(rho)", c), parse("a^2*ln(rho)", c)};
}

ErFamily er_flat() { return {"flat", er_base(), sym::num(0), sym::num(0)}; }

ErFamily er_axis_series() {
  sym::Context c = er_base();
  c.parameter("c");
  c.series("psi", parse("psi0+c*rho^3", c));
  c.series("gamma", parse("gamma0+3/2*c^2*rho^6", c));
  return {"axis-series", c, std::nullopt, std::nullopt};
}

EinsteinRosenCase einstein_rosen(const ErFamily& family) {
  EinsteinRosenCase out;
  out.family = family;
  out.chart = er_chart(family.ctx);
  const auto& ctx = out.chart->context();
  sym::Bindings fns = closed_forms(family);
  out.coframe = er_coframe(out.chart, fns);
  cartan::Geometry g = cartan::geometry(*out.coframe);
  out.omega = g.omega;
  auto comp = [&](int a, int b, int mu) { return out.omega(a, b).component({mu}); };
  if (fns.empty()) {
    // coordinates: t=0, rho=1, z=2, phi=3
    struct Row {
      const char* name;
      int a, b, mu;
      const char* printed;
    };
    const Row rows[] = {
        {"w^0_1 t", 0, 1, 0, "gamma'-psi'"},
        {"w^0_1 rho", 0, 1, 1, "gamma.-psi."},
        {"w^0_2 z", 0, 2, 2, "psi.*exp(2*psi-gamma)"},
        {"w^1_2 z", 1, 2, 2, "-psi'*exp(2*psi-gamma)"},
        {"w^0_3 phi", 0, 3, 3, "-rho*psi.*exp(-gamma)"},
        {"w^1_3 phi", 1, 3, 3, "-(1-rho*psi')*exp(-gamma)"},
    };
    for (const auto& r : rows) out.checks.push_back(compare(r.name, comp(r.a, r.b, r.mu), parse(r.printed, ctx), ctx));
    // nothing else besides the lowered partners
    int families = 0;
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) {
        if (!out.omega(a, b).is_zero()) ++families;
      }
    }
    Check fam{"nonzero component families", std::to_string(families), "5 pairs (6 components)", families == 5, ""};
    out.checks.push_back(fam);
    cartan::Constraints k;
    k.markers.push_back({marker(ctx, "gamma", 0, 1), parse("rho*(psi.^2+psi'^2)", ctx)});
    k.markers.push_back({marker(ctx, "gamma", 1, 0), parse("2*rho*psi.*psi'", ctx)});
    k.markers.push_back({marker(ctx, "psi", 0, 2), parse("psi..-psi'/rho", ctx)});
    out.field = cartan::verify_field_equations(g, *out.coframe, cartan::vacuum(), k);
  } else {
    out.field = cartan::verify_field_equations(g, *out.coframe, cartan::vacuum());
  }
  if (family.name == "flat") {
    out.checks.push_back(compare("w^1_3 phi", comp(1, 3, 3), sym::num(-1), ctx, "Minkowski in cylindrical coordinates"));
  }
  return out;
}

AxisReport er_axis_regularity(const ErFamily& family) {
  AxisReport out;
  const sym::Context& ctx = family.ctx;
  Expr psi, gamma;
  if (family.psi && family.gamma) {
    psi = *family.psi;
    gamma = *family.gamma;
  } else {
    const auto* sp = ctx.find_series("psi");
    const auto* sg = ctx.find_series("gamma");
    if (sp == nullptr || sg == nullptr) throw Error("axis analysis needs series data for psi and gamma at rho = 0");
    psi = sp->expansion;
    gamma = sg->expansion;
  }
  struct M {
    const char* name;
    Expr e;
  };
  const M ms[] = {{"gamma.", sym::differentiate(gamma, "t", ctx)},
                  {"gamma'", sym::differentiate(gamma, "rho", ctx)},
                  {"psi.", sym::differentiate(psi, "t", ctx)},
                  {"psi'", sym::differentiate(psi, "rho", ctx)}};
  out.regular = true;
  for (const auto& m : ms) {
    std::string value;
    try {
      if (m.e.is_zero()) {
        value = "0";
      } else if (sym::leading_exponent(m.e, "rho", sym::num(0), ctx) < 0) {
        value = "diverges";
      } else {
        value = sym::print(sym::series_at(m.e, "rho", sym::num(0), 0, ctx).coefficient(0), ctx);
      }
    } catch (const UnsupportedError&) {
      value = "diverges";
    }
    out.limits.emplace_back(m.name, value);
    if (value != "0") {
      out.regular = false;
      if (out.reason.empty()) out.reason = std::string(m.name) + (value == "diverges" ? " diverges at rho=0" : " at rho=0 is " + value);
    }
  }
  // field equations: the first-order gamma equations must hold, the psi equation
  // may leave a residual that vanishes on the axis
  Expr g1 = sym::simplify(sym::add({ms[1].e, -sym::mul({sym::sym("rho"), sym::add({sym::pow(ms[2].e, 2), sym::pow(ms[3].e, 2)})})}), ctx);
  Expr g2 = sym::simplify(sym::add({ms[0].e, -sym::mul({sym::num(2), sym::sym("rho"), ms[2].e, ms[3].e})}), ctx);
  out.checks.push_back(compare("gamma' = rho(psi.^2+psi'^2)", g1, sym::num(0), ctx));
  out.checks.push_back(compare("gamma. = 2 rho psi. psi'", g2, sym::num(0), ctx));
  if (!out.checks[0].pass || !out.checks[1].pass) {
    out.regular = false;
    out.reason = "declared data violate the gamma equations: residual " + out.checks[0].derived + ", " + out.checks[1].derived;
    return out;
  }
  if (!out.regular) return out;
  Expr eqpsi = sym::simplify(sym::add({sym::differentiate(ms[3].e, "rho", ctx), sym::mul({ms[3].e, sym::pow(sym::sym("rho"), -1)}),
                                       -sym::differentiate(ms[2].e, "t", ctx)}),
                             ctx);
  if (!eqpsi.is_zero()) {
    sym::Q k = sym::leading_exponent(eqpsi, "rho", sym::num(0), ctx);
    Check c{"psi equation residual near the axis", sym::print(eqpsi, ctx), "O(rho^(alpha-1)), vanishing at rho=0", k > 0,
            "leading power rho^" + k.get_str()};
    out.checks.push_back(c);
    if (k <= 0) {
      out.regular = false;
      out.reason = "psi equation residual does not vanish on the axis";
      return out;
    }
  }
  // connection on the axis: exp(-gamma(rho=0)) T_phi dphi
  auto gen = einstein_rosen(er_generic());
  Expr gamma_axis = sym::series_at(gamma, "rho", sym::num(0), 0, ctx).coefficient(0);
  sym::Bindings fns{{"psi", psi}, {"gamma", gamma}};
  ext::Matrix tphi = gauge::t_phi().m;
  bool ok = true;
  std::string bad;
  for (int a = 0; a < 4 && ok; ++a) {
    for (int b = 0; b < 4 && ok; ++b) {
      for (int mu = 0; mu < 4; ++mu) {
        Expr c = gen.omega(a, b).component({mu});
        Expr lim = sym::num(0);
        if (!c.is_zero()) {
          Expr v = sym::substitute(c, fns, ctx);
          lim = sym::series_at(v, "rho", sym::num(0), 0, ctx).coefficient(0);
        }
        Expr want = mu == 3 ? sym::mul({sym::exp(sym::mul({sym::num(-1), gamma_axis})), tphi[a][b]}) : sym::num(0);
        if (!sym::is_zero(sym::add({lim, sym::mul({sym::num(-1), want})}), ctx)) {
          ok = false;
          bad = "w^" + std::to_string(a) + "_" + std::to_string(b) + " component " + std::to_string(mu) + " -> " +
                sym::print(lim, ctx);
          break;
        }
      }
    }
  }
  out.checks.push_back({"w at rho=0", ok ? "exp(-gamma0)*T_phi dphi" : bad, "exp(-gamma0)*T_phi dphi", ok,
                        "gamma0 = " + sym::print(gamma_axis, ctx)});
  if (!ok) {
    out.regular = false;
    out.reason = "axis connection: " + bad;
  }
  return out;
}

ErQuantization er_quantize(const std::optional<Expr>& gamma0) {
  ErQuantization out;
  auto gen = einstein_rosen(er_generic());
  const auto& ch = gen.chart;
  const auto& ctx = ch->context();
  Expr g0 = gamma0 ? *gamma0 : sym::sym("gamma0");
  Expr k = sym::simplify(sym::exp(sym::mul({sym::num(-1), g0})), ctx);
  Expr angle = sym::mul({k, sym::sym("phi")});
  gauge::GroupElement lam = gauge::so13_exp(gauge::t_phi(), angle, ctx);
  out.primed = gauge::gauge_transform_connection(gen.omega, lam, ch);
  if (!ext::lowered_antisymmetric(out.primed)) throw Error("gauge-fixed connection lost antisymmetry");

  std::string ps = sym::print(sym::simplify(angle, ctx), ctx);
  std::string c = "cos(" + ps + ")", s = "sin(" + ps + ")", kk = sym::print(k, ctx);
  struct Row {
    const char* name;
    int a, b, mu;
    std::string printed;
  };
  const Row rows[] = {
      {"w'^0_1 t", 0, 1, 0, "(gamma'-psi')*" + c},
      {"w'^0_3 t", 0, 3, 0, "(gamma'-psi')*" + s},
      {"w'^0_1 rho", 0, 1, 1, "(gamma.-psi.)*" + c},
      {"w'^0_3 rho", 0, 3, 1, "(gamma.-psi.)*" + s},
      {"w'^0_2 z", 0, 2, 2, "psi.*exp(2*psi-gamma)"},
      {"w'^1_2 z", 1, 2, 2, "-psi'*exp(2*psi-gamma)*" + c},
      {"w'^2_3 z", 2, 3, 2, "psi'*exp(2*psi-gamma)*" + s},
      {"w'^0_1 phi", 0, 1, 3, "rho*psi.*exp(-gamma)*" + s},
      {"w'^0_3 phi", 0, 3, 3, "-rho*psi.*exp(-gamma)*" + c},
      {"w'^1_3 phi", 1, 3, 3, "(" + kk + ")*(1-(1-rho*psi')*exp(-gamma)/(" + kk + "))"},
  };
  for (const auto& r : rows) {
    out.checks.push_back(compare(r.name, out.primed(r.a, r.b).component({r.mu}), parse(r.printed, ctx), ctx));
  }
  // axis limits
  std::map<Expr, Expr, sym::ExprLess> lim;
  for (const char* fn : {"psi", "gamma"}) {
    lim[marker(ctx, fn, 0, 1)] = sym::num(0);
    lim[marker(ctx, fn, 1, 0)] = sym::num(0);
  }
  std::map<Expr, Expr, sym::ExprLess> fn0{{ctx.function_node("gamma"), g0}, {ctx.function_node("psi"), sym::sym("psi0")}};
  std::map<Expr, Expr, sym::ExprLess> rho0{{sym::sym("rho"), sym::num(0)}};
  int nonzero = 0;
  std::string witness;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (const auto& [idx, v] : out.primed(a, b).terms()) {
        Expr e = sym::replace_nodes(sym::replace_nodes(sym::replace_nodes(v, lim), fn0), rho0);
        if (!sym::simplify(e, ctx).is_zero()) {
          ++nonzero;
          if (witness.empty()) witness = "w'^" + std::to_string(a) + "_" + std::to_string(b);
        }
      }
    }
  }
  out.checks.push_back({"w' on the axis", nonzero == 0 ? "0" : witness + " survives", "0", nonzero == 0, ""});
  out.condition = bundle::quantize(angle, *ch, "phi", "gauge fix exp(phi~ T_phi)");
  out.energy1 = bundle::c_energy(g0, 1, sym::sym("n"), ctx);
  out.energy2 = bundle::c_energy(g0, 2, sym::sym("n"), ctx);
  return out;
}

}  // namespace tq::cases
