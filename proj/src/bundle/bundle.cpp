#include "tq/bundle/bundle.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "tq/sym/calculus.hpp"
#include "tq/sym/error.hpp"
#include "tq/sym/print.hpp"
#include "tq/sym/series.hpp"
#include "tq/sym/simplify.hpp"

namespace tq::bundle {

using sym::Kind;

std::string to_string(const Locus& l, const sym::Context& ctx) {
  return l.coordinate + "=" + sym::print(l.value, ctx);
}

const char* to_string(LocusKind k) {
  switch (k) {
    case LocusKind::Gauge: return "GAUGE";
    case LocusKind::Curvature: return "CURVATURE";
    case LocusKind::Chart: return "CHART";
  }
  return "?";
}

namespace {

std::vector<Expr> frame_coefficients(const Patch& p, const Coframe& c) {
  std::vector<Expr> out;
  auto collect = [&](const Form& f) {
    Form g = ext::to_frame_basis(f, c);
    for (const auto& [k, v] : g.terms()) out.push_back(v);
  };
  if (p.u1) collect(*p.u1);
  if (p.so13) {
    for (const auto& row : p.so13->m) {
      for (const auto& f : row) {
        if (!f.is_zero()) collect(f);
      }
    }
  }
  return out;
}

bool has_transcendental(const Expr& e, const std::string& x) {
  if (e.kind() == Kind::Apply && (e.fn() == sym::Fn::Exp || e.fn() == sym::Fn::Ln) && sym::depends_on(e, x)) return true;
  if (e.kind() == Kind::Function && sym::depends_on(e, x)) return true;
  for (const auto& a : e.args()) {
    if (has_transcendental(a, x)) return true;
  }
  return false;
}

// zeros of a factor depending on a single coordinate, from a candidate list
void factor_zeros(const Expr& f, const ext::Chart& ch, std::vector<Locus>& out) {
  const auto& ctx = ch.context();
  std::vector<std::string> coords;
  for (const auto& c : ch.coords()) {
    if (sym::depends_on(f, c.name)) coords.push_back(c.name);
  }
  if (coords.empty()) return;
  if (f.kind() == Kind::Mul) {
    for (const auto& a : f.args()) factor_zeros(a, ch, out);
    return;
  }
  if (f.kind() == Kind::Pow && f.exponent() > 0) {
    factor_zeros(f.base(), ch, out);
    return;
  }
  if (f.kind() == Kind::Apply && f.fn() == sym::Fn::Exp) return;
  if (coords.size() > 1) throw UnsupportedError("denominator " + sym::print(f, ctx) + " mixes coordinates");
  const std::string& x = coords[0];
  if (has_transcendental(f, x)) throw UnsupportedError("cannot locate the zeros of " + sym::print(f, ctx));
  std::vector<Expr> cand{sym::num(0), sym::mul({sym::num(sym::Q(1, 2)), sym::pi()}), sym::pi()};
  std::vector<std::string> params = ctx.parameters();
  for (const auto& n : params) {
    cand.push_back(sym::sym(n));
    cand.push_back(sym::mul({sym::num(-1), sym::sym(n)}));
  }
  const ext::Coordinate& cd = ch.coord(static_cast<std::size_t>(ch.index(x)));
  for (const auto& e : cd.excluded) cand.push_back(e);
  if (cd.lo) cand.push_back(*cd.lo);
  if (cd.hi) cand.push_back(*cd.hi);
  bool any = false;
  for (const auto& v : cand) {
    Expr at;
    try {
      at = sym::substitute(f, {{x, v}}, ctx);
    } catch (const Error&) {
      continue;
    }
    if (!sym::is_zero(at, ctx)) continue;
    bool dup = false;
    for (const auto& l : out) dup = dup || (l.coordinate == x && sym::is_zero(sym::add({l.value, -v}), ctx));
    if (!dup) out.push_back({x, sym::simplify(v, ctx)});
    any = true;
  }
  if (!any && f.kind() == Kind::Add) {
    // a sum with no recognisable root (e.g. r^2 + 1) is accepted only when it is sign-definite at samples
    std::mt19937_64 rng(1);
    int sign = 0;
    for (int i = 0; i < 20; ++i) {
      try {
        double v = sym::eval_numeric(f, sym::sample_point(ctx, rng));
        int s = v > 0 ? 1 : v < 0 ? -1 : 0;
        if (sign != 0 && s != sign) throw UnsupportedError("cannot locate the zeros of " + sym::print(f, ctx));
        sign = s;
      } catch (const DomainError&) {
      }
    }
  }
}

void denominators(const Expr& e, std::vector<Expr>& out) {
  if (e.kind() == Kind::Pow) {
    if (e.exponent() < 0) out.push_back(e.base());
    denominators(e.base(), out);
    return;
  }
  if (e.kind() == Kind::Function) return;
  for (const auto& a : e.args()) denominators(a, out);
}

bool diverges(const Expr& e, const Locus& l, const sym::Context& ctx) {
  if (sym::simplify(e, ctx).is_zero()) return false;
  return sym::leading_exponent(e, l.coordinate, l.value, ctx) < 0;
}

}  // namespace

std::vector<ClassifiedLocus> singular_loci(const Patch& p, const Coframe& c, const Expr& invariant) {
  const auto& ctx = p.chart->context();
  std::vector<Expr> coefs = frame_coefficients(p, c);
  std::vector<Locus> cand;
  for (const auto& k : coefs) {
    std::vector<Expr> dens;
    denominators(k, dens);
    for (const auto& d : dens) factor_zeros(d, *p.chart, cand);
  }
  std::vector<ClassifiedLocus> out;
  for (const auto& l : cand) {
    bool bad = false;
    for (const auto& k : coefs) {
      if (sym::depends_on(k, l.coordinate) && diverges(k, l, ctx)) {
        bad = true;
        break;
      }
    }
    if (!bad) continue;
    ClassifiedLocus cl{l, LocusKind::Gauge};
    if (diverges(invariant, l, ctx)) {
      cl.kind = LocusKind::Curvature;
    } else {
      const auto& cd = p.chart->coord(static_cast<std::size_t>(p.chart->index(l.coordinate)));
      for (const auto& e : cd.excluded) {
        if (sym::is_zero(sym::add({e, -l.value}), ctx)) cl.kind = LocusKind::Chart;
      }
    }
    out.push_back(cl);
  }
  return out;
}

bool connection_finite(const Patch& p, const Coframe& c, int samples, std::uint64_t seed) {
  const auto& ctx = p.chart->context();
  std::vector<Expr> coefs = frame_coefficients(p, c);
  std::mt19937_64 rng(seed);
  int good = 0;
  for (int i = 0; i < samples * 10 && good < samples; ++i) {
    sym::NumBindings pt = sym::sample_point(ctx, rng);
    bool excluded = false;
    for (const auto& l : p.excluded) {
      try {
        excluded = excluded || std::abs(pt.at(l.coordinate) - sym::eval_numeric(l.value, pt)) < 1e-9;
      } catch (const Error&) {
      }
    }
    if (excluded) continue;
    for (const auto& k : coefs) {
      try {
        if (!std::isfinite(sym::eval_numeric(k, pt))) return false;
      } catch (const DomainError&) {
        return false;
      }
    }
    ++good;
  }
  return good == samples;
}

Transition u1_transition(const Patch& a, const Patch& b, const std::string& overlap) {
  if (!a.u1 || !b.u1) throw Error("transition needs u(1) connections on both patches");
  const auto& ch = a.chart;
  const auto& ctx = ch->context();
  // A_a - A_b = -i dchi, so dchi = -(real part of the difference)
  Form diff = *a.u1 - *b.u1;
  Form target(ch, 1);
  for (const auto& [k, v] : diff.terms()) target.accumulate(k, sym::mul({sym::num(-1), v}));
  if (!ext::d(target).is_zero()) throw Error("patches " + a.name + " and " + b.name + " are inconsistent: A_a - A_b is not closed");
  Expr chi = sym::num(0);
  for (std::size_t mu = 0; mu < ch->dim(); ++mu) {
    Expr rem = sym::simplify(sym::add({target.component({static_cast<int>(mu)}),
                                       -sym::differentiate(chi, ch->name(mu), ctx)}),
                             ctx);
    if (rem.is_zero()) continue;
    chi = sym::simplify(sym::add({chi, antiderivative(rem, ch->name(mu), ctx)}), ctx);
  }
  Form check = ext::d(Form::scalar(ch, chi)) - target;
  if (!check.is_zero()) throw Error("could not integrate the transition phase");
  return {GroupElement::phase(chi), overlap};
}

AtlasCheck check_atlas(const Atlas& atlas) {
  AtlasCheck out;
  gauge::TransitionFamily fam;
  sym::Context ctx;
  for (const auto& [k, t] : atlas.transitions) {
    const Patch& pa = atlas.patches[static_cast<std::size_t>(k.first)];
    const Patch& pb = atlas.patches[static_cast<std::size_t>(k.second)];
    ctx = pa.chart->context();
    fam[k] = t.g;
    if (t.g.group == gauge::Group::U1) {
      if (!pa.u1 || !pb.u1) {
        out.consistent = false;
        continue;
      }
      Form mapped = gauge::gauge_transform_connection(*pb.u1, t.g, pa.chart);
      if (!ext::same_form(mapped, *pa.u1)) out.consistent = false;
    } else {
      if (!pa.so13 || !pb.so13) {
        out.consistent = false;
        continue;
      }
      MatrixForm mapped = gauge::gauge_transform_connection(*pb.so13, t.g, pa.chart);
      if (!(mapped - *pa.so13).is_zero()) out.consistent = false;
    }
  }
  out.cocycle = gauge::cocycle_check(fam, ctx);
  return out;
}

std::string QuantizationCondition::to_string(const sym::Context& ctx) const {
  return sym::print(lhs, ctx) + " = n";
}

QuantizationCondition quantize(const Expr& phase, const ext::Chart& chart, const std::string& coordinate,
                               const std::string& provenance) {
  const auto& ctx = chart.context();
  int i = chart.index(coordinate);
  if (i < 0) throw Error("'" + coordinate + "' is not a coordinate of the chart");
  const auto& cd = chart.coord(static_cast<std::size_t>(i));
  if (!cd.period) throw Error("coordinate '" + coordinate + "' is not periodic");
  Expr kappa = sym::differentiate(phase, coordinate, ctx);
  if (sym::depends_on(kappa, coordinate)) {
    throw UnsupportedError("phase " + sym::print(phase, ctx) + " is not linear in " + coordinate);
  }
  QuantizationCondition q;
  q.kappa = kappa;
  q.coordinate = coordinate;
  q.period = *cd.period;
  q.provenance = provenance;
  Expr lhs = sym::mul({kappa, *cd.period, sym::pow(sym::mul({sym::num(2), sym::pi()}), -1)});
  q.lhs = sym::simplify(sym::substitute_definitions(lhs, ctx), ctx);
  return q;
}

QuantizationCondition quantize(const Transition& t, const ext::Chart& chart, const std::string& coordinate) {
  if (t.g.group != gauge::Group::U1) throw Error("only u(1) transitions carry a phase");
  return quantize(t.g.chi, chart, coordinate, "transition " + t.overlap);
}

std::optional<sym::Q> forced_value(const QuantizationCondition& q, const sym::Bindings& values,
                                   const sym::Context& ctx) {
  Expr v = sym::substitute(q.lhs, values, ctx);
  if (v.is_number()) return v.value();
  return std::nullopt;
}

ChernForms chern_form(const Form& f) {
  if (f.degree() != 2) throw Error("Chern form needs a 2-form");
  if (!f.imaginary() && !f.is_zero()) throw Error("u(1) curvature must carry the imaginary tag");
  // F = i R with R real: i F = -R, (i/2pi) F = -R/(2pi)
  Form real = f.with_imaginary(false);
  ChernForms out;
  out.unnormalized = -real;
  out.c1 = real.scaled(sym::mul({sym::num(sym::Q(-1, 2)), sym::pow(sym::pi(), -1)}));
  return out;
}

Expr antiderivative(const Expr& e0, const std::string& v, const sym::Context& ctx) {
  Expr e = sym::simplify(e0, ctx);
  if (!sym::depends_on(e, v)) return sym::simplify(sym::mul({e, sym::sym(v)}), ctx);
  auto fail = [&]() -> Expr { throw UnsupportedError("no elementary antiderivative of " + sym::print(e, ctx) + " in " + v); };
  auto linear = [&](const Expr& b) -> std::optional<Expr> {
    Expr d = sym::differentiate(b, v, ctx);
    if (sym::depends_on(d, v) || d.is_zero()) return std::nullopt;
    return d;
  };
  switch (e.kind()) {
    case Kind::Add: {
      std::vector<Expr> parts;
      for (const auto& t : e.args()) parts.push_back(antiderivative(t, v, ctx));
      return sym::simplify(sym::add(parts), ctx);
    }
    case Kind::Mul: {
      std::vector<Expr> konst, dep;
      for (const auto& f : e.args()) (sym::depends_on(f, v) ? dep : konst).push_back(f);
      if (dep.size() == 1) return sym::simplify(sym::mul({sym::mul(konst), antiderivative(dep[0], v, ctx)}), ctx);
      // powers of a single linear base multiply out: b^p * b^q
      return fail();
    }
    case Kind::Symbol:
      return sym::simplify(sym::mul({sym::num(sym::Q(1, 2)), sym::pow(e, 2)}), ctx);
    case Kind::Pow: {
      auto a = linear(e.base());
      if (!a) return fail();
      if (e.exponent() == -1) return sym::simplify(sym::mul({sym::ln(e.base()), sym::pow(*a, -1)}), ctx);
      sym::Q k1 = e.exponent() + 1;
      return sym::simplify(sym::mul({sym::pow(e.base(), k1), sym::pow(sym::mul({sym::num(k1), *a}), -1)}), ctx);
    }
    case Kind::Apply: {
      auto a = linear(e.arg());
      if (!a) return fail();
      Expr inv = sym::pow(*a, -1);
      switch (e.fn()) {
        case sym::Fn::Sin: return sym::simplify(sym::mul({sym::num(-1), sym::cos(e.arg()), inv}), ctx);
        case sym::Fn::Cos: return sym::simplify(sym::mul({sym::sin(e.arg()), inv}), ctx);
        case sym::Fn::Exp: return sym::simplify(sym::mul({e, inv}), ctx);
        case sym::Fn::Ln:
          return sym::simplify(sym::mul({sym::add({sym::mul({e.arg(), e}), -e.arg()}), inv}), ctx);
      }
      return fail();
    }
    default:
      return fail();
  }
}

Expr definite_integral(const Expr& e, const std::string& v, const Expr& lo, const Expr& hi, const sym::Context& ctx) {
  Expr f = antiderivative(e, v, ctx);
  return sym::simplify(sym::add({sym::substitute(f, {{v, hi}}, ctx), -sym::substitute(f, {{v, lo}}, ctx)}), ctx);
}

namespace {

// adaptive Simpson with the usual |S2 - S1|/15 error estimate
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth, double& err) {
  double m = 0.5 * (a + b), lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6 * (fa + 4 * flm + fm), right = (b - m) / 6 * (fm + 4 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15 * tol) {
    err += std::abs(delta) / 15;
    return left + right + delta / 15;
  }
  return simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1, err) +
         simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1, err);
}

double integrate1(const std::function<double(double)>& f, double a, double b, double tol, double& err) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return simpson(f, a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), tol, 40, err);
}

}  // namespace

ChernNumber chern_number(const Form& c, const Rectangle& region, const std::optional<QuantizationCondition>& condition,
                         const std::optional<sym::NumBindings>& numeric) {
  const auto& ch = *c.chart();
  const auto& ctx = ch.context();
  ChernNumber out;
  int ix = ch.index(region.x), iy = ch.index(region.y);
  if (ix < 0 || iy < 0 || ix == iy) throw Error("integration region must name two coordinates of the chart");
  if (c.degree() != 2) throw Error("Chern number needs a 2-form");
  for (const auto& [k, v] : c.terms()) {
    if (!((k[0] == ix && k[1] == iy) || (k[0] == iy && k[1] == ix))) {
      throw Error("Chern form has components outside the integration surface");
    }
  }
  int lo = std::min(ix, iy), hi = std::max(ix, iy);
  out.orientation = "d" + ch.name(static_cast<std::size_t>(lo)) + "^d" + ch.name(static_cast<std::size_t>(hi));
  // integrand for dx dy in the order of the region: sign from orientation
  Expr f = c.component({ix, iy});
  try {
    Expr inner = definite_integral(f, region.y, region.y_lo, region.y_hi, ctx);
    out.value = definite_integral(inner, region.x, region.x_lo, region.x_hi, ctx);
  } catch (const UnsupportedError&) {
    if (!numeric) throw;
    sym::NumBindings p = *numeric;
    double xl = sym::eval_numeric(region.x_lo, p), xh = sym::eval_numeric(region.x_hi, p);
    double yl = sym::eval_numeric(region.y_lo, p), yh = sym::eval_numeric(region.y_hi, p);
    double err = 0;
    auto outer = [&](double x) {
      double e2 = 0;
      auto g = [&](double y) {
        sym::NumBindings q = p;
        q[region.x] = x;
        q[region.y] = y;
        return sym::eval_numeric(f, q);
      };
      double v = integrate1(g, yl, yh, 1e-10, e2);
      err += e2 * (xh - xl) / 64;
      return v;
    };
    double v = integrate1(outer, xl, xh, 1e-9, err);
    out.numeric = true;
    out.error = err;
    out.value = sym::num(sym::Q(v));
    return out;
  }
  out.value = sym::simplify(out.value, ctx);
  if (condition) {
    // value = k * (kappa P / 2pi) for a constant k gives k n
    Expr ratio = sym::simplify(sym::mul({out.value, sym::pow(condition->lhs, -1)}), ctx);
    if (!ratio.is_number()) {
      Expr r2 = sym::simplify(
          sym::substitute_definitions(sym::mul({out.value, sym::pow(condition->lhs, -1)}), ctx), ctx);
      if (r2.is_number()) ratio = r2;
    }
    if (ratio.is_number()) out.in_n = sym::simplify(sym::mul({ratio, sym::sym("n")}));
  }
  return out;
}

CEnergy c_energy(const Expr& gamma0, int variant, const Expr& n, const sym::Context& ctx) {
  if (variant != 1 && variant != 2) throw Error("C-energy variant must be 1 or 2");
  CEnergy out;
  out.value = variant == 1 ? gamma0 : sym::add({sym::num(1), -sym::exp(sym::mul({sym::num(-2), gamma0}))});
  out.value = sym::simplify(out.value, ctx);
  if (gamma0.kind() != Kind::Symbol) {
    out.n = sym::simplify(sym::exp(-gamma0), ctx);
    out.quantized = out.value;
    return out;
  }
  if (variant == 1 && n.is_number() && n.value() <= 0) {
    throw DomainError("C-energy -ln(n) needs n > 0", sym::print(n));
  }
  out.quantized = sym::substitute(out.value, {{gamma0.name(), sym::mul({sym::num(-1), sym::ln(n)})}}, ctx);
  return out;
}

}  // namespace tq::bundle
