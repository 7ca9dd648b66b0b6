#include "tq/gauge/gauge.hpp"

#include <set>

#include "tq/sym/error.hpp"
#include "tq/sym/print.hpp"
#include "tq/sym/simplify.hpp"

namespace tq::gauge {

namespace {

Matrix scale(const Matrix& a, const Expr& f) {
  Matrix out = a;
  for (auto& row : out) {
    for (auto& v : row) v = sym::mul({f, v});
  }
  return out;
}

Matrix plus(const Matrix& a, const Matrix& b) {
  Matrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) out[i][j] = sym::add({a[i][j], b[i][j]});
  }
  return out;
}

}  // namespace

GroupElement identity(Group g) {
  return g == Group::U1 ? GroupElement::phase(sym::num(0)) : GroupElement::so13(ext::identity(4));
}

GroupElement inverse(const GroupElement& g, const sym::Context& ctx) {
  if (g.group == Group::U1) return GroupElement::phase(sym::simplify(-g.chi, ctx));
  Matrix out(4, std::vector<Expr>(4, sym::num(0)));
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      out[a][b] = sym::simplify(sym::mul({sym::num(ext::eta_sign(a) * ext::eta_sign(b)), g.m[b][a]}), ctx);
    }
  }
  return GroupElement::so13(out);
}

GroupElement compose(const GroupElement& a, const GroupElement& b, const sym::Context& ctx) {
  if (a.group != b.group) throw Error("composing elements of different groups");
  if (a.group == Group::U1) return GroupElement::phase(sym::simplify(sym::add({a.chi, b.chi}), ctx));
  return GroupElement::so13(ext::matmul(a.m, b.m, ctx));
}

bool equal(const GroupElement& a, const GroupElement& b, const sym::Context& ctx) {
  if (a.group != b.group) return false;
  if (a.group == Group::U1) return sym::is_zero(sym::add({a.chi, -b.chi}), ctx);
  return ext::equal(a.m, b.m, ctx);
}

bool verify_group_membership(const GroupElement& g, const sym::Context& ctx) {
  if (g.group == Group::U1) return true;
  Matrix lhs = ext::matmul(ext::matmul(ext::transpose(g.m), ext::eta(), ctx), g.m, ctx);
  return ext::equal(lhs, ext::eta(), ctx);
}

std::string to_string(const GroupElement& g, const sym::Context& ctx) {
  if (g.group == Group::U1) {
    Expr chi = sym::simplify(g.chi, ctx);
    if (chi.is_zero()) return "1";
    if (chi.kind() == sym::Kind::Add) return "exp(i*(" + sym::print(chi, ctx) + "))";
    std::string body = sym::print(chi, ctx);
    if (body[0] == '-') return "exp(-i*" + body.substr(1) + ")";
    return "exp(i*" + body + ")";
  }
  std::string out = "[";
  for (std::size_t i = 0; i < g.m.size(); ++i) {
    out += i ? "; " : "";
    for (std::size_t j = 0; j < g.m.size(); ++j) out += (j ? ", " : "") + sym::print(sym::simplify(g.m[i][j], ctx), ctx);
  }
  return out + "]";
}

Generator t_phi() {
  Matrix m(4, std::vector<Expr>(4, sym::num(0)));
  m[1][3] = sym::num(-1);
  m[3][1] = sym::num(1);
  return {"T_phi", m};
}

bool is_lorentz_generator(const Generator& t) {
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      Expr s = sym::add({sym::mul({sym::num(ext::eta_sign(a)), t.m[a][b]}),
                         sym::mul({sym::num(ext::eta_sign(b)), t.m[b][a]})});
      if (!sym::simplify(s).is_zero()) return false;
    }
  }
  return true;
}

GroupElement so13_exp(const Generator& t, const Expr& theta, const sym::Context& ctx) {
  if (!is_lorentz_generator(t)) throw UnsupportedError(t.name + " is not in so(1,3)");
  Matrix t2 = ext::matmul(t.m, t.m, ctx);
  Matrix t3 = ext::matmul(t2, t.m, ctx);
  Matrix out;
  if (ext::equal(t3, scale(t.m, sym::num(-1)), ctx)) {
    Expr s = sym::sin(theta), c = sym::add({sym::num(1), -sym::cos(theta)});
    out = plus(plus(ext::identity(4), scale(t.m, s)), scale(t2, c));
  } else if (ext::equal(t3, t.m, ctx)) {
    Expr ep = sym::exp(theta), em = sym::exp(-theta);
    Expr sh = sym::mul({sym::num(sym::Q(1, 2)), sym::add({ep, -em})});
    Expr ch = sym::add({sym::mul({sym::num(sym::Q(1, 2)), sym::add({ep, em})}), sym::num(-1)});
    out = plus(plus(ext::identity(4), scale(t.m, sh)), scale(t2, ch));
  } else {
    throw UnsupportedError("exponential of " + t.name + ": neither T^3 = -T nor T^3 = T");
  }
  return GroupElement::so13(ext::simplify(out, ctx));
}

MatrixForm gauge_transform_connection(const MatrixForm& w, const GroupElement& g, const ext::ChartPtr& chart) {
  if (g.group != Group::SO13) throw Error("u(1) element applied to an so(1,3) connection");
  const auto& ctx = chart->context();
  Matrix inv = inverse(g, ctx).m;
  MatrixForm out = ext::right(ext::left(g.m, w), inv);
  MatrixForm dinv = ext::d(chart, inv);
  out = out + ext::left(g.m, dinv);
  out.algebra = w.algebra;
  return out;
}

Form gauge_transform_connection(const Form& a, const GroupElement& g, const ext::ChartPtr& chart) {
  if (g.group != Group::U1) throw Error("so(1,3) element applied to a u(1) connection");
  if (!a.imaginary() && !a.is_zero()) throw Error("u(1) connection must carry the imaginary tag");
  Form dchi = ext::d(Form::scalar(chart, g.chi)).with_imaginary(true);
  Form base = a.is_zero() ? Form(chart, 1, ext::Basis::Coordinate, true) : a;
  return base - dchi;
}

MatrixForm gauge_transform_curvature(const MatrixForm& om, const GroupElement& g, const sym::Context& ctx) {
  if (g.group != Group::SO13) throw Error("u(1) element applied to an so(1,3) curvature");
  MatrixForm out = ext::right(ext::left(g.m, om), inverse(g, ctx).m);
  out.algebra = om.algebra;
  return out;
}

Form gauge_transform_curvature(const Form& f, const GroupElement& g) {
  if (g.group != Group::U1) throw Error("so(1,3) element applied to a u(1) curvature");
  return f;
}

CocycleResult cocycle_check(const TransitionFamily& family, const sym::Context& ctx) {
  CocycleResult out;
  std::set<int> idx;
  for (const auto& [k, v] : family) {
    idx.insert(k.first);
    idx.insert(k.second);
  }
  auto get = [&](int i, int j) -> std::optional<GroupElement> {
    auto it = family.find({i, j});
    if (it != family.end()) return it->second;
    it = family.find({j, i});
    if (it != family.end()) return inverse(it->second, ctx);
    return std::nullopt;
  };
  for (const auto& [k, v] : family) {
    auto it = family.find({k.second, k.first});
    if (k.first < k.second && it != family.end()) {
      ++out.checked;
      if (!equal(it->second, inverse(v, ctx), ctx)) {
        out.pass = false;
        if (!out.pair) out.pair = k;
      }
    }
  }
  for (int i : idx) {
    for (int j : idx) {
      for (int k : idx) {
        if (!(i < j && j < k)) continue;
        auto gij = get(i, j), gjk = get(j, k), gik = get(i, k);
        if (!gij || !gjk || !gik) continue;
        ++out.checked;
        if (!equal(compose(*gij, *gjk, ctx), *gik, ctx)) {
          out.pass = false;
          if (!out.triple) out.triple = std::make_tuple(i, j, k);
        }
      }
    }
  }
  return out;
}

}  // namespace tq::gauge
