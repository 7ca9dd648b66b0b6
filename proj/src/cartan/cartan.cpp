#include "tq/cartan/cartan.hpp"

#include <algorithm>

#include "tq/sym/error.hpp"
#include "tq/sym/simplify.hpp"

namespace tq::cartan {

namespace {

using ext::Basis;
using ext::eta_sign;

const sym::Context& ctx_of(const Coframe& c) { return c.chart()->context(); }

Expr sq(const Expr& a) { return sym::mul({a, a}); }

using Terms = std::map<std::vector<int>, std::vector<Expr>>;

// unsimplified a^b, accumulated with `sign`
void raw_wedge(const Form& a, const Form& b, int sign, Terms& acc) {
  for (const auto& [i, x] : a.terms()) {
    for (const auto& [j, y] : b.terms()) {
      std::vector<int> idx = i;
      idx.insert(idx.end(), j.begin(), j.end());
      int s = sign;
      bool repeated = false;
      for (std::size_t p = 0; p < idx.size(); ++p) {
        for (std::size_t q = p + 1; q < idx.size(); ++q) {
          if (idx[p] == idx[q]) repeated = true;
          if (idx[p] > idx[q]) s = -s;
        }
      }
      if (repeated) continue;
      std::sort(idx.begin(), idx.end());
      acc[idx].push_back(sym::mul({sym::num(s), x, y}));
    }
  }
}

}  // namespace

std::vector<Form> verify_first_structure(const Coframe& c, const MatrixForm& w) {
  std::vector<Form> out;
  for (std::size_t a = 0; a < c.size(); ++a) {
    Form r = ext::d(c[a]);
    for (std::size_t b = 0; b < c.size(); ++b) {
      if (w(a, b).is_zero()) continue;
      r = r + ext::wedge(w(a, b), c[b]);
    }
    out.push_back(r);
  }
  return out;
}

bool all_zero(const std::vector<Form>& forms) {
  for (const auto& f : forms) {
    if (!f.is_zero()) return false;
  }
  return true;
}

MatrixForm solve_connection(const Coframe& c) {
  const auto& ctx = ctx_of(c);
  const std::size_t n = c.size();
  // C^a_bc antisymmetric in bc with de^a = 1/2 C^a_bc e^b ^ e^c
  std::vector<Expr> C(n * n * n, sym::num(0));
  auto at = [n](std::size_t a, std::size_t b, std::size_t cc) { return (a * n + b) * n + cc; };
  for (std::size_t a = 0; a < n; ++a) {
    Form de = ext::to_frame_basis(ext::d(c[a]), c);
    for (const auto& [idx, v] : de.terms()) {
      auto b = static_cast<std::size_t>(idx[0]), cc = static_cast<std::size_t>(idx[1]);
      C[at(a, b, cc)] = v;
      C[at(a, cc, b)] = sym::simplify(-v, ctx);
    }
  }
  // lowered C_abc = eta_aa C^a_bc
  auto low = [&](std::size_t a, std::size_t b, std::size_t cc) {
    return sym::mul({sym::num(eta_sign(a)), C[at(a, b, cc)]});
  };
  MatrixForm w = ext::zero_matrix(c.chart(), n, 1, ext::Algebra::So13);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      std::vector<Expr> frame(n, sym::num(0));
      bool any = false;
      for (std::size_t cc = 0; cc < n; ++cc) {
        // w_abc = 1/2 (C_abc + C_bca - C_cab);  w^a_bc = eta^aa w_abc
        Expr v = sym::mul({sym::num(sym::Q(eta_sign(a), 2)),
                           sym::add({low(a, b, cc), low(b, cc, a), sym::mul({sym::num(-1), low(cc, a, b)})})});
        frame[cc] = sym::simplify(v, ctx);
        any = any || !frame[cc].is_zero();
      }
      if (any) w(a, b) = ext::from_frame_basis(Form::one(c.chart(), frame, Basis::Frame), c);
    }
  }
  if (!all_zero(verify_first_structure(c, w))) throw Error("connection solver: structure equation residual is nonzero");
  if (!ext::lowered_antisymmetric(w)) throw Error("connection solver: lowered connection is not antisymmetric");
  return w;
}

MatrixForm curvature(const MatrixForm& w) {
  MatrixForm out = ext::d(w) + ext::wedge(w, w);
  out.algebra = w.algebra;
  return out;
}

Form curvature(const Form& a) {
  if (!ext::wedge(a, a).is_zero()) throw Error("u(1) connection has a nonvanishing A^A term");
  return ext::d(a);
}

MatrixForm bianchi_residual(const MatrixForm& w, const MatrixForm& omega) {
  // one simplification per component: d omega + w^omega - omega^w
  const auto& chart = omega(0, 0).chart();
  const auto& ctx = chart->context();
  std::size_t n = omega.size();
  MatrixForm out = ext::zero_matrix(chart, n, 3, omega.algebra);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Terms acc;
      Form dom = ext::d(omega(i, j));
      for (const auto& [idx, v] : dom.terms()) acc[idx].push_back(v);
      for (std::size_t k = 0; k < n; ++k) {
        raw_wedge(w(i, k), omega(k, j), 1, acc);
        raw_wedge(omega(i, k), w(k, j), -1, acc);
      }
      for (const auto& [idx, ts] : acc) {
        Expr v = sym::simplify(sym::add(ts), ctx);
        if (!v.is_zero()) out(i, j).accumulate(idx, v);
      }
    }
  }
  return out;
}

Riemann riemann_components(const MatrixForm& omega, const Coframe& c) {
  const auto& ctx = ctx_of(c);
  Riemann R;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      if (omega(a, b).is_zero()) continue;
      Form f = ext::to_frame_basis(omega(a, b), c);
      for (const auto& [idx, v] : f.terms()) {
        R(a, b, idx[0], idx[1]) = v;
        R(a, b, idx[1], idx[0]) = sym::simplify(-v, ctx);
      }
    }
  }
  return R;
}

Matrix ricci(const Riemann& R, const sym::Context& ctx) {
  Matrix out(4, std::vector<Expr>(4, sym::num(0)));
  for (int b = 0; b < 4; ++b) {
    for (int d = 0; d < 4; ++d) {
      std::vector<Expr> terms;
      for (int a = 0; a < 4; ++a) terms.push_back(R(a, b, a, d));
      out[b][d] = sym::simplify(sym::add(terms), ctx);
    }
  }
  return out;
}

Expr ricci_scalar(const Matrix& ric, const sym::Context& ctx) {
  std::vector<Expr> terms;
  for (std::size_t a = 0; a < 4; ++a) terms.push_back(sym::mul({sym::num(eta_sign(a)), ric[a][a]}));
  return sym::simplify(sym::add(terms), ctx);
}

Matrix einstein_tensor(const Riemann& R, const sym::Context& ctx) {
  Matrix ric = ricci(R, ctx);
  Expr s = ricci_scalar(ric, ctx);
  Matrix g = ric;
  for (std::size_t a = 0; a < 4; ++a) {
    g[a][a] = sym::simplify(sym::add({ric[a][a], sym::mul({sym::num(sym::Q(-eta_sign(a), 2)), s})}), ctx);
  }
  return g;
}

Expr kretschmann(const Riemann& R, const sym::Context& ctx) {
  std::vector<Expr> terms;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        for (int d = 0; d < 4; ++d) {
          const Expr& v = R(a, b, c, d);
          if (v.is_zero()) continue;
          int s = eta_sign(a) * eta_sign(b) * eta_sign(c) * eta_sign(d);
          terms.push_back(sym::mul({sym::num(s), sq(v)}));
        }
      }
    }
  }
  return sym::simplify(sym::add(terms), ctx);
}

Geometry geometry(const Coframe& c) {
  Geometry g;
  g.omega = solve_connection(c);
  g.curvature = curvature(g.omega);
  g.riemann = riemann_components(g.curvature, c);
  g.einstein = einstein_tensor(g.riemann, ctx_of(c));
  return g;
}

StressEnergy vacuum() {
  return {Matrix(4, std::vector<Expr>(4, sym::num(0))), Source::Vacuum};
}

StressEnergy em_stress_energy(const Form& f, const Coframe& c) {
  const auto& ctx = ctx_of(c);
  if (f.degree() != 2) throw Error("field strength must be a 2-form");
  Form ff = ext::to_frame_basis(f, c);
  Matrix F(4, std::vector<Expr>(4, sym::num(0)));
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) F[a][b] = ff.component({a, b});
  }
  // F_cd F^cd
  std::vector<Expr> inv;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      if (F[a][b].is_zero()) continue;
      inv.push_back(sym::mul({sym::num(eta_sign(a) * eta_sign(b)), sq(F[a][b])}));
    }
  }
  Expr f2 = sym::add(inv);
  StressEnergy out{Matrix(4, std::vector<Expr>(4, sym::num(0))), Source::Electromagnetic};
  for (int a = 0; a < 4; ++a) {
    for (int b = a; b < 4; ++b) {
      std::vector<Expr> t;
      for (int k = 0; k < 4; ++k) t.push_back(sym::mul({sym::num(-eta_sign(k)), F[a][k], F[b][k]}));
      if (a == b) t.push_back(sym::mul({sym::num(sym::Q(eta_sign(a), 4)), f2}));
      Expr v = sym::simplify(sym::mul({sym::num(sym::Q(1, 4)), sym::pow(sym::pi(), -1), sym::add(t)}), ctx);
      out.t[a][b] = v;
      out.t[b][a] = v;
    }
  }
  return out;
}

Expr trace(const StressEnergy& t, const sym::Context& ctx) {
  std::vector<Expr> terms;
  for (std::size_t a = 0; a < 4; ++a) terms.push_back(sym::mul({sym::num(eta_sign(a)), t.t[a][a]}));
  return sym::simplify(sym::add(terms), ctx);
}

Expr field_invariant(const Form& f, const Coframe& c) {
  Form ff = ext::to_frame_basis(f, c);
  std::vector<Expr> terms;
  for (const auto& [idx, v] : ff.terms()) {
    terms.push_back(sym::mul({sym::num(2 * eta_sign(idx[0]) * eta_sign(idx[1])), sq(v)}));
  }
  return sym::simplify(sym::add(terms), ctx_of(c));
}

FieldCheck verify_field_equations(const Coframe& c, const StressEnergy& source, const Constraints& k,
                                  std::uint64_t seed) {
  return verify_field_equations(geometry(c), c, source, k, seed);
}

FieldCheck verify_field_equations(const Geometry& g, const Coframe& c, const StressEnergy& source,
                                  const Constraints& k, std::uint64_t seed) {
  const auto& ctx = ctx_of(c);
  FieldCheck out;
  out.pass = true;
  out.symbolic = true;
  out.residual = Matrix(4, std::vector<Expr>(4, sym::num(0)));
  for (int a = 0; a < 4; ++a) {
    for (int b = a; b < 4; ++b) {
      Expr r = sym::add({g.einstein[a][b], sym::mul({sym::num(-8), sym::pi(), source.t[a][b]})});
      if (!k.functions.empty()) r = sym::substitute(r, k.functions, ctx);
      if (!k.markers.empty()) r = sym::reduce_markers(r, k.markers, ctx);
      r = sym::simplify(r, ctx);
      if (!r.is_zero() && !ctx.definitions().empty()) r = sym::simplify(sym::substitute_definitions(r, ctx), ctx);
      out.residual[a][b] = r;
      out.residual[b][a] = r;
      if (r.is_zero() || !out.pass) continue;
      auto eq = sym::equivalent(r, sym::num(0), ctx, 50, seed);
      out.symbolic = false;
      if (!eq.equal) {
        out.pass = false;
        out.witness = eq.witness;
        out.failing = "G[" + std::to_string(a) + "][" + std::to_string(b) + "]";
      }
    }
  }
  return out;
}

}  // namespace tq::cartan
