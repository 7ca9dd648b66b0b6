#include <doctest.h>

#include <array>
#include <cmath>

#include "gen.hpp"
#include "tq/cartan/cartan.hpp"
#include "tq/cases/cases.hpp"
#include "tq/gauge/gauge.hpp"
#include "tq/sym/calculus.hpp"
#include "tq/sym/numeric.hpp"
#include "tq/sym/parse.hpp"

using namespace tq;
using namespace tq::cartan;
using sym::parse;

namespace {

using Mat4 = std::array<std::array<double, 4>, 4>;

ext::ChartPtr chart4() {
  sym::Context c;
  for (const char* n : {"x", "y", "z", "w"}) c.positive(n);
  return ext::make_chart({{"x"}, {"y"}, {"z"}, {"w"}}, c);
}

Mat4 inv4(Mat4 a) {
  Mat4 r{};
  for (int i = 0; i < 4; ++i) r[i][i] = 1;
  for (int c = 0; c < 4; ++c) {
    int p = c;
    for (int i = c + 1; i < 4; ++i) {
      if (std::abs(a[i][c]) > std::abs(a[p][c])) p = i;
    }
    std::swap(a[c], a[p]);
    std::swap(r[c], r[p]);
    double d = a[c][c];
    for (int j = 0; j < 4; ++j) {
      a[c][j] /= d;
      r[c][j] /= d;
    }
    for (int i = 0; i < 4; ++i) {
      if (i == c) continue;
      double f = a[i][c];
      for (int j = 0; j < 4; ++j) {
        a[i][j] -= f * a[c][j];
        r[i][j] -= f * r[c][j];
      }
    }
  }
  return r;
}

double eta(int a) { return a == 0 ? 1 : -1; }

struct NumCase {
  ext::Matrix rows;
  const sym::Context* ctx;
  std::vector<std::string> coords;
  sym::NumBindings params;
};

double ev(const Expr& e, const NumCase& k, const sym::NumBindings& x) {
  sym::NumBindings b = k.params;
  for (const auto& [n, v] : x) b[n] = v;
  return sym::eval_numeric(sym::substitute_definitions(e, *k.ctx), b);
}

Mat4 frame_at(const NumCase& k, const sym::NumBindings& x) {
  Mat4 e{};
  for (int a = 0; a < 4; ++a) {
    for (int m = 0; m < 4; ++m) e[a][m] = ev(k.rows[a][m], k, x);
  }
  return e;
}

// omega^a_b along e^c from central differences of the coframe
std::array<double, 64> fd_connection(const NumCase& k, const sym::NumBindings& x) {
  Mat4 e = frame_at(k, x);
  Mat4 inv = inv4(e);  // inv[m][a]
  std::array<Mat4, 4> de{};  // de[mu][a][nu] = d_mu E^a_nu
  for (int mu = 0; mu < 4; ++mu) {
    double h = 1e-5 * std::max(1.0, std::abs(x.at(k.coords[mu])));
    auto hi = x, lo = x;
    hi[k.coords[mu]] += h;
    lo[k.coords[mu]] -= h;
    Mat4 a = frame_at(k, hi), b = frame_at(k, lo);
    for (int i = 0; i < 4; ++i) {
      for (int n = 0; n < 4; ++n) de[mu][i][n] = (a[i][n] - b[i][n]) / (2 * h);
    }
  }
  // de^a = 1/2 C^a_bc e^b^e^c
  double C[4][4][4] = {};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        double s = 0;
        for (int mu = 0; mu < 4; ++mu) {
          for (int nu = 0; nu < 4; ++nu) s += (de[mu][a][nu] - de[nu][a][mu]) * inv[mu][b] * inv[nu][c];
        }
        C[a][b][c] = eta(a) * s;  // lowered
      }
    }
  }
  std::array<double, 64> w{};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) w[(a * 4 + b) * 4 + c] = eta(a) * 0.5 * (C[a][b][c] + C[b][c][a] - C[c][a][b]);
    }
  }
  return w;
}

double kretschmann_numeric(const MatrixForm& om, const NumCase& k, const Mat4& e, const sym::NumBindings& x) {
  Mat4 inv = inv4(e);
  double sum = 0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      double F[4][4] = {};
      for (const auto& [idx, v] : om(a, b).terms()) {
        double val = ev(v, k, x);
        F[idx[0]][idx[1]] += val;
        F[idx[1]][idx[0]] -= val;
      }
      for (int c = 0; c < 4; ++c) {
        for (int d = 0; d < 4; ++d) {
          double r = 0;
          for (int mu = 0; mu < 4; ++mu) {
            for (int nu = 0; nu < 4; ++nu) r += F[mu][nu] * inv[mu][c] * inv[nu][d];
          }
          sum += eta(a) * eta(b) * eta(c) * eta(d) * r * r;
        }
      }
    }
  }
  return sum;
}

bool rel_close(double a, double b, double tol, double scale = 1) {
  return std::abs(a - b) <= tol * std::max({scale, std::abs(a), std::abs(b)});
}

}  // namespace

TEST_CASE("structure equations, antisymmetry and Bianchi on random coframes") {
  auto ch = chart4();
  test::TreeGen gen(9101, {"x", "y", "z", "w"});
  int done = 0;
  for (int i = 0; i < 500; ++i) {
    ext::Matrix m(4, std::vector<Expr>(4, sym::num(0)));
    auto coord = [&] { return sym::sym(std::string(1, "xyzw"[gen.integer(0, 3)])); };
    auto q = [&] { return sym::num(sym::Q(gen.integer(1, 5), gen.integer(1, 3))); };
    for (int a = 0; a < 4; ++a) {
      switch (gen.integer(0, 2)) {
        case 0: m[a][a] = sym::exp(q() * coord()); break;
        case 1: m[a][a] = q() + sym::pow(coord(), 2); break;
        default: m[a][a] = q() * coord(); break;
      }
    }
    if (gen.integer(0, 4) == 0) m[gen.integer(0, 1)][gen.integer(2, 3)] = q();
    ext::Coframe c(ch, m);
    MatrixForm w = solve_connection(c);
    CHECK(all_zero(verify_first_structure(c, w)));
    CHECK(ext::lowered_antisymmetric(w));
    CHECK(bianchi_residual(w, curvature(w)).is_zero());
    ++done;
  }
  CHECK(done == 500);
}

TEST_CASE("connection coefficients against finite differences") {
  struct Item {
    std::string name;
    ext::Coframe c;
    sym::NumBindings params;
    std::map<std::string, std::pair<double, double>> box;
  };
  std::vector<Item> items;

  {
    auto er = cases::einstein_rosen(cases::er_flat());
    sym::Context ctx = er.chart->context();
    auto ch = ext::with_context(er.chart, ctx);
    std::vector<std::string> d = {"exp(rho^2*cos(t)/5-sin(t)*rho^2/3)", "exp(rho^2*cos(t)/5-sin(t)*rho^2/3)",
                                  "exp(sin(t)*rho^2/3)", "rho*exp(-sin(t)*rho^2/3)"};
    ext::Matrix m(4, std::vector<Expr>(4, sym::num(0)));
    for (int a = 0; a < 4; ++a) m[a][a] = parse(d[a], ctx);
    items.push_back({"einstein-rosen", ext::Coframe(ch, m), {}, {{"t", {-1, 1}}, {"rho", {0.3, 2}}, {"z", {-1, 1}}, {"phi", {0, 6}}}});
  }
  {
    auto mon = cases::weak_field_monopole();
    items.push_back({"monopole", ext::Coframe(mon.exact_chart, mon.coframe->matrix()), {{"m", 0.05}, {"g", 0.03}},
                     {{"t", {0, 1}}, {"r", {2, 5}}, {"theta", {0.3, 2.8}}, {"phi", {0, 6}}}});
  }
  {
    auto rn = cases::reissner_nordstrom();
    items.push_back({"reissner-nordstrom", *rn.coframe, {{"m", 1.3}, {"e", 0.7}},
                     {{"t", {0, 6}}, {"r", {3, 6}}, {"theta", {0.3, 2.8}}, {"phi", {0, 6}}}});
  }
  for (const auto& it : items) {
    MatrixForm w = solve_connection(it.c);
    NumCase k{it.c.matrix(), &it.c.chart()->context(), {}, it.params};
    for (std::size_t i = 0; i < 4; ++i) k.coords.push_back(it.c.chart()->coord(i).name);
    std::mt19937_64 rng(1234);
    int bad = 0;
    for (int p = 0; p < 20; ++p) {
      sym::NumBindings x;
      for (const auto& [n, r] : it.box) x[n] = std::uniform_real_distribution<double>(r.first, r.second)(rng);
      auto fd = fd_connection(k, x);
      double scale = 0;
      for (double v : fd) scale = std::max(scale, std::abs(v));
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          ext::Form f = ext::to_frame_basis(w(a, b), it.c);
          for (int c = 0; c < 4; ++c) {
            double got = ev(f.component({c}), k, x);
            if (!rel_close(got, fd[(a * 4 + b) * 4 + c], 1e-6, scale)) ++bad;
          }
        }
      }
    }
    CHECK_MESSAGE(bad == 0, it.name);
  }
}

TEST_CASE("Kretschmann is invariant under Lorentz gauge transformations") {
  auto rn = cases::reissner_nordstrom();
  const auto& ch = rn.chart;
  const auto& ctx = ch->context();
  MatrixForm w = solve_connection(*rn.coframe);
  MatrixForm om = curvature(w);
  NumCase k{rn.coframe->matrix(), &ctx, {}, {{"m", 1.3}, {"e", 0.7}}};
  Expr K = kretschmann(riemann_components(om, *rn.coframe), ctx);

  // unit rotation axes with rational components, and the three boosts
  const std::vector<std::array<sym::Q, 3>> axes = {
      {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {sym::Q(3, 5), sym::Q(4, 5), 0}, {sym::Q(2, 7), sym::Q(3, 7), sym::Q(6, 7)},
      {sym::Q(1, 3), sym::Q(2, 3), sym::Q(-2, 3)}};
  const char* angles[] = {"t/3", "theta", "r/5", "t/2+theta", "phi/4", "1/3"};
  test::TreeGen gen(4242);
  int done = 0;
  std::mt19937_64 rng(99);
  for (int i = 0; i < 24; ++i) {
    gauge::Generator T{"T", ext::Matrix(4, std::vector<Expr>(4, sym::num(0)))};
    if (i % 4 == 3) {
      int j = 1 + i % 3;
      T.m[0][j] = sym::num(1);
      T.m[j][0] = sym::num(1);
    } else {
      const auto& n = axes[static_cast<std::size_t>(i) % axes.size()];
      // rotation about n: T_ij = -eps_ijk n_k on the spatial block
      T.m[1][2] = sym::num(-n[2]);
      T.m[2][1] = sym::num(n[2]);
      T.m[2][3] = sym::num(-n[0]);
      T.m[3][2] = sym::num(n[0]);
      T.m[3][1] = sym::num(-n[1]);
      T.m[1][3] = sym::num(n[1]);
    }
    Expr angle = parse(angles[gen.integer(0, 5)], ctx);
    auto L = gauge::so13_exp(T, angle, ctx);
    REQUIRE(gauge::verify_group_membership(L, ctx));
    MatrixForm om2 = curvature(gauge::gauge_transform_connection(w, L, ch));
    for (int p = 0; p < 5; ++p) {
      sym::NumBindings x{{"t", std::uniform_real_distribution<double>(0, 6)(rng)},
                         {"r", std::uniform_real_distribution<double>(3, 6)(rng)},
                         {"theta", std::uniform_real_distribution<double>(0.3, 2.8)(rng)},
                         {"phi", std::uniform_real_distribution<double>(0, 6)(rng)}};
      Mat4 e = frame_at(k, x), l{}, le{};
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) l[a][b] = ev(L.m[a][b], k, x);
      }
      for (int a = 0; a < 4; ++a) {
        for (int m = 0; m < 4; ++m) {
          for (int b = 0; b < 4; ++b) le[a][m] += l[a][b] * e[b][m];
        }
      }
      double k0 = ev(K, k, x);
      CHECK(rel_close(kretschmann_numeric(om, k, e, x), k0, 1e-8));
      CHECK(rel_close(kretschmann_numeric(om2, k, le, x), k0, 1e-8));
    }
    ++done;
  }
  CHECK(done == 24);
}
