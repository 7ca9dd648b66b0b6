#include <doctest.h>

#include <cmath>

#include "tq/cases/cases.hpp"
#include "tq/sym/error.hpp"
#include "tq/sym/numeric.hpp"
#include "tq/sym/parse.hpp"
#include "tq/sym/print.hpp"
#include "tq/sym/simplify.hpp"

using namespace tq;
using namespace tq::cases;
using sym::parse;

namespace {

void require_all(const std::vector<Check>& cs) {
  for (const auto& c : cs) {
    INFO(c.name << ": " << c.derived << " vs " << c.expected);
    CHECK(c.pass);
  }
}

int count(const std::vector<bundle::ClassifiedLocus>& ls, bundle::LocusKind k) {
  int n = 0;
  for (const auto& l : ls) n += l.kind == k;
  return n;
}

bool has(const std::vector<bundle::ClassifiedLocus>& ls, const std::string& x, const Expr& v, bundle::LocusKind k) {
  for (const auto& l : ls) {
    if (l.locus.coordinate == x && l.locus.value == v && l.kind == k) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("Einstein-Rosen connection and vacuum") {
  auto er = einstein_rosen();
  require_all(er.checks);
  CHECK(er.checks.size() == 7);
  CHECK(er.field.pass);

  auto lc = einstein_rosen(er_levi_civita());
  CHECK(lc.field.pass);
  auto flat = einstein_rosen(er_flat());
  require_all(flat.checks);
  CHECK(flat.field.pass);
}

TEST_CASE("Einstein-Rosen axis regularity") {
  auto lc = er_axis_regularity(er_levi_civita());
  CHECK_FALSE(lc.regular);
  CHECK(lc.reason.find("diverges") != std::string::npos);

  auto flat = er_axis_regularity(er_flat());
  CHECK(flat.regular);
  require_all(flat.checks);

  auto series = er_axis_regularity(er_axis_series());
  CHECK(series.regular);
  require_all(series.checks);
  for (const auto& [k, v] : series.limits) CHECK_MESSAGE(v == "0", k);
  CHECK(series.limits.size() == 4);
}

TEST_CASE("Einstein-Rosen gauge fix and quantization") {
  auto q = er_quantize();
  require_all(q.checks);
  sym::Context ctx;
  ctx.parameter("n");
  CHECK(q.condition.to_string(ctx) == "exp(-gamma0) = n");
  CHECK(sym::print(q.energy1.quantized) == "-ln(n)");
  CHECK(sym::is_zero(q.energy2.quantized - parse("1-n^2", ctx), ctx));

  auto q0 = er_quantize(sym::num(0));
  CHECK(q0.condition.to_string(ctx) == "1 = n");
  REQUIRE(q0.energy1.n);
  CHECK(*q0.energy1.n == sym::num(1));
  CHECK(q0.energy1.value.is_zero());
  CHECK(q0.energy2.value.is_zero());
}

TEST_CASE("weak-field monopole") {
  auto m = weak_field_monopole();
  require_all(m.checks);
  const auto& ctx = m.chart->context();
  CHECK(gauge::to_string(m.g12.g, ctx) == "exp(i*g*phi)");
  CHECK(m.condition.to_string(ctx) == "g = n");

  CHECK(has(m.loci1, "r", sym::num(0), bundle::LocusKind::Curvature));
  CHECK(has(m.loci1, "theta", sym::num(0), bundle::LocusKind::Gauge));
  CHECK(count(m.loci1, bundle::LocusKind::Gauge) == 1);
  CHECK(has(m.loci2, "r", sym::num(0), bundle::LocusKind::Curvature));
  CHECK(has(m.loci2, "theta", sym::pi(), bundle::LocusKind::Gauge));
  CHECK(count(m.loci2, bundle::LocusKind::Gauge) == 1);

  auto at = bundle::check_atlas(m.atlas);
  CHECK(at.consistent);
  CHECK(at.cocycle.pass);
  // (1/4pi) g sin(theta) over the sphere: g
  CHECK(m.chern.value == sym::sym("g"));
  REQUIRE(m.chern.in_n);
  CHECK(*m.chern.in_n == sym::sym("n"));
}

TEST_CASE("Reissner-Nordstrom") {
  auto rn = reissner_nordstrom();
  require_all(rn.checks);
  const auto& ctx = rn.chart->context();
  CHECK(rn.condition.to_string(ctx) == "2*sqrt(m^2-e^2)/e = n");
  CHECK(has(rn.loci, "r", sym::sym("rm"), bundle::LocusKind::Gauge));
  CHECK(has(rn.loci, "r", sym::sym("rp"), bundle::LocusKind::Gauge));
  CHECK(rn.loci.size() == 2);
  CHECK(ext::to_string(rn.chern_forms.unnormalized) == "-e/r^2*dt^dr");
  REQUIRE(rn.chern.in_n);
  CHECK(sym::is_zero(*rn.chern.in_n + sym::sym("n"), ctx));
  CHECK(rn.field.pass);
  auto at = bundle::check_atlas(rn.atlas);
  CHECK(at.consistent);
  CHECK(at.cocycle.pass);

  CHECK_THROWS_AS(reissner_nordstrom(std::nullopt, sym::num(0)), Error);
}

TEST_CASE("Reissner-Nordstrom at m = sqrt(2), e = 1") {
  auto rn = reissner_nordstrom(sym::sqrt(sym::num(2)), sym::num(1));
  const auto& ctx = rn.chart->context();
  // n = 2 sqrt(2 - 1) / 1 = 2
  CHECK(rn.condition.lhs == sym::num(2));
  // (1/2pi) * 2pi * integral of -1/r^2 over [sqrt2-1, sqrt2+1] = -(1/rm - 1/rp) = -2
  CHECK(sym::eval_numeric(sym::substitute_definitions(rn.chern.value, ctx), {}) == doctest::Approx(-2).epsilon(1e-12));

  auto kr = [&](double r) { return sym::eval_numeric(sym::substitute_definitions(rn.kretschmann, ctx), {{"r", r}}); };
  auto hand = [](double r) {
    double m = std::sqrt(2.0);
    return 48 * m * m / std::pow(r, 6) - 96 * m / std::pow(r, 7) + 56 / std::pow(r, 8);
  };
  double rp = std::sqrt(2.0) + 1;
  double rm = std::sqrt(2.0) - 1;
  for (double r : {rp, rm, rp / 2, 3.0, 1e-3 * rp}) CHECK(kr(r) == doctest::Approx(hand(r)).epsilon(1e-10));
  CHECK(std::isfinite(kr(rp)));
  CHECK(std::isfinite(kr(rm)));
  CHECK(kr(1e-3 * rp) >= 1e6 * kr(rp));
}

TEST_CASE("Kerr-Newman") {
  auto kn = kerr_newman();
  require_all(kn.checks);
  auto again = kerr_newman();
  CHECK(again.agree == kn.agree);
  CHECK(again.agree_symbolic == kn.agree_symbolic);
  CHECK(sym::print(again.derived) == sym::print(kn.derived));
  // the horizon-potential derivation reproduces the printed coefficient
  CHECK(kn.agree);
}
