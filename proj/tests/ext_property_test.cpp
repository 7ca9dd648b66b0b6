#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "tq/ext/coframe.hpp"
#include "tq/sym/numeric.hpp"

using namespace tq;
using namespace tq::ext;

namespace {

ChartPtr chart4() {
  sym::Context c;
  for (const char* n : {"x", "y", "z", "w"}) c.positive(n);
  return make_chart({{"x"}, {"y"}, {"z"}, {"w"}}, c);
}

Form random_form(test::TreeGen& gen, const ChartPtr& ch, int degree) {
  static const std::vector<std::vector<int>> tuples[5] = {
      {{}},
      {{0}, {1}, {2}, {3}},
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}},
      {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}},
      {{0, 1, 2, 3}}};
  Form f(ch, degree);
  for (const auto& idx : tuples[degree]) {
    if (gen.integer(0, 2) == 0) continue;
    f.accumulate(idx, gen.smooth(2));
  }
  return f;
}

}  // namespace

TEST_CASE("graded anticommutativity, Leibniz and d^2 = 0 on random forms") {
  auto ch = chart4();
  test::TreeGen gen(7001, {"x", "y", "z", "w"});
  int checked = 0;
  for (int i = 0; i < 500; ++i) {
    int p = gen.integer(0, 2), q = gen.integer(0, 2);
    Form a = random_form(gen, ch, p), b = random_form(gen, ch, q);
    Form ab = wedge(a, b), ba = wedge(b, a);
    CHECK(same_form(ab, (p * q) % 2 ? -ba : ba));
    Form lhs = d(ab);
    Form rhs = wedge(d(a), b) + (p % 2 ? -wedge(a, d(b)) : wedge(a, d(b)));
    CHECK(same_form(lhs, rhs));
    CHECK(d(d(a)).is_zero());
    ++checked;
  }
  CHECK(checked == 500);
}

TEST_CASE("frame round trip on random coframes") {
  auto ch = chart4();
  test::TreeGen gen(7002, {"x", "y", "z", "w"});
  int done = 0;
  for (int i = 0; i < 60; ++i) {
    // upper triangular with positive diagonal: invertible everywhere
    Matrix m(4, std::vector<Expr>(4, sym::num(0)));
    for (int a = 0; a < 4; ++a) {
      m[a][a] = sym::exp(gen.smooth(1));
      for (int b = a + 1; b < 4; ++b) {
        if (gen.coin()) m[a][b] = gen.smooth(1);
      }
    }
    Coframe c(ch, m);
    for (int p : {1, 2}) {
      Form f = random_form(gen, ch, p);
      CHECK(same_form(from_frame_basis(to_frame_basis(f, c), c), f));
    }
    ++done;
  }
  CHECK(done == 60);
}
