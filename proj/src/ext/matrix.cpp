#include "tq/ext/matrix.hpp"

#include "tq/sym/error.hpp"
#include "tq/sym/print.hpp"
#include "tq/sym/simplify.hpp"

namespace tq::ext {

Matrix identity(std::size_t n) {
  Matrix m(n, std::vector<Expr>(n, sym::num(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = sym::num(1);
  return m;
}

int eta_sign(std::size_t a) { return a == 0 ? 1 : -1; }

Matrix eta() {
  Matrix m = identity(4);
  for (std::size_t i = 1; i < 4; ++i) m[i][i] = sym::num(-1);
  return m;
}

Matrix transpose(const Matrix& a) {
  if (a.empty()) return a;
  Matrix t(a[0].size(), std::vector<Expr>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  }
  return t;
}

Matrix matmul(const Matrix& a, const Matrix& b, const sym::Context& ctx) {
  std::size_t n = a.size();
  std::size_t k = b.size();
  std::size_t m = b.empty() ? 0 : b[0].size();
  Matrix c(n, std::vector<Expr>(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<Expr> terms;
      for (std::size_t l = 0; l < k; ++l) {
        if (a[i][l].is_zero() || b[l][j].is_zero()) continue;
        terms.push_back(sym::mul({a[i][l], b[l][j]}));
      }
      c[i][j] = sym::simplify(sym::add(std::move(terms)), ctx);
    }
  }
  return c;
}

Matrix simplify(const Matrix& a, const sym::Context& ctx) {
  Matrix out = a;
  for (auto& row : out) {
    for (auto& x : row) x = sym::simplify(x, ctx);
  }
  return out;
}

Matrix inverse(const Matrix& a, const sym::Context& ctx) {
  std::size_t n = a.size();
  Matrix m = simplify(a, ctx);
  Matrix inv = identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    // prefer the simplest nonzero pivot
    std::size_t best = 0;
    for (std::size_t r = col; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      std::size_t size = sym::node_count(m[r][col]);
      if (piv == n || size < best) {
        piv = r;
        best = size;
      }
    }
    if (piv == n) throw DomainError("singular matrix", "column " + std::to_string(col));
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    Expr p = sym::pow(m[col][col], -1);
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] = sym::simplify(sym::mul({m[col][j], p}), ctx);
      inv[col][j] = sym::simplify(sym::mul({inv[col][j], p}), ctx);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      Expr f = m[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        if (!m[col][j].is_zero()) m[r][j] = sym::simplify(m[r][j] - f * m[col][j], ctx);
        if (!inv[col][j].is_zero()) inv[r][j] = sym::simplify(inv[r][j] - f * inv[col][j], ctx);
      }
    }
  }
  return inv;
}

bool is_zero(const Matrix& a, const sym::Context& ctx) {
  for (const auto& row : a) {
    for (const auto& x : row) {
      if (!sym::is_zero(x, ctx)) return false;
    }
  }
  return true;
}

bool equal(const Matrix& a, const Matrix& b, const sym::Context& ctx) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      if (!sym::is_zero(a[i][j] - b[i][j], ctx)) return false;
    }
  }
  return true;
}

}  // namespace tq::ext
