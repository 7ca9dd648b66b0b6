#pragma once

#include <vector>

#include "tq/sym/context.hpp"
#include "tq/sym/expr.hpp"

namespace tq::ext {

using sym::Expr;
using Matrix = std::vector<std::vector<Expr>>;

Matrix identity(std::size_t n);
/// diag(+1,-1,-1,-1)
Matrix eta();
int eta_sign(std::size_t a);
Matrix transpose(const Matrix& a);
Matrix matmul(const Matrix& a, const Matrix& b, const sym::Context& ctx);
Matrix simplify(const Matrix& a, const sym::Context& ctx);
/// Gauss-Jordan over normal forms. Throws DomainError on a zero pivot column.
Matrix inverse(const Matrix& a, const sym::Context& ctx);
bool is_zero(const Matrix& a, const sym::Context& ctx);
bool equal(const Matrix& a, const Matrix& b, const sym::Context& ctx);

}  // namespace tq::ext
