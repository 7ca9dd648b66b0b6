#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tq/sym/context.hpp"
#include "tq/sym/expr.hpp"

namespace tq::ext {

using sym::Expr;

struct Coordinate {
  std::string name;
  std::optional<Expr> lo = {};
  std::optional<Expr> hi = {};
  std::optional<Expr> period = {};  // set for periodic coordinates
  std::vector<Expr> excluded = {};  // name = value is not part of the chart
};

/// Ordered coordinates plus the symbolic context (parameters, unknown
/// functions, assumptions) every coefficient on the chart is read against.
class Chart {
 public:
  Chart(std::vector<Coordinate> coords, sym::Context ctx);

  std::size_t dim() const { return coords_.size(); }
  const Coordinate& coord(std::size_t i) const { return coords_[i]; }
  const std::vector<Coordinate>& coords() const { return coords_; }
  const std::string& name(std::size_t i) const { return coords_[i].name; }
  /// Position of `name`, or -1.
  int index(const std::string& name) const;
  const sym::Context& context() const { return ctx_; }

 private:
  std::vector<Coordinate> coords_;
  sym::Context ctx_;
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::vector<Coordinate> coords, sym::Context ctx);

/// Same coordinates, different context (e.g. extra assumptions for a patch).
ChartPtr with_context(const ChartPtr& chart, sym::Context ctx);

}  // namespace tq::ext
