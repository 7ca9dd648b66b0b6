#include "tq/ext/chart.hpp"

#include <set>

#include "tq/sym/error.hpp"
#include "tq/sym/numeric.hpp"

namespace tq::ext {

Chart::Chart(std::vector<Coordinate> coords, sym::Context ctx) : coords_(std::move(coords)), ctx_(std::move(ctx)) {
  std::set<std::string> seen;
  for (const auto& c : coords_) {
    if (!seen.insert(c.name).second) throw Error("coordinate '" + c.name + "' listed twice");
    if (!ctx_.is_coordinate(c.name)) {
      if (ctx_.is_declared(c.name)) throw Error("'" + c.name + "' is declared but not as a coordinate");
      ctx_.coordinate(c.name);
    }
    if (c.period) {
      bool numeric = sym::free_symbols(*c.period).empty();
      if (numeric && !(sym::eval_numeric(*c.period, {}) > 0)) throw Error("period of '" + c.name + "' is not positive");
    }
  }
}

int Chart::index(const std::string& name) const {
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

ChartPtr make_chart(std::vector<Coordinate> coords, sym::Context ctx) {
  return std::make_shared<const Chart>(std::move(coords), std::move(ctx));
}

ChartPtr with_context(const ChartPtr& chart, sym::Context ctx) {
  return std::make_shared<const Chart>(chart->coords(), std::move(ctx));
}

}  // namespace tq::ext
