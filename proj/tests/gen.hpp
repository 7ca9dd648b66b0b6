#pragma once

// Random expression trees for the property suites.

#include <random>

#include "tq/sym/expr.hpp"

namespace tq::test {

class TreeGen {
 public:
  explicit TreeGen(std::uint64_t seed, std::vector<std::string> names = {"x", "y", "z"})
      : rng_(seed), names_(std::move(names)) {}

  sym::Expr tree(int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 11);
    switch (pick(rng_)) {
      case 0: return leaf_number();
      case 1: return sym::sym(name());
      case 2:
      case 3: return sym::add({tree(depth - 1), tree(depth - 1)});
      case 4:
      case 5: return sym::mul({tree(depth - 1), tree(depth - 1)});
      case 6: return sym::mul({tree(depth - 1), sym::pow(tree(depth - 1), -1)});
      case 7: {
        static const int ks[] = {2, 3, -1, -2};
        return sym::pow(tree(depth - 1), ks[std::uniform_int_distribution<int>(0, 3)(rng_)]);
      }
      case 8: return sym::sqrt(tree(depth - 1));
      case 9: return coin() ? sym::sin(tree(depth - 1)) : sym::cos(tree(depth - 1));
      case 10: return sym::exp(tree(depth - 1));
      default: return sym::ln(tree(depth - 1));
    }
  }

  // polynomial/trig/exp trees without poles or roots, for derivative checks
  sym::Expr smooth(int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7);
    switch (pick(rng_)) {
      case 0: return leaf_number();
      case 1: return sym::sym(name());
      case 2: return sym::add({smooth(depth - 1), smooth(depth - 1)});
      case 3:
      case 4: return sym::mul({smooth(depth - 1), smooth(depth - 1)});
      case 5: return sym::pow(smooth(depth - 1), 2);
      case 6: return coin() ? sym::sin(smooth(depth - 1)) : sym::cos(smooth(depth - 1));
      default: return sym::exp(sym::mul({sym::num(sym::Q(1, 4)), smooth(depth - 1)}));
    }
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return std::uniform_int_distribution<int>(0, 1)(rng_) == 1; }
  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::vector<std::string> names_;

  std::string name() { return names_[std::uniform_int_distribution<std::size_t>(0, names_.size() - 1)(rng_)]; }

  sym::Expr leaf_number() {
    static const sym::Q vals[] = {sym::Q(1), sym::Q(2), sym::Q(3), sym::Q(-1), sym::Q(1, 2), sym::Q(-3, 2), sym::Q(5)};
    return sym::num(vals[std::uniform_int_distribution<int>(0, 6)(rng_)]);
  }
};

}  // namespace tq::test
