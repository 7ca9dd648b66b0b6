#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tq/ext/coframe.hpp"
#include "tq/gauge/gauge.hpp"
#include "tq/sym/calculus.hpp"
#include "tq/sym/numeric.hpp"

namespace tq::bundle {

using ext::Coframe;
using ext::Form;
using ext::MatrixForm;
using gauge::GroupElement;
using sym::Expr;

/// coordinate = value
struct Locus {
  std::string coordinate;
  Expr value;
};
std::string to_string(const Locus& l, const sym::Context& ctx);

/// Open subset: the chart minus `excluded`, carrying a local connection.
/// The chart's context may restrict coordinate ranges for this patch.
struct Patch {
  std::string name;
  ext::ChartPtr chart;
  std::vector<Locus> excluded;
  std::optional<Form> u1;
  std::optional<MatrixForm> so13;
};

enum class LocusKind { Gauge, Curvature, Chart };
const char* to_string(LocusKind k);

struct ClassifiedLocus {
  Locus locus;
  LocusKind kind = LocusKind::Gauge;
};

/// Loci where a frame component of the patch connection diverges, tagged
/// CURVATURE when `invariant` diverges there too, CHART when the locus is a
/// declared chart exclusion with a finite invariant, GAUGE otherwise.
/// Throws UnsupportedError for denominators whose zeros cannot be located.
std::vector<ClassifiedLocus> singular_loci(const Patch& p, const Coframe& c, const Expr& invariant);

/// Frame components of the patch connection evaluate finitely at `samples`
/// admissible points of the patch.
bool connection_finite(const Patch& p, const Coframe& c, int samples = 20, std::uint64_t seed = 0);

struct Transition {
  GroupElement g;
  std::string overlap;
};

/// Element g = exp(i chi) with A_a = A_b - i dchi. Throws tq::Error when
/// A_a - A_b is not closed.
Transition u1_transition(const Patch& a, const Patch& b, const std::string& overlap = "");

struct Atlas {
  std::vector<Patch> patches;
  std::map<std::pair<int, int>, Transition> transitions;  // (a, b): maps A_b to A_a
};

struct AtlasCheck {
  bool consistent = true;  // every transition maps A_b to A_a
  gauge::CocycleResult cocycle;
};
AtlasCheck check_atlas(const Atlas& atlas);

struct QuantizationCondition {
  Expr kappa;         // coefficient of the coordinate in the phase / angle
  std::string coordinate;
  Expr period;
  Expr lhs;           // kappa * period / (2 pi), definitions expanded
  std::string provenance;
  std::string to_string(const sym::Context& ctx) const;  // "lhs = n"
};

/// Single-valuedness of exp(i phase) (or of a rotation by `phase`) under
/// coordinate -> coordinate + period. Throws UnsupportedError for a phase
/// that is not linear in the coordinate, tq::Error for a non-periodic one.
QuantizationCondition quantize(const Expr& phase, const ext::Chart& chart, const std::string& coordinate,
                               const std::string& provenance = "");
QuantizationCondition quantize(const Transition& t, const ext::Chart& chart, const std::string& coordinate);

/// The integer a condition forces after substituting parameter values
/// (lhs evaluated and, when exact, returned as a rational).
std::optional<sym::Q> forced_value(const QuantizationCondition& q, const sym::Bindings& values,
                                   const sym::Context& ctx);

struct ChernForms {
  Form c1;     // (i/2pi) F, real
  Form unnormalized;  // i F, real: the unnormalized form c = -(e/r^2) dt^dr for RN
};
ChernForms chern_form(const Form& f);

struct Rectangle {
  std::string x;
  Expr x_lo, x_hi;
  std::string y;
  Expr y_lo, y_hi;
};

struct ChernNumber {
  Expr value;              // exact, or the numeric estimate as a rational
  bool numeric = false;
  double error = 0;        // quadrature error estimate when numeric
  std::optional<Expr> in_n;  // value rewritten through an active condition
  std::string orientation;   // "dx^dy"
};

/// Iterated integral of the (x,y) coefficient over the rectangle, with the
/// coordinate order of the chart as orientation. Falls back to adaptive
/// quadrature when no elementary antiderivative is found and `numeric`
/// binds every parameter.
ChernNumber chern_number(const Form& c, const Rectangle& region,
                         const std::optional<QuantizationCondition>& condition = std::nullopt,
                         const std::optional<sym::NumBindings>& numeric = std::nullopt);

/// Antiderivative in `v` for the elementary class used above. Throws UnsupportedError.
Expr antiderivative(const Expr& e, const std::string& v, const sym::Context& ctx);
Expr definite_integral(const Expr& e, const std::string& v, const Expr& lo, const Expr& hi, const sym::Context& ctx);

struct CEnergy {
  Expr value;      // in gamma0
  Expr quantized;  // in n, using exp(-gamma0) = n
  std::optional<Expr> n;  // exp(-gamma0) when gamma0 is not a symbol
};
/// variant 1: E = gamma0; variant 2: E = 1 - exp(-2 gamma0). `n` may be a
/// symbol or a number; variant 1 throws DomainError for a number n <= 0.
CEnergy c_energy(const Expr& gamma0, int variant, const Expr& n, const sym::Context& ctx);

}  // namespace tq::bundle
