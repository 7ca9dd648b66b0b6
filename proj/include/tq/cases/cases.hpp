#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tq/bundle/bundle.hpp"
#include "tq/cartan/cartan.hpp"
#include "tq/gauge/gauge.hpp"

namespace tq::cases {

using ext::Coframe;
using ext::Form;
using ext::MatrixForm;
using sym::Expr;

/// One golden comparison: an engine result against a printed form.
struct Check {
  std::string name;
  std::string derived;
  std::string expected;
  bool pass = false;
  std::string note;
};

Check compare(const std::string& name, const Expr& derived, const Expr& expected, const sym::Context& ctx,
              const std::string& note = "");
bool all_pass(const std::vector<Check>& checks);

// ---------------------------------------------------------------- Einstein-Rosen

/// psi, gamma either unknown functions of (t, rho) or closed forms; series
/// data, when declared in `ctx`, describes the behaviour at rho = 0.
struct ErFamily {
  std::string name;
  sym::Context ctx;
  std::optional<Expr> psi;
  std::optional<Expr> gamma;
};

ErFamily er_generic();
/// psi = a ln(rho), gamma = a^2 ln(rho)
ErFamily er_levi_civita();
ErFamily er_flat();
/// psi' ~ rho^2 near the axis: psi = psi0 + c rho^3, gamma = gamma0 + 3/2 c^2 rho^6
ErFamily er_axis_series();

struct EinsteinRosenCase {
  ErFamily family;
  ext::ChartPtr chart;
  std::shared_ptr<Coframe> coframe;
  MatrixForm omega;
  cartan::FieldCheck field;
  std::vector<Check> checks;
};
EinsteinRosenCase einstein_rosen(const ErFamily& family = er_generic());

struct AxisReport {
  bool regular = false;
  std::vector<std::pair<std::string, std::string>> limits;  // marker -> value at rho = 0
  std::vector<Check> checks;
  std::string reason;
};
AxisReport er_axis_regularity(const ErFamily& family);

struct ErQuantization {
  MatrixForm primed;
  std::vector<Check> checks;  // primed components and their axis limits
  bundle::QuantizationCondition condition;
  bundle::CEnergy energy1;
  bundle::CEnergy energy2;
};
/// Gauge fix with exp(exp(-gamma0) phi T_phi); `gamma0` may be a number.
ErQuantization er_quantize(const std::optional<Expr>& gamma0 = std::nullopt);

// ---------------------------------------------------------------- monopole

struct MonopoleCase {
  ext::ChartPtr chart;        // linearized context (m, g tagged)
  ext::ChartPtr exact_chart;  // same coordinates, no truncation
  std::shared_ptr<Coframe> coframe;
  Form a1_frame;
  Form a2_frame;
  bundle::Atlas atlas;  // patches U1 (index 0), U2 (index 1); transition (1, 0)
  bundle::Transition g12;
  bundle::QuantizationCondition condition;
  std::vector<bundle::ClassifiedLocus> loci1;
  std::vector<bundle::ClassifiedLocus> loci2;
  bundle::ChernNumber chern;
  std::vector<Check> checks;
};
MonopoleCase weak_field_monopole();

// ---------------------------------------------------------------- Reissner-Nordstrom

struct RnCase {
  ext::ChartPtr chart;
  std::shared_ptr<Coframe> coframe;
  Form potential;  // coordinate basis, imaginary tag
  Form a_frame;
  Form a1_frame;
  Form a2_frame;
  bundle::Atlas atlas;  // U1 = (0, r+) index 0, U2 = (r-, inf) index 1; transition (0, 1)
  bundle::QuantizationCondition condition;
  std::vector<bundle::ClassifiedLocus> loci;
  bundle::ChernForms chern_forms;
  bundle::ChernNumber chern;
  cartan::FieldCheck field;
  Expr kretschmann;
  std::vector<Check> checks;
};
/// `e` = 0 is rejected: the u(1) connection does not exist.
RnCase reissner_nordstrom(const std::optional<Expr>& m = std::nullopt, const std::optional<Expr>& e = std::nullopt);

// ---------------------------------------------------------------- Kerr-Newman

struct KnCase {
  ext::ChartPtr chart;
  Expr derived;  // transition-phase coefficient, definitions expanded
  Expr printed;  // 2 e^3 sqrt(m^2-a^2-e^2) / (e^4 + 4 a^2 m^2)
  bool agree = false;
  bool agree_symbolic = false;
  std::vector<Check> checks;
};
KnCase kerr_newman();

}  // namespace tq::cases
