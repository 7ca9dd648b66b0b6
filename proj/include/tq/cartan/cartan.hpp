#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tq/ext/coframe.hpp"
#include "tq/sym/calculus.hpp"
#include "tq/sym/numeric.hpp"

namespace tq::cartan {

using ext::Coframe;
using ext::Form;
using ext::Matrix;
using ext::MatrixForm;
using sym::Expr;

/// Metric connection w^a_b (coordinate-basis 1-forms, so(1,3) tag).
/// Throws tq::Error if the structure-equation residual or the lowered
/// antisymmetry fails to vanish.
MatrixForm solve_connection(const Coframe& c);

/// de^a + w^a_b ^ e^b, one 2-form per a.
std::vector<Form> verify_first_structure(const Coframe& c, const MatrixForm& w);
bool all_zero(const std::vector<Form>& forms);

/// Omega = dw + w ^ w.
MatrixForm curvature(const MatrixForm& w);
/// F = dA for an imaginary-tagged 1-form; the A ^ A term is checked to vanish.
Form curvature(const Form& a);

/// dOmega + w ^ Omega - Omega ^ w.
MatrixForm bianchi_residual(const MatrixForm& w, const MatrixForm& omega);

/// R^a_{bcd} with Omega^a_b = 1/2 R^a_{bcd} e^c ^ e^d.
struct Riemann {
  std::vector<Expr> r = std::vector<Expr>(256, sym::num(0));
  Expr& operator()(int a, int b, int c, int d) { return r[((a * 4 + b) * 4 + c) * 4 + d]; }
  const Expr& operator()(int a, int b, int c, int d) const { return r[((a * 4 + b) * 4 + c) * 4 + d]; }
};

Riemann riemann_components(const MatrixForm& omega, const Coframe& c);
/// R_bd = R^a_{bad}
Matrix ricci(const Riemann& R, const sym::Context& ctx);
Expr ricci_scalar(const Matrix& ric, const sym::Context& ctx);
/// G_ab = R_ab - 1/2 eta_ab R, frame indices down.
Matrix einstein_tensor(const Riemann& R, const sym::Context& ctx);
/// R_abcd R^abcd
Expr kretschmann(const Riemann& R, const sym::Context& ctx);

/// Everything derived from a coframe in one pass.
struct Geometry {
  MatrixForm omega;
  MatrixForm curvature;
  Riemann riemann;
  Matrix einstein;
};
Geometry geometry(const Coframe& c);

enum class Source { Vacuum, Electromagnetic };

struct StressEnergy {
  Matrix t;  // frame indices down
  Source source = Source::Vacuum;
};

StressEnergy vacuum();
/// T_ab = (1/4pi)(-F_ac F_b^c + 1/4 eta_ab F_cd F^cd) for signature (+,-,-,-),
/// with F the real part of the imaginary-tagged field strength.
StressEnergy em_stress_energy(const Form& f, const Coframe& c);
Expr trace(const StressEnergy& t, const sym::Context& ctx);
/// F_cd F^cd of the real part of a u(1) field strength, frame indices.
Expr field_invariant(const Form& f, const Coframe& c);

/// Constraints imposed before deciding whether G - 8 pi T vanishes.
struct Constraints {
  std::vector<sym::MarkerRule> markers;
  sym::Bindings functions;  // closed-form values for unknown functions
};

struct FieldCheck {
  bool pass = false;
  bool symbolic = false;  // decided without numeric probing
  Matrix residual;
  std::optional<sym::NumBindings> witness;
  std::string failing;  // "G[0][1]" etc.
};

FieldCheck verify_field_equations(const Coframe& c, const StressEnergy& source, const Constraints& k = {},
                                  std::uint64_t seed = 0);
FieldCheck verify_field_equations(const Geometry& g, const Coframe& c, const StressEnergy& source,
                                  const Constraints& k = {}, std::uint64_t seed = 0);

}  // namespace tq::cartan
