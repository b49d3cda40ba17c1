#pragma once

#include "mees/linalg.hpp"
#include "mees/states.hpp"
#include "mees/synthesis.hpp"
#include "mees/system.hpp"

#include <array>
#include <optional>
#include <string_view>
#include <variant>

namespace mees {

enum class ApproachKind { Simple, ModifiedSimple, GlobalUnitary, MssgA, MssgB };

inline constexpr std::array<ApproachKind, 5> kAllApproaches{
    ApproachKind::Simple, ApproachKind::ModifiedSimple, ApproachKind::GlobalUnitary, ApproachKind::MssgA,
    ApproachKind::MssgB};

std::string_view to_string(ApproachKind kind);
/// Accepts the names produced by to_string ("simple", "modified-simple",
/// "global-unitary", "mssg-a", "mssg-b").
std::optional<ApproachKind> parse_approach(std::string_view name);

/// True for the approaches whose interaction is U H_0 U^dagger - H_0.
bool is_unitary_approach(ApproachKind kind);
/// True for the approaches that can only reach Schmidt-form targets.
bool requires_schmidt_target(ApproachKind kind);

/// Coupling of the (modified) simple approaches, sized so that the thermal
/// population of the excited manifold matches that of H_0 at the bath
/// temperature implied by the leak epsilon = e^{-beta Delta}.
struct CouplingStrength {
  ApproachKind kind = ApproachKind::Simple;
  double value = 0.0;      // V_X
  double leak = 1e-3;      // epsilon
  double bath_beta = 0.0;  // ln(1/epsilon) / Delta
  double gap = 0.0;        // Delta = min(A_1 - A_0, B_1 - B_0)
  std::size_t levels = 0;  // N_X: N_S for Simple, N_A for ModifiedSimple
};

inline constexpr double kDefaultLeak = 1e-3;

CouplingStrength v_strength(const BipartiteSystem& system, ApproachKind kind, double leak = kDefaultLeak);

/// Explicit coupling value (the bath fields are left at zero).
CouplingStrength fixed_strength(ApproachKind kind, double value);

using Target = std::variant<SchmidtState, DensePureState>;

DensePureState dense_target(const Target& target, const BipartiteSystem& system);

struct InteractionHamiltonian {
  ComplexMatrix matrix;
  ApproachKind approach = ApproachKind::Simple;
  Target target;
};

/// -V |psi><psi| - H_0
InteractionHamiltonian h_simple(const DensePureState& target, const CouplingStrength& v, const BipartiteSystem& system);

/// -V |psi><psi| - sum_i E_i |E_i><E_i|, energies taken in the system's own frame.
InteractionHamiltonian h_modified_simple(const SchmidtState& target, const CouplingStrength& v,
                                         const BipartiteSystem& system);

/// U H_0 U^dagger - H_0. Throws NotUnitary if U deviates by more than 1e-8.
ComplexMatrix h_unitary(const ComplexMatrix& u, const BipartiteSystem& system);

/// Closed-form interaction of the global unitary: Lambda_{ij} X_alpha on the
/// diagonal-ket block, zero elsewhere. ZeroLambda0 if lambda_0 <= 1e-14.
InteractionHamiltonian h_global_closed_form(const SchmidtState& target, const BipartiteSystem& system);

/// Closed-form interaction of U~_A / U~_B.
InteractionHamiltonian h_mssg_closed_form(Side side, const SchmidtState& target, const BipartiteSystem& system);

/// N x N block Lambda_{ij} X_{alpha(i,j)} of U H U^dagger - H for a
/// Gram-Schmidt unitary U over levels with energies `levels` (lambda_0 > 0).
ComplexMatrix gram_schmidt_interaction_block(std::span<const cplx> amplitudes, std::span<const double> levels);

/// Interaction for any approach. Unitary approaches use the closed forms when
/// lambda_0 > 0 and the (swap-variant) unitary otherwise; GlobalUnitary with a
/// dense target goes through build_us_general.
InteractionHamiltonian build_interaction(ApproachKind kind, const Target& target, const BipartiteSystem& system,
                                         double leak = kDefaultLeak);

struct GroundState {
  double energy = 0.0;
  DensePureState state;
};

/// Lowest eigenpair of a Hermitian matrix. The phase is fixed by making the
/// largest-magnitude amplitude (first one on ties) real and positive.
GroundState ground_state(const ComplexMatrix& h_total);

/// Eigenvalues in ascending order.
RealVector hermitian_spectrum(const ComplexMatrix& h);

}  // namespace mees
