#pragma once

#include "mees/interaction.hpp"
#include "mees/states.hpp"
#include "mees/system.hpp"

#include <string_view>

namespace mees {

enum class ReportMethod { ClosedForm, FirstPrinciples };

std::string_view to_string(ReportMethod method);

struct ProtocolReport {
  double eta = 0.0;
  double e_exp = 0.0;
  double stored = 0.0;  // <H_0>_target - E_0
  ApproachKind approach = ApproachKind::Simple;
  ReportMethod method = ReportMethod::ClosedForm;
};

/// eta = stored / E_exp with E_exp = <H_I>_{E_0} - <H_I>_target, both taken
/// directly from the matrix. ZeroEntanglementTarget when both vanish.
ProtocolReport protocol_report_first_principles(const InteractionHamiltonian& h_i, const BipartiteSystem& system);

/// Closed form of the (modified) simple approach; v.kind selects which.
/// ModifiedSimple needs a Schmidt-form target.
ProtocolReport report_simple(const BipartiteSystem& system, const Target& target, const CouplingStrength& v);

/// General-offset closed forms of the unitary approaches (lambda_0 > 0).
ProtocolReport report_global_unitary(const BipartiteSystem& system, const SchmidtState& target);
ProtocolReport report_mssg(Side side, const BipartiteSystem& system, const SchmidtState& target);

/// E_exp of H_I = U H_0 U^dagger - H_0 from row E_0 of U only:
/// sum_k e_k |U_{0k}|^2 - 2 E_0 + <H_0>_target. Works for any target and any
/// unitary with U|E_0> = target.
ProtocolReport report_from_unitary(ApproachKind kind, const ComplexMatrix& u, const BipartiteSystem& system,
                                   const DensePureState& target);

/// Closed form where one exists, otherwise the unitary route (lambda_0 = 0 or
/// a dense target for GlobalUnitary).
ProtocolReport report(ApproachKind kind, const BipartiteSystem& system, const Target& target,
                      double leak = kDefaultLeak);

/// Schmidt state with the given entanglement that minimizes the modified-simple
/// expense: thermal weights over E~_0 = 0, E~_i = E_i - E_0 + V_L.
SchmidtState minimize_expense_modified_simple(const BipartiteSystem& system, double entanglement, double v_l);

}  // namespace mees
