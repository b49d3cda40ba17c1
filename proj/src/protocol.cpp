#include "mees/protocol.hpp"

#include "mees/error.hpp"
#include "mees/kernels.hpp"
#include "mees/thermal.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace mees {

namespace {

constexpr double kZeroExpense = 1e-14;

ProtocolReport make_report(ApproachKind kind, ReportMethod method, double stored, double e_exp) {
  if (std::abs(stored) < kZeroExpense && std::abs(e_exp) < kZeroExpense) {
    throw Error(ErrorCode::ZeroEntanglementTarget, "target has no stored energy; efficiency undefined");
  }
  ProtocolReport r;
  r.approach = kind;
  r.method = method;
  r.stored = stored;
  r.e_exp = e_exp;
  r.eta = stored / e_exp;
  return r;
}

void check_size(const SchmidtState& target, const BipartiteSystem& system) {
  if (target.size() != system.na()) throw Error(ErrorCode::DimensionMismatch, "Schmidt state must have N_A weights");
}

struct Expenses {
  double stored, lambda0, global, mssg_a, mssg_b;
};

Expenses closed_forms(const BipartiteSystem& system, const SchmidtState& target) {
  check_size(target, system);
  if (!(target.weights()[0] > kZeroWeight)) {
    throw Error(ErrorCode::ZeroLambda0, "closed form needs lambda_0 > 0; use the unitary route");
  }
  Expenses out{};
  kernels::SchmidtBlock in;
  in.lambda = target.weights().data();
  in.stride = 1;
  in.count = 1;
  in.levels = system.na();
  in.e = system.diagonal_energies().data();
  in.a = system.a().levels().data();
  in.b = system.b().levels().data();
  kernels::scalar().schmidt_expense(in, {&out.stored, &out.lambda0, &out.global, &out.mssg_a, &out.mssg_b});
  return out;
}

}  // namespace

std::string_view to_string(ReportMethod method) {
  return method == ReportMethod::ClosedForm ? "closed-form" : "first-principles";
}

ProtocolReport protocol_report_first_principles(const InteractionHamiltonian& h_i, const BipartiteSystem& system) {
  const DensePureState psi = dense_target(h_i.target, system);
  const ComplexMatrix& h = h_i.matrix;
  if (h.rows() != static_cast<Eigen::Index>(system.ns())) {
    throw Error(ErrorCode::DimensionMismatch, "interaction does not match system");
  }
  const Eigen::Index g = static_cast<Eigen::Index>(system.diagonal_index(0));
  const double on_ground = h(g, g).real();
  const double on_target = psi.amplitudes().dot(h * psi.amplitudes()).real();
  const double stored = energy_expectation(psi, system) - system.ground_energy();
  return make_report(h_i.approach, ReportMethod::FirstPrinciples, stored, on_ground - on_target);
}

ProtocolReport report_simple(const BipartiteSystem& system, const Target& target, const CouplingStrength& v) {
  double stored = 0.0;
  double lambda0 = 0.0;
  if (const auto* s = std::get_if<SchmidtState>(&target)) {
    check_size(*s, system);
    stored = energy_expectation(*s, system) - system.ground_energy();
    lambda0 = s->weights()[0];
  } else {
    if (v.kind == ApproachKind::ModifiedSimple) {
      throw Error(ErrorCode::InvalidConfig, "modified-simple only reaches Schmidt-form targets");
    }
    const auto& d = std::get<DensePureState>(target);
    if (d.size() != system.ns()) throw Error(ErrorCode::DimensionMismatch, "state does not match system");
    stored = energy_expectation(d, system) - system.ground_energy();
    lambda0 = std::norm(d[system.diagonal_index(0)]);
  }
  return make_report(v.kind, ReportMethod::ClosedForm, stored, stored + v.value * (1.0 - lambda0));
}

ProtocolReport report_global_unitary(const BipartiteSystem& system, const SchmidtState& target) {
  const auto r = closed_forms(system, target);
  return make_report(ApproachKind::GlobalUnitary, ReportMethod::ClosedForm, r.stored, r.global);
}

ProtocolReport report_mssg(Side side, const BipartiteSystem& system, const SchmidtState& target) {
  const auto r = closed_forms(system, target);
  if (side == Side::A) return make_report(ApproachKind::MssgA, ReportMethod::ClosedForm, r.stored, r.mssg_a);
  return make_report(ApproachKind::MssgB, ReportMethod::ClosedForm, r.stored, r.mssg_b);
}

ProtocolReport report_from_unitary(ApproachKind kind, const ComplexMatrix& u, const BipartiteSystem& system,
                                   const DensePureState& target) {
  if (u.rows() != static_cast<Eigen::Index>(system.ns()) || target.size() != system.ns()) {
    throw Error(ErrorCode::DimensionMismatch, "unitary or state does not match system");
  }
  const auto& k = kernels::active();
  const auto e = system.product_energies();
  const Eigen::Index g = static_cast<Eigen::Index>(system.diagonal_index(0));
  const double rotated = k.weighted_abs2(u.row(g).data(), e.data(), system.ns());
  const double mean = k.weighted_abs2(target.amplitudes().data(), e.data(), system.ns());
  const double e0 = system.ground_energy();
  return make_report(kind, ReportMethod::FirstPrinciples, mean - e0, rotated - 2.0 * e0 + mean);
}

ProtocolReport report(ApproachKind kind, const BipartiteSystem& system, const Target& target, double leak) {
  const auto* schmidt = std::get_if<SchmidtState>(&target);
  if (requires_schmidt_target(kind) && schmidt == nullptr) {
    throw Error(ErrorCode::InvalidConfig, std::string(to_string(kind)) + " only reaches Schmidt-form targets");
  }
  const bool closed = schmidt != nullptr && schmidt->weights()[0] > kZeroWeight;
  switch (kind) {
    case ApproachKind::Simple:
    case ApproachKind::ModifiedSimple:
      return report_simple(system, target, v_strength(system, kind, leak));
    case ApproachKind::GlobalUnitary:
      if (closed) return report_global_unitary(system, *schmidt);
      if (schmidt) return report_from_unitary(kind, build_us(system, *schmidt), system, embed(*schmidt, system));
      {
        const auto& d = std::get<DensePureState>(target);
        return report_from_unitary(kind, build_us_general(system, d), system, d);
      }
    case ApproachKind::MssgA:
    case ApproachKind::MssgB: {
      const Side side = kind == ApproachKind::MssgA ? Side::A : Side::B;
      if (closed) return report_mssg(side, system, *schmidt);
      return report_from_unitary(kind, compose_tilde(side, system, *schmidt).matrix, system, embed(*schmidt, system));
    }
  }
  throw Error(ErrorCode::InvalidConfig, "unknown approach");
}

SchmidtState minimize_expense_modified_simple(const BipartiteSystem& system, double entanglement, double v_l) {
  if (!(v_l >= 0.0)) throw Error(ErrorCode::InvalidConfig, "V_L must be nonnegative");
  const auto e = system.diagonal_energies();
  std::vector<double> fictitious(e.size());
  fictitious[0] = 0.0;
  for (std::size_t i = 1; i < e.size(); ++i) fictitious[i] = e[i] - e[0] + v_l;
  const double beta = solve_thermal_beta(fictitious, entanglement);
  return SchmidtState::from_weights(thermal_weights(fictitious, beta));
}

}  // namespace mees
