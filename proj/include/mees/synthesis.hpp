#pragma once

#include "mees/linalg.hpp"
#include "mees/states.hpp"
#include "mees/system.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace mees {

enum class Side { A, B };

/// Orthonormal basis whose first vector is the target. Column k of `vectors`
/// is |psi_k>, so `vectors` is itself the unitary with U|e_0> = target.
struct GramSchmidtBasis {
  ComplexMatrix vectors;
  /// gamma_k = lambda_0 + sum_{i>k} lambda_i, in the working frame (after the
  /// 0 <-> i* relabeling when `swap_index` is set). gamma_0 = 1.
  std::vector<double> gammas;
  /// Set when the target has no weight on e_0: levels 0 and i* are exchanged
  /// before the construction.
  std::optional<std::size_t> swap_index;
};

GramSchmidtBasis gram_schmidt_basis(std::span<const cplx> target);

struct RotationFactor {
  enum class Kind { Rotation, FinalPhase };
  Kind kind = Kind::Rotation;
  std::size_t index = 0;
  double c = 1.0;      // sqrt(gamma_i / gamma_{i-1})
  double s = 0.0;      // sqrt(lambda_i / gamma_{i-1})
  double theta = 0.0;  // theta_i (theta_0 for the final phase)
};

enum class CnotTag { None, OnA, OnB };
enum class Subsystem { Whole, A, B };

/// Factors in application order: factors.front() acts first on the ket. When
/// `swap_index` is set, the factors were built for the target with levels 0
/// and i* exchanged and the full operator is SWAP * (factor product).
struct GatePlan {
  std::vector<RotationFactor> factors;
  std::optional<std::size_t> swap_index;
  CnotTag cnot = CnotTag::None;
  Subsystem acting = Subsystem::Whole;
};

std::string_view to_string(RotationFactor::Kind kind);
std::string_view to_string(CnotTag tag);
std::string_view to_string(Subsystem s);

/// Two-level rotations U_1..U_{N-1} and the final phase U_N such that
/// U_N ... U_1 e_0 = target. Requires lambda_0 > 0 (ZeroLambda0 otherwise).
GatePlan decompose_rotations(std::span<const double> weights, std::span<const double> phases);

/// N x N matrix of one factor.
ComplexMatrix factor_matrix(const RotationFactor& factor, std::size_t dim);

/// Ordered product of the plan's swap and factors on the N-level space it was
/// built for, without embedding or CNOT.
ComplexMatrix recompose_local(const GatePlan& plan, std::size_t dim);

/// Full N_S x N_S operator of a plan: local product embedded according to
/// `acting`, followed by the trailing CNOT.
ComplexMatrix recompose(const GatePlan& plan, const BipartiteSystem& system);

/// Global unitary: Gram-Schmidt over the diagonal kets, identity elsewhere.
ComplexMatrix build_us(const BipartiteSystem& system, const SchmidtState& target);

/// Global unitary for an arbitrary target, Gram-Schmidt over the whole
/// product basis in index order.
ComplexMatrix build_us_general(const BipartiteSystem& system, const DensePureState& target);

/// U_A (x) I_B
ComplexMatrix build_ua(const BipartiteSystem& system, const SchmidtState& target);
/// I_A (x) U_B with U_B acting on the first N_A levels of B.
ComplexMatrix build_ub(const BipartiteSystem& system, const SchmidtState& target);

/// |A_i B_j> -> |A_i B_{(i+j) mod N_A}> for j < N_A, identity for j >= N_A.
ComplexMatrix cnot_a(const BipartiteSystem& system);
/// |A_i B_j> -> |A_{(i+j) mod N_A} B_j> for j < N_A, identity for j >= N_A.
ComplexMatrix cnot_b(const BipartiteSystem& system);

/// Gate plan of the global unitary (acts on the diagonal-ket subspace).
GatePlan plan_us(const SchmidtState& target);

struct TildeUnitary {
  ComplexMatrix matrix;
  GatePlan plan;
};

/// U~_A = CNOT_A (U_A (x) I) or U~_B = CNOT_B (I (x) U_B).
TildeUnitary compose_tilde(Side side, const BipartiteSystem& system, const SchmidtState& target);

}  // namespace mees
