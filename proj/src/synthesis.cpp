#include "mees/synthesis.hpp"

#include "mees/error.hpp"

#include <cmath>
#include <utility>

namespace mees {

namespace {

using Index = Eigen::Index;

Index ix(std::size_t k) { return static_cast<Index>(k); }

// First index with non-negligible weight; the vector must be normalized.
std::size_t first_populated(std::span<const double> weights) {
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > kZeroWeight) return i;
  }
  throw Error(ErrorCode::ZeroVector, "target has no populated level");
}

// gamma_k = lambda_0 + sum_{i>k} lambda_i; gamma_0 is the full sum.
std::vector<double> tail_gammas(std::span<const double> lambda) {
  const std::size_t n = lambda.size();
  std::vector<double> gamma(n);
  double tail = 0.0;
  for (std::size_t k = n; k-- > 1;) {
    gamma[k] = lambda[0] + tail;
    tail += lambda[k];
  }
  gamma[0] = lambda[0] + tail;
  return gamma;
}

ComplexMatrix swap_matrix(std::size_t dim, std::size_t i) {
  ComplexMatrix p = ComplexMatrix::Identity(ix(dim), ix(dim));
  p(0, 0) = 0.0;
  p(ix(i), ix(i)) = 0.0;
  p(0, ix(i)) = 1.0;
  p(ix(i), 0) = 1.0;
  return p;
}

ComplexMatrix embed_diagonal(const ComplexMatrix& local, const BipartiteSystem& system) {
  ComplexMatrix u = ComplexMatrix::Identity(ix(system.ns()), ix(system.ns()));
  for (std::size_t r = 0; r < system.na(); ++r)
    for (std::size_t c = 0; c < system.na(); ++c)
      u(ix(system.diagonal_index(r)), ix(system.diagonal_index(c))) = local(ix(r), ix(c));
  return u;
}

// local (x) I_B
ComplexMatrix kron_a(const ComplexMatrix& local, const BipartiteSystem& system) {
  ComplexMatrix u = ComplexMatrix::Zero(ix(system.ns()), ix(system.ns()));
  for (std::size_t r = 0; r < system.na(); ++r)
    for (std::size_t c = 0; c < system.na(); ++c)
      for (std::size_t j = 0; j < system.nb(); ++j)
        u(ix(system.index(r, j)), ix(system.index(c, j))) = local(ix(r), ix(c));
  return u;
}

// I_A (x) (local on the first N_A levels of B, identity above)
ComplexMatrix kron_b(const ComplexMatrix& local, const BipartiteSystem& system) {
  const std::size_t m = static_cast<std::size_t>(local.rows());
  ComplexMatrix u = ComplexMatrix::Zero(ix(system.ns()), ix(system.ns()));
  for (std::size_t i = 0; i < system.na(); ++i) {
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c)
        u(ix(system.index(i, r)), ix(system.index(i, c))) = local(ix(r), ix(c));
    for (std::size_t j = m; j < system.nb(); ++j) u(ix(system.index(i, j)), ix(system.index(i, j))) = 1.0;
  }
  return u;
}

ComplexMatrix local_unitary(const SchmidtState& target) {
  const ComplexVector amps = target.amplitudes();
  return gram_schmidt_basis(std::span<const cplx>(amps.data(), amps.size())).vectors;
}

// Rotation plan, relabeling 0 <-> i* first when lambda_0 vanishes.
GatePlan local_plan(const SchmidtState& target) {
  std::vector<double> w(target.weights().begin(), target.weights().end());
  std::vector<double> th(target.phases().begin(), target.phases().end());
  std::optional<std::size_t> swap;
  if (w[0] <= kZeroWeight) {
    const std::size_t s = first_populated(w);
    w[0] = 0.0;
    std::swap(w[0], w[s]);
    std::swap(th[0], th[s]);
    swap = s;
  }
  GatePlan plan = decompose_rotations(w, th);
  plan.swap_index = swap;
  return plan;
}

}  // namespace

std::string_view to_string(RotationFactor::Kind kind) {
  return kind == RotationFactor::Kind::Rotation ? "rotation" : "final-phase";
}

std::string_view to_string(CnotTag tag) {
  switch (tag) {
    case CnotTag::None: return "none";
    case CnotTag::OnA: return "on-A";
    case CnotTag::OnB: return "on-B";
  }
  return "none";
}

std::string_view to_string(Subsystem s) {
  switch (s) {
    case Subsystem::Whole: return "whole-S";
    case Subsystem::A: return "A";
    case Subsystem::B: return "B";
  }
  return "whole-S";
}

GramSchmidtBasis gram_schmidt_basis(std::span<const cplx> target) {
  const std::size_t n = target.size();
  if (n == 0) throw Error(ErrorCode::ZeroVector, "empty target");
  double norm2 = 0.0;
  for (const cplx& z : target) norm2 += std::norm(z);
  if (!(std::sqrt(norm2) >= 1e-12)) throw Error(ErrorCode::ZeroVector, "target norm below 1e-12");

  std::vector<cplx> c(target.begin(), target.end());
  for (cplx& z : c) z /= std::sqrt(norm2);
  std::vector<double> lambda(n);
  for (std::size_t i = 0; i < n; ++i) lambda[i] = std::norm(c[i]);

  GramSchmidtBasis basis;
  if (lambda[0] <= kZeroWeight) {
    const std::size_t s = first_populated(lambda);
    // Drop the negligible e_0 component so the working frame has it exactly 0.
    const double kept = std::sqrt(1.0 - lambda[0]);
    c[0] = 0.0;
    lambda[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      c[i] /= kept;
      lambda[i] /= kept * kept;
    }
    std::swap(c[0], c[s]);
    std::swap(lambda[0], lambda[s]);
    basis.swap_index = s;
  }

  basis.gammas = tail_gammas(lambda);
  const auto& g = basis.gammas;
  ComplexMatrix m = ComplexMatrix::Zero(ix(n), ix(n));
  for (std::size_t i = 0; i < n; ++i) m(ix(i), 0) = c[i];
  for (std::size_t k = 1; k < n; ++k) {
    const double denom = std::sqrt(g[k] * g[k - 1]);
    const cplx ck = std::conj(c[k]);
    m(0, ix(k)) = -c[0] * ck / denom;
    m(ix(k), ix(k)) = std::sqrt(g[k] / g[k - 1]);
    for (std::size_t i = k + 1; i < n; ++i) m(ix(i), ix(k)) = -c[i] * ck / denom;
  }
  if (basis.swap_index) m.row(0).swap(m.row(ix(*basis.swap_index)));
  basis.vectors = std::move(m);
  return basis;
}

GatePlan decompose_rotations(std::span<const double> weights, std::span<const double> phases) {
  const std::size_t n = weights.size();
  if (n == 0 || phases.size() != n) throw Error(ErrorCode::DimensionMismatch, "weights/phases mismatch");
  if (!(weights[0] > kZeroWeight)) {
    throw Error(ErrorCode::ZeroLambda0, "rotation decomposition needs lambda_0 > 0; relabel levels first");
  }
  const std::vector<double> g = tail_gammas(weights);
  GatePlan plan;
  plan.factors.reserve(n);
  for (std::size_t i = 1; i < n; ++i) {
    RotationFactor f;
    f.kind = RotationFactor::Kind::Rotation;
    f.index = i;
    f.c = std::sqrt(g[i] / g[i - 1]);
    f.s = std::sqrt(weights[i] / g[i - 1]);
    f.theta = phases[i];
    plan.factors.push_back(f);
  }
  RotationFactor last;
  last.kind = RotationFactor::Kind::FinalPhase;
  last.index = n;
  last.theta = phases[0];
  plan.factors.push_back(last);
  return plan;
}

ComplexMatrix factor_matrix(const RotationFactor& f, std::size_t dim) {
  ComplexMatrix u = ComplexMatrix::Identity(ix(dim), ix(dim));
  if (f.kind == RotationFactor::Kind::FinalPhase) {
    u(0, 0) = std::polar(1.0, f.theta);
    return u;
  }
  if (f.index == 0 || f.index >= dim) throw Error(ErrorCode::DimensionMismatch, "rotation index out of range");
  const Index i = ix(f.index);
  u(0, 0) = f.c;
  u(i, i) = f.c;
  u(i, 0) = std::polar(f.s, f.theta);
  u(0, i) = -std::polar(f.s, -f.theta);
  return u;
}

ComplexMatrix recompose_local(const GatePlan& plan, std::size_t dim) {
  ComplexMatrix u = ComplexMatrix::Identity(ix(dim), ix(dim));
  for (const RotationFactor& f : plan.factors) u = factor_matrix(f, dim) * u;
  // Swap first, then factors acting on relabeled levels: (P R P) P = P R.
  if (plan.swap_index) u = swap_matrix(dim, *plan.swap_index) * u;
  return u;
}

ComplexMatrix recompose(const GatePlan& plan, const BipartiteSystem& system) {
  const ComplexMatrix local = recompose_local(plan, system.na());
  ComplexMatrix u;
  switch (plan.acting) {
    case Subsystem::Whole: u = embed_diagonal(local, system); break;
    case Subsystem::A: u = kron_a(local, system); break;
    case Subsystem::B: u = kron_b(local, system); break;
  }
  if (plan.cnot == CnotTag::OnA) u = cnot_a(system) * u;
  if (plan.cnot == CnotTag::OnB) u = cnot_b(system) * u;
  return u;
}

ComplexMatrix build_us(const BipartiteSystem& system, const SchmidtState& target) {
  if (target.size() != system.na()) throw Error(ErrorCode::DimensionMismatch, "Schmidt state must have N_A weights");
  return embed_diagonal(local_unitary(target), system);
}

ComplexMatrix build_us_general(const BipartiteSystem& system, const DensePureState& target) {
  if (target.size() != system.ns()) throw Error(ErrorCode::DimensionMismatch, "state does not match system");
  const ComplexVector& a = target.amplitudes();
  return gram_schmidt_basis(std::span<const cplx>(a.data(), a.size())).vectors;
}

ComplexMatrix build_ua(const BipartiteSystem& system, const SchmidtState& target) {
  if (target.size() != system.na()) throw Error(ErrorCode::DimensionMismatch, "Schmidt state must have N_A weights");
  return kron_a(local_unitary(target), system);
}

ComplexMatrix build_ub(const BipartiteSystem& system, const SchmidtState& target) {
  if (target.size() != system.na()) throw Error(ErrorCode::DimensionMismatch, "Schmidt state must have N_A weights");
  return kron_b(local_unitary(target), system);
}

ComplexMatrix cnot_a(const BipartiteSystem& system) {
  const std::size_t na = system.na();
  ComplexMatrix u = ComplexMatrix::Zero(ix(system.ns()), ix(system.ns()));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < system.nb(); ++j) {
      const std::size_t jj = j < na ? (i + j) % na : j;
      u(ix(system.index(i, jj)), ix(system.index(i, j))) = 1.0;
    }
  return u;
}

ComplexMatrix cnot_b(const BipartiteSystem& system) {
  const std::size_t na = system.na();
  ComplexMatrix u = ComplexMatrix::Zero(ix(system.ns()), ix(system.ns()));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < system.nb(); ++j) {
      const std::size_t ii = j < na ? (i + j) % na : i;
      u(ix(system.index(ii, j)), ix(system.index(i, j))) = 1.0;
    }
  return u;
}

GatePlan plan_us(const SchmidtState& target) {
  GatePlan plan = local_plan(target);
  plan.acting = Subsystem::Whole;
  return plan;
}

TildeUnitary compose_tilde(Side side, const BipartiteSystem& system, const SchmidtState& target) {
  if (target.size() != system.na()) throw Error(ErrorCode::DimensionMismatch, "Schmidt state must have N_A weights");
  const ComplexMatrix local = local_unitary(target);
  TildeUnitary out;
  out.plan = local_plan(target);
  if (side == Side::A) {
    out.matrix = cnot_a(system) * kron_a(local, system);
    out.plan.acting = Subsystem::A;
    out.plan.cnot = CnotTag::OnA;
  } else {
    out.matrix = cnot_b(system) * kron_b(local, system);
    out.plan.acting = Subsystem::B;
    out.plan.cnot = CnotTag::OnB;
  }
  return out;
}

}  // namespace mees
