#include "mees/interaction.hpp"

#include "mees/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace mees {

namespace {

using Index = Eigen::Index;

Index ix(std::size_t k) { return static_cast<Index>(k); }

constexpr double kUnitaryTol = 1e-8;
constexpr double kHermitianTol = 1e-10;

void require_lambda0(const SchmidtState& target) {
  if (!(target.weights()[0] > kZeroWeight)) {
    throw Error(ErrorCode::ZeroLambda0, "closed form needs lambda_0 > 0; use the unitary route");
  }
}

ComplexMatrix block_for(const SchmidtState& target, std::span<const double> levels) {
  const ComplexVector amps = target.amplitudes();
  return gram_schmidt_interaction_block(std::span<const cplx>(amps.data(), amps.size()), levels);
}

}  // namespace

std::string_view to_string(ApproachKind kind) {
  switch (kind) {
    case ApproachKind::Simple: return "simple";
    case ApproachKind::ModifiedSimple: return "modified-simple";
    case ApproachKind::GlobalUnitary: return "global-unitary";
    case ApproachKind::MssgA: return "mssg-a";
    case ApproachKind::MssgB: return "mssg-b";
  }
  return "simple";
}

std::optional<ApproachKind> parse_approach(std::string_view name) {
  for (ApproachKind k : kAllApproaches) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

bool is_unitary_approach(ApproachKind kind) {
  return kind == ApproachKind::GlobalUnitary || kind == ApproachKind::MssgA || kind == ApproachKind::MssgB;
}

bool requires_schmidt_target(ApproachKind kind) {
  return kind == ApproachKind::ModifiedSimple || kind == ApproachKind::MssgA || kind == ApproachKind::MssgB;
}

CouplingStrength v_strength(const BipartiteSystem& system, ApproachKind kind, double leak) {
  if (!(leak > 0.0 && leak < 1.0)) throw Error(ErrorCode::InvalidLeak, "leak must lie in (0, 1)");
  if (kind != ApproachKind::Simple && kind != ApproachKind::ModifiedSimple) {
    throw Error(ErrorCode::InvalidConfig, "coupling strength only applies to the simple approaches");
  }
  CouplingStrength v;
  v.kind = kind;
  v.leak = leak;
  v.gap = system.min_local_gap();
  v.bath_beta = std::log(1.0 / leak) / v.gap;
  v.levels = kind == ApproachKind::Simple ? system.ns() : system.na();
  v.value = v.gap * (1.0 + std::log(static_cast<double>(v.levels - 1)) / (v.bath_beta * v.gap));
  return v;
}

CouplingStrength fixed_strength(ApproachKind kind, double value) {
  if (!(value > 0.0)) throw Error(ErrorCode::InvalidConfig, "coupling must be positive");
  CouplingStrength v;
  v.kind = kind;
  v.value = value;
  v.leak = 0.0;
  return v;
}

DensePureState dense_target(const Target& target, const BipartiteSystem& system) {
  if (const auto* s = std::get_if<SchmidtState>(&target)) return embed(*s, system);
  const auto& d = std::get<DensePureState>(target);
  if (d.size() != system.ns()) throw Error(ErrorCode::DimensionMismatch, "state does not match system");
  return d;
}

InteractionHamiltonian h_simple(const DensePureState& target, const CouplingStrength& v, const BipartiteSystem& system) {
  if (target.size() != system.ns()) throw Error(ErrorCode::DimensionMismatch, "state does not match system");
  const ComplexVector& psi = target.amplitudes();
  ComplexMatrix h = -v.value * (psi * psi.adjoint());
  const auto e = system.product_energies();
  for (std::size_t k = 0; k < system.ns(); ++k) h(ix(k), ix(k)) -= e[k];
  return {std::move(h), ApproachKind::Simple, target};
}

InteractionHamiltonian h_modified_simple(const SchmidtState& target, const CouplingStrength& v,
                                         const BipartiteSystem& system) {
  const DensePureState dense = embed(target, system);
  const ComplexVector& psi = dense.amplitudes();
  ComplexMatrix h = -v.value * (psi * psi.adjoint());
  const auto e = system.diagonal_energies();
  for (std::size_t i = 0; i < system.na(); ++i) {
    const Index d = ix(system.diagonal_index(i));
    h(d, d) -= e[i];
  }
  return {std::move(h), ApproachKind::ModifiedSimple, target};
}

ComplexMatrix h_unitary(const ComplexMatrix& u, const BipartiteSystem& system) {
  if (u.rows() != ix(system.ns()) || u.cols() != ix(system.ns())) {
    throw Error(ErrorCode::DimensionMismatch, "unitary does not match system");
  }
  const double dev = verify_unitary(u).max_deviation();
  if (dev > kUnitaryTol) throw Error(ErrorCode::NotUnitary, "deviation " + std::to_string(dev));
  const auto e = system.product_energies();
  const Eigen::Map<const RealVector> diag(e.data(), ix(e.size()));
  ComplexMatrix h = u * diag.cast<cplx>().asDiagonal() * u.adjoint();
  for (std::size_t k = 0; k < system.ns(); ++k) h(ix(k), ix(k)) -= e[k];
  return h;
}

ComplexMatrix gram_schmidt_interaction_block(std::span<const cplx> amplitudes, std::span<const double> levels) {
  const std::size_t n = amplitudes.size();
  if (levels.size() < n) throw Error(ErrorCode::DimensionMismatch, "not enough levels");
  std::vector<double> lambda(n);
  for (std::size_t i = 0; i < n; ++i) lambda[i] = std::norm(amplitudes[i]);
  if (!(lambda[0] > kZeroWeight)) throw Error(ErrorCode::ZeroLambda0, "closed form needs lambda_0 > 0");

  std::vector<double> gamma(n);
  double tail = 0.0;
  for (std::size_t k = n; k-- > 1;) {
    gamma[k] = lambda[0] + tail;
    tail += lambda[k];
  }
  gamma[0] = lambda[0] + tail;

  // x[i] = X_i; prefix accumulates sum_{k<i} lambda_k e_k / (gamma_k gamma_{k-1}).
  const double e0 = levels[0];
  std::vector<double> x(n);
  double prefix = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    x[i] = e0 - levels[i] / gamma[i - 1] + prefix;
    prefix += lambda[i] * levels[i] / (gamma[i] * gamma[i - 1]);
  }
  x[0] = (e0 * (lambda[0] - 1.0) + lambda[0] * prefix) / lambda[0];

  ComplexMatrix block(ix(n), ix(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t alpha = (i == 0 || j == 0) ? std::max(i, j) : std::min(i, j);
      block(ix(i), ix(j)) = amplitudes[i] * std::conj(amplitudes[j]) * x[alpha];
    }
  return block;
}

InteractionHamiltonian h_global_closed_form(const SchmidtState& target, const BipartiteSystem& system) {
  if (target.size() != system.na()) throw Error(ErrorCode::DimensionMismatch, "Schmidt state must have N_A weights");
  require_lambda0(target);
  const ComplexMatrix k = block_for(target, system.diagonal_energies());
  ComplexMatrix h = ComplexMatrix::Zero(ix(system.ns()), ix(system.ns()));
  for (std::size_t i = 0; i < system.na(); ++i)
    for (std::size_t j = 0; j < system.na(); ++j)
      h(ix(system.diagonal_index(i)), ix(system.diagonal_index(j))) = k(ix(i), ix(j));
  return {std::move(h), ApproachKind::GlobalUnitary, target};
}

InteractionHamiltonian h_mssg_closed_form(Side side, const SchmidtState& target, const BipartiteSystem& system) {
  if (target.size() != system.na()) throw Error(ErrorCode::DimensionMismatch, "Schmidt state must have N_A weights");
  require_lambda0(target);
  const std::size_t na = system.na();
  const std::size_t nb = system.nb();
  const auto a = system.a().levels();
  const auto b = system.b().levels();
  ComplexMatrix h = ComplexMatrix::Zero(ix(system.ns()), ix(system.ns()));

  if (side == Side::A) {
    const ComplexMatrix k = block_for(target, a);
    for (std::size_t s = 0; s < na; ++s)
      for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
          cplx v = k(ix(i), ix(j));
          if (i == j) v += b[s] - b[(i + s) % na];
          h(ix(system.index(i, (i + s) % na)), ix(system.index(j, (j + s) % na))) = v;
        }
    for (std::size_t s = na; s < nb; ++s)
      for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) h(ix(system.index(i, s)), ix(system.index(j, s))) = k(ix(i), ix(j));
    return {std::move(h), ApproachKind::MssgA, target};
  }

  const ComplexMatrix k = block_for(target, b.first(na));
  for (std::size_t s = 0; s < na; ++s)
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < na; ++j) {
        cplx v = k(ix(i), ix(j));
        if (i == j) v += a[s] - a[(i + s) % na];
        h(ix(system.index((i + s) % na, i)), ix(system.index((j + s) % na, j))) = v;
      }
  return {std::move(h), ApproachKind::MssgB, target};
}

InteractionHamiltonian build_interaction(ApproachKind kind, const Target& target, const BipartiteSystem& system,
                                         double leak) {
  const auto* schmidt = std::get_if<SchmidtState>(&target);
  if (requires_schmidt_target(kind) && schmidt == nullptr) {
    throw Error(ErrorCode::InvalidConfig, std::string(to_string(kind)) + " only reaches Schmidt-form targets");
  }
  const bool closed = schmidt != nullptr && schmidt->weights()[0] > kZeroWeight;
  switch (kind) {
    case ApproachKind::Simple:
      return h_simple(dense_target(target, system), v_strength(system, kind, leak), system);
    case ApproachKind::ModifiedSimple:
      return h_modified_simple(*schmidt, v_strength(system, kind, leak), system);
    case ApproachKind::GlobalUnitary:
      if (closed) return h_global_closed_form(*schmidt, system);
      if (schmidt) return {h_unitary(build_us(system, *schmidt), system), kind, target};
      return {h_unitary(build_us_general(system, std::get<DensePureState>(target)), system), kind, target};
    case ApproachKind::MssgA:
    case ApproachKind::MssgB: {
      const Side side = kind == ApproachKind::MssgA ? Side::A : Side::B;
      if (closed) return h_mssg_closed_form(side, *schmidt, system);
      return {h_unitary(compose_tilde(side, system, *schmidt).matrix, system), kind, target};
    }
  }
  throw Error(ErrorCode::InvalidConfig, "unknown approach");
}

GroundState ground_state(const ComplexMatrix& h_total) {
  const double dev = hermiticity_deviation(h_total);
  if (dev > kHermitianTol) throw Error(ErrorCode::NotHermitian, "deviation " + std::to_string(dev));
  const Eigen::MatrixXcd h = 0.5 * (h_total + h_total.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::NotHermitian, "eigendecomposition failed");
  ComplexVector v = solver.eigenvectors().col(0);
  Index best = 0;
  for (Index k = 1; k < v.size(); ++k) {
    if (std::abs(v[k]) > std::abs(v[best]) + 1e-12) best = k;
  }
  v *= std::polar(1.0, -std::arg(v[best]));
  v[best] = std::abs(v[best]);
  return {solver.eigenvalues()[0], DensePureState::normalized(std::move(v))};
}

RealVector hermitian_spectrum(const ComplexMatrix& h) {
  const Eigen::MatrixXcd hs = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hs, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace mees
