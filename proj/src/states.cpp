#include "mees/states.hpp"

#include "mees/error.hpp"
#include "mees/kernels.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace mees {

namespace {

constexpr double kSchmidtSumTol = 1e-12;
constexpr double kDenseNormTol = 1e-10;

}  // namespace

SchmidtState::SchmidtState(std::vector<double> weights, std::vector<double> phases)
    : weights_(std::move(weights)), phases_(std::move(phases)) {
  if (weights_.empty()) throw Error(ErrorCode::InvalidState, "empty weight list");
  if (phases_.size() != weights_.size()) {
    throw Error(ErrorCode::InvalidState, "weights and phases differ in length");
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw Error(ErrorCode::InvalidState, "weights must be finite and nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kSchmidtSumTol) {
    throw Error(ErrorCode::InvalidState, "weights sum to " + std::to_string(sum));
  }
}

SchmidtState SchmidtState::from_weights(std::vector<double> weights) {
  std::vector<double> phases(weights.size(), 0.0);
  return SchmidtState(std::move(weights), std::move(phases));
}

SchmidtState SchmidtState::from_amplitudes(std::span<const cplx> amplitudes) {
  double norm = 0.0;
  for (const cplx& c : amplitudes) norm += std::norm(c);
  if (!(norm > 1e-24)) throw Error(ErrorCode::ZeroVector, "amplitudes have zero norm");
  std::vector<double> w(amplitudes.size());
  std::vector<double> th(amplitudes.size());
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    w[i] = std::norm(amplitudes[i]) / norm;
    th[i] = std::arg(amplitudes[i]);
  }
  return SchmidtState(std::move(w), std::move(th));
}

cplx SchmidtState::amplitude(std::size_t i) const {
  return std::polar(std::sqrt(weights_[i]), phases_[i]);
}

ComplexVector SchmidtState::amplitudes() const {
  ComplexVector v(static_cast<Eigen::Index>(size()));
  for (std::size_t i = 0; i < size(); ++i) v[static_cast<Eigen::Index>(i)] = amplitude(i);
  return v;
}

DensePureState::DensePureState(ComplexVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw Error(ErrorCode::InvalidState, "empty state");
  const double n = amps_.squaredNorm();
  if (std::abs(std::sqrt(n) - 1.0) > kDenseNormTol) {
    throw Error(ErrorCode::InvalidState, "state norm deviates from 1 (|psi|^2 = " + std::to_string(n) + ")");
  }
}

DensePureState DensePureState::normalized(ComplexVector amplitudes) {
  const double n = amplitudes.norm();
  if (!(n >= 1e-12)) throw Error(ErrorCode::ZeroVector, "cannot normalize a zero vector");
  amplitudes /= n;
  return DensePureState(std::move(amplitudes));
}

DensePureState DensePureState::basis(std::size_t dim, std::size_t k) {
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  v[static_cast<Eigen::Index>(k)] = 1.0;
  return DensePureState(std::move(v));
}

double shannon_entropy(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities) {
    if (p >= kZeroWeight) s -= p * std::log(p);
  }
  return s;
}

double schmidt_entropy(const SchmidtState& state) { return shannon_entropy(state.weights()); }

double entanglement_entropy(const DensePureState& state, const BipartiteSystem& system) {
  if (state.size() != system.ns()) throw Error(ErrorCode::DimensionMismatch, "state does not match system");
  const auto na = static_cast<Eigen::Index>(system.na());
  const auto nb = static_cast<Eigen::Index>(system.nb());
  // Row-major reshape: row i holds the amplitudes of |A_i B_*>.
  Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      state.amplitudes().data(), na, nb);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const Eigen::VectorXd sv = svd.singularValues();
  std::vector<double> p(static_cast<std::size_t>(sv.size()));
  for (Eigen::Index k = 0; k < sv.size(); ++k) p[static_cast<std::size_t>(k)] = sv[k] * sv[k];
  return shannon_entropy(p);
}

DensePureState embed(const SchmidtState& state, const BipartiteSystem& system) {
  if (state.size() != system.na()) throw Error(ErrorCode::DimensionMismatch, "Schmidt state must have N_A weights");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(system.ns()));
  for (std::size_t i = 0; i < state.size(); ++i) {
    v[static_cast<Eigen::Index>(system.diagonal_index(i))] = state.amplitude(i);
  }
  return DensePureState(std::move(v));
}

double energy_expectation(const DensePureState& state, const BipartiteSystem& system) {
  if (state.size() != system.ns()) throw Error(ErrorCode::DimensionMismatch, "state does not match system");
  return kernels::active().weighted_abs2(state.amplitudes().data(), system.product_energies().data(), system.ns());
}

double energy_expectation(const SchmidtState& state, const BipartiteSystem& system) {
  if (state.size() != system.na()) throw Error(ErrorCode::DimensionMismatch, "Schmidt state must have N_A weights");
  const auto w = state.weights();
  const auto e = system.diagonal_energies();
  return std::inner_product(w.begin(), w.end(), e.begin(), 0.0);
}

}  // namespace mees
