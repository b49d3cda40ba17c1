#pragma once

#include "mees/linalg.hpp"
#include "mees/system.hpp"

#include <span>
#include <vector>

namespace mees {

/// Weights below this are treated as exactly zero in entropies and synthesis.
inline constexpr double kZeroWeight = 1e-14;

/// sum_i e^{i theta_i} sqrt(lambda_i) |E_i> over the diagonal kets.
class SchmidtState {
 public:
  SchmidtState(std::vector<double> weights, std::vector<double> phases);

  /// All phases zero.
  static SchmidtState from_weights(std::vector<double> weights);
  /// lambda_i = |c_i|^2, theta_i = arg c_i after normalizing c.
  static SchmidtState from_amplitudes(std::span<const cplx> amplitudes);

  std::span<const double> weights() const { return weights_; }
  std::span<const double> phases() const { return phases_; }
  std::size_t size() const { return weights_.size(); }
  cplx amplitude(std::size_t i) const;
  ComplexVector amplitudes() const;

 private:
  std::vector<double> weights_;
  std::vector<double> phases_;
};

/// Normalized amplitudes over the product basis (index i * N_B + j).
class DensePureState {
 public:
  explicit DensePureState(ComplexVector amplitudes);
  static DensePureState normalized(ComplexVector amplitudes);
  static DensePureState basis(std::size_t dim, std::size_t k);

  const ComplexVector& amplitudes() const { return amps_; }
  std::size_t size() const { return static_cast<std::size_t>(amps_.size()); }
  cplx operator[](std::size_t k) const { return amps_[static_cast<Eigen::Index>(k)]; }

 private:
  ComplexVector amps_;
};

/// -sum p ln p with entries below kZeroWeight dropped.
double shannon_entropy(std::span<const double> probabilities);

double schmidt_entropy(const SchmidtState& state);

/// Von Neumann entropy (nats) of the reduced state, from the singular values of
/// the N_A x N_B amplitude matrix.
double entanglement_entropy(const DensePureState& state, const BipartiteSystem& system);

DensePureState embed(const SchmidtState& state, const BipartiteSystem& system);

/// <psi|H_0|psi>
double energy_expectation(const DensePureState& state, const BipartiteSystem& system);

/// sum_i lambda_i E_i
double energy_expectation(const SchmidtState& state, const BipartiteSystem& system);

}  // namespace mees
