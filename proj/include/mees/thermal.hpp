#pragma once

#include "mees/states.hpp"
#include "mees/system.hpp"

#include <optional>
#include <span>
#include <vector>

namespace mees {

/// Gibbs-form weights e^{-beta x_i} / sum_j e^{-beta x_j}; energies are shifted
/// by their minimum so nothing overflows. beta may be +infinity.
std::vector<double> thermal_weights(std::span<const double> energies, double beta);

/// Entropy (nats) of thermal_weights(energies, beta).
double thermal_entropy(std::span<const double> energies, double beta);

/// Finds beta >= 0 with thermal_entropy(energies, beta) == entropy by bisection.
/// The upper bracket grows geometrically from 1 until the entropy drops below
/// the target. Throws OutOfRange unless 0 < entropy < ln N, and NonMonotone
/// when all energies coincide.
double solve_thermal_beta(std::span<const double> energies, double entropy);

/// Z(beta) = sum_{i<N_A} e^{-beta (E_i - E_0)}. The E_0 shift keeps Z in
/// [1, N_A]; the true partition function is Z * e^{-beta E_0}.
double partition_function(const BipartiteSystem& system, double beta);

struct MeesSolution {
  double beta_g = 0.0;
  double z_g = 1.0;   // shifted convention, see partition_function
  double e_g = 0.0;   // <H_0>, in the system's own frame
  SchmidtState state;
};

/// MEES at a given inverse temperature (no root solve). Phases default to 0.
MeesSolution mees_from_beta(const BipartiteSystem& system, double beta,
                            std::optional<std::vector<double>> phases = std::nullopt);

/// MEES with the requested entropy of entanglement.
MeesSolution solve_beta_g(const BipartiteSystem& system, double entanglement,
                          std::optional<std::vector<double>> phases = std::nullopt);

}  // namespace mees
