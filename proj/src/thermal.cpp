#include "mees/thermal.hpp"

#include "mees/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mees {

namespace {

constexpr int kMaxBisections = 400;
constexpr double kBetaCeiling = 1e300;

// exp(-beta * gap) with beta = inf and gap = 0 giving 1.
double boltzmann(double beta, double gap) {
  if (gap == 0.0) return 1.0;
  return std::exp(-beta * gap);
}

}  // namespace

std::vector<double> thermal_weights(std::span<const double> energies, double beta) {
  if (energies.empty()) throw Error(ErrorCode::EmptySpectrum, "no energies");
  if (!(beta >= 0.0)) throw Error(ErrorCode::OutOfRange, "beta must be nonnegative");
  const double lo = *std::min_element(energies.begin(), energies.end());
  std::vector<double> w(energies.size());
  double z = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    w[i] = boltzmann(beta, energies[i] - lo);
    z += w[i];
  }
  for (double& x : w) x /= z;
  return w;
}

double thermal_entropy(std::span<const double> energies, double beta) {
  if (energies.empty()) throw Error(ErrorCode::EmptySpectrum, "no energies");
  if (!(beta >= 0.0)) throw Error(ErrorCode::OutOfRange, "beta must be nonnegative");
  if (std::isinf(beta)) {
    const double lo = *std::min_element(energies.begin(), energies.end());
    return std::log(static_cast<double>(std::count(energies.begin(), energies.end(), lo)));
  }
  // S = beta <x> + ln Z with x_i = E_i - min E.
  const double lo = *std::min_element(energies.begin(), energies.end());
  double z = 0.0;
  double mean = 0.0;
  for (double e : energies) {
    const double x = e - lo;
    const double b = boltzmann(beta, x);
    z += b;
    mean += b * x;
  }
  mean /= z;
  return beta * mean + std::log(z);
}

double solve_thermal_beta(std::span<const double> energies, double entropy) {
  if (energies.size() < 2) throw Error(ErrorCode::EmptySpectrum, "need at least two energies");
  const auto [lo_it, hi_it] = std::minmax_element(energies.begin(), energies.end());
  if (*lo_it == *hi_it) {
    throw Error(ErrorCode::NonMonotone, "all energies coincide; entropy does not depend on beta");
  }
  const double s_max = std::log(static_cast<double>(energies.size()));
  const double s_min = thermal_entropy(energies, std::numeric_limits<double>::infinity());
  if (!(entropy > s_min) || !(entropy < s_max)) {
    throw Error(ErrorCode::OutOfRange, "entanglement " + std::to_string(entropy) + " outside (" +
                                           std::to_string(s_min) + ", " + std::to_string(s_max) + ")");
  }

  double lo = 0.0;
  double hi = 1.0;
  while (thermal_entropy(energies, hi) >= entropy) {
    lo = hi;
    hi *= 2.0;
    if (hi > kBetaCeiling) throw Error(ErrorCode::OutOfRange, "entanglement too close to its lower limit");
  }
  // Invariant: S(lo) >= entropy > S(hi).
  for (int it = 0; it < kMaxBisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (thermal_entropy(energies, mid) >= entropy) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double s_lo = thermal_entropy(energies, lo);
  const double s_hi = thermal_entropy(energies, hi);
  return (s_lo - entropy) <= (entropy - s_hi) ? lo : hi;
}

double partition_function(const BipartiteSystem& system, double beta) {
  if (!(beta >= 0.0)) throw Error(ErrorCode::OutOfRange, "beta must be nonnegative");
  const auto e = system.diagonal_energies();
  double z = 0.0;
  for (double x : e) z += boltzmann(beta, x - e[0]);
  return z;
}

MeesSolution mees_from_beta(const BipartiteSystem& system, double beta, std::optional<std::vector<double>> phases) {
  const auto e = system.diagonal_energies();
  std::vector<double> w = thermal_weights(e, beta);
  std::vector<double> th = phases ? std::move(*phases) : std::vector<double>(w.size(), 0.0);
  if (th.size() != w.size()) throw Error(ErrorCode::DimensionMismatch, "need one phase per diagonal level");
  MeesSolution sol{beta, partition_function(system, beta), 0.0, SchmidtState(w, std::move(th))};
  for (std::size_t i = 0; i < w.size(); ++i) sol.e_g += w[i] * e[i];
  return sol;
}

MeesSolution solve_beta_g(const BipartiteSystem& system, double entanglement, std::optional<std::vector<double>> phases) {
  const double beta = solve_thermal_beta(system.diagonal_energies(), entanglement);
  return mees_from_beta(system, beta, std::move(phases));
}

}  // namespace mees
