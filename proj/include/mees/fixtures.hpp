#pragma once

// Closed-form two-qubit matrices, transcribed entry by entry. Basis order is
// |00>, |01>, |10>, |11> with sigma_z|0> = -|0>, so the local spectra are
// {-omega_X/2, +omega_X/2} rather than the shifted {0, omega_X}.

#include "mees/linalg.hpp"
#include "mees/states.hpp"
#include "mees/system.hpp"

#include <array>
#include <optional>
#include <string_view>

namespace mees::fixtures {

struct TwoQubitParams {
  double omega_a = 1.0;
  double omega_b = 1.0;
  double lambda = 0.5;
  double theta0 = 0.0;
  double theta1 = 0.0;

  double omega() const { return 0.5 * (omega_a + omega_b); }
  double delta_a() const { return 0.5 * (omega_a - omega_b); }
  double delta_b() const { return -delta_a(); }
};

enum class Fixture { US, UATilde, UBTilde, HSi, HSim, HS, HA, HB, HEmp };

inline constexpr std::array<Fixture, 9> kAllFixtures{Fixture::US, Fixture::UATilde, Fixture::UBTilde,
                                                     Fixture::HSi, Fixture::HSim, Fixture::HS,
                                                     Fixture::HA, Fixture::HB, Fixture::HEmp};

/// "US", "UA_tilde", "UB_tilde", "H_si", "H_sim", "H_S", "H_A", "H_B", "H_emp".
std::string_view to_string(Fixture f);
std::optional<Fixture> parse_fixture(std::string_view name);

/// `coupling` is V for H_si / H_sim and g for H_emp; ignored otherwise.
ComplexMatrix fixture(Fixture f, const TwoQubitParams& p, double coupling = 0.0);
/// Throws UnknownFixture for names parse_fixture rejects.
ComplexMatrix fixture(std::string_view name, const TwoQubitParams& p, double coupling = 0.0);

/// A = {-omega_a/2, omega_a/2}, B = {-omega_b/2, omega_b/2}.
BipartiteSystem two_qubit_system(const TwoQubitParams& p);
/// e^{i theta_0} sqrt(lambda) |00> + e^{i theta_1} sqrt(1 - lambda) |11>
SchmidtState two_qubit_target(const TwoQubitParams& p);

/// 1/lambda = 1 + e^{-2 beta omega}
double lambda_from_beta(double beta, double omega);
/// Inverse of lambda_from_beta; OutOfRange unless lambda lies in (1/2, 1).
double beta_from_lambda(double lambda, double omega);

}  // namespace mees::fixtures
