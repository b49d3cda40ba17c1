#include "mees/fixtures.hpp"

#include "mees/error.hpp"

#include <cmath>
#include <string>

namespace mees::fixtures {

namespace {

struct Common {
  double l, r, m;  // sqrt(lambda), sqrt(1 - lambda), sqrt(lambda (1 - lambda))
  cplx p0, p1, p01;  // e^{i theta_0}, e^{i theta_1}, e^{i (theta_0 - theta_1)}
};

Common common(const TwoQubitParams& p) {
  Common c;
  c.l = std::sqrt(p.lambda);
  c.r = std::sqrt(1.0 - p.lambda);
  c.m = std::sqrt(p.lambda * (1.0 - p.lambda));
  c.p0 = std::polar(1.0, p.theta0);
  c.p1 = std::polar(1.0, p.theta1);
  c.p01 = std::polar(1.0, p.theta0 - p.theta1);
  return c;
}

ComplexMatrix zero4() { return ComplexMatrix::Zero(4, 4); }

}  // namespace

std::string_view to_string(Fixture f) {
  switch (f) {
    case Fixture::US: return "US";
    case Fixture::UATilde: return "UA_tilde";
    case Fixture::UBTilde: return "UB_tilde";
    case Fixture::HSi: return "H_si";
    case Fixture::HSim: return "H_sim";
    case Fixture::HS: return "H_S";
    case Fixture::HA: return "H_A";
    case Fixture::HB: return "H_B";
    case Fixture::HEmp: return "H_emp";
  }
  return "US";
}

std::optional<Fixture> parse_fixture(std::string_view name) {
  for (Fixture f : kAllFixtures) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

ComplexMatrix fixture(Fixture f, const TwoQubitParams& p, double coupling) {
  const Common c = common(p);
  const double lam = p.lambda;
  const double w = p.omega();
  ComplexMatrix m = zero4();
  switch (f) {
    case Fixture::US:
      m(0, 0) = c.p0 * c.l;
      m(0, 3) = -c.p01 * c.r;
      m(1, 1) = 1.0;
      m(2, 2) = 1.0;
      m(3, 0) = c.p1 * c.r;
      m(3, 3) = c.l;
      break;
    case Fixture::UATilde:
      m(0, 0) = c.p0 * c.l;
      m(0, 2) = -c.p01 * c.r;
      m(1, 1) = c.p0 * c.l;
      m(1, 3) = -c.p01 * c.r;
      m(2, 1) = c.p1 * c.r;
      m(2, 3) = c.l;
      m(3, 0) = c.p1 * c.r;
      m(3, 2) = c.l;
      break;
    case Fixture::UBTilde:
      m(0, 0) = c.p0 * c.l;
      m(0, 1) = -c.p01 * c.r;
      m(1, 2) = c.p1 * c.r;
      m(1, 3) = c.l;
      m(2, 2) = c.p0 * c.l;
      m(2, 3) = -c.p01 * c.r;
      m(3, 0) = c.p1 * c.r;
      m(3, 1) = c.l;
      break;
    case Fixture::HSi:
      m(0, 0) = w - coupling * lam;
      m(0, 3) = -c.p01 * coupling * c.m;
      m(1, 1) = p.delta_a();
      m(2, 2) = p.delta_b();
      m(3, 0) = -std::conj(c.p01) * coupling * c.m;
      m(3, 3) = -coupling * (1.0 - lam) - w;
      break;
    case Fixture::HSim:
      m(0, 0) = w - coupling * lam;
      m(0, 3) = -c.p01 * coupling * c.m;
      m(3, 0) = -std::conj(c.p01) * coupling * c.m;
      m(3, 3) = -coupling * (1.0 - lam) - w;
      break;
    case Fixture::HS:
      m(0, 0) = 1.0 - lam;
      m(0, 3) = -c.p01 * c.m;
      m(3, 0) = -std::conj(c.p01) * c.m;
      m(3, 3) = lam - 1.0;
      m *= 2.0 * w;
      break;
    case Fixture::HA: {
      const double ratio = p.omega_b / p.omega_a;
      m(0, 0) = 1.0 - lam;
      m(0, 3) = -c.p01 * c.m;
      m(1, 1) = 1.0 - lam;
      m(1, 2) = -c.p01 * c.m;
      m(2, 1) = -std::conj(c.p01) * c.m;
      m(2, 2) = lam - 1.0 + ratio;
      m(3, 0) = -std::conj(c.p01) * c.m;
      m(3, 3) = lam - 1.0 - ratio;
      m *= p.omega_a;
      break;
    }
    case Fixture::HB: {
      const double ratio = p.omega_a / p.omega_b;
      m(0, 0) = 1.0 - lam;
      m(0, 3) = -c.p01 * c.m;
      m(1, 1) = lam - 1.0 + ratio;
      m(1, 2) = -std::conj(c.p01) * c.m;
      m(2, 1) = -c.p01 * c.m;
      m(2, 2) = 1.0 - lam;
      m(3, 0) = -std::conj(c.p01) * c.m;
      m(3, 3) = lam - 1.0 - ratio;
      m *= p.omega_b;
      break;
    }
    case Fixture::HEmp:
      m(0, 3) = coupling;
      m(3, 0) = coupling;
      break;
  }
  return m;
}

ComplexMatrix fixture(std::string_view name, const TwoQubitParams& p, double coupling) {
  const auto f = parse_fixture(name);
  if (!f) throw Error(ErrorCode::UnknownFixture, "unknown fixture '" + std::string(name) + "'");
  return fixture(*f, p, coupling);
}

BipartiteSystem two_qubit_system(const TwoQubitParams& p) {
  if (!(p.omega_a > 0.0 && p.omega_b > 0.0)) throw Error(ErrorCode::InvalidConfig, "qubit frequencies must be positive");
  return build_system(Spectrum({-0.5 * p.omega_a, 0.5 * p.omega_a}), Spectrum({-0.5 * p.omega_b, 0.5 * p.omega_b}));
}

SchmidtState two_qubit_target(const TwoQubitParams& p) {
  return SchmidtState({p.lambda, 1.0 - p.lambda}, {p.theta0, p.theta1});
}

double lambda_from_beta(double beta, double omega) { return 1.0 / (1.0 + std::exp(-2.0 * beta * omega)); }

double beta_from_lambda(double lambda, double omega) {
  if (!(lambda > 0.5 && lambda < 1.0)) throw Error(ErrorCode::OutOfRange, "lambda must lie in (1/2, 1)");
  if (!(omega > 0.0)) throw Error(ErrorCode::InvalidConfig, "omega must be positive");
  return -std::log(1.0 / lambda - 1.0) / (2.0 * omega);
}

}  // namespace mees::fixtures
