// Runs every acceptance criterion once and prints one PASS/FAIL line per
// criterion. Exit status is the number of failures.

#include "../unit/oracles.hpp"

#include "mees/error.hpp"
#include "mees/fixtures.hpp"
#include "mees/interaction.hpp"
#include "mees/montecarlo.hpp"
#include "mees/protocol.hpp"
#include "mees/synthesis.hpp"
#include "mees/thermal.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace mees;

namespace {

BipartiteSystem sys34() { return build_system(Spectrum({0, 2, 4}), Spectrum({0, 1, 6, 9})); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Haar-distributed Schmidt coefficients with independent phases.
SchmidtState haar_schmidt(std::size_t n, std::mt19937_64& rng) {
  const ComplexVector c = oracle::random_state(n, rng);
  std::vector<double> w(n), th(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = std::norm(c[static_cast<Eigen::Index>(i)]);
    th[i] = std::arg(c[static_cast<Eigen::Index>(i)]);
  }
  return SchmidtState(w, th);
}

// Dense amplitudes of a Schmidt target, built by hand.
ComplexVector dense(const SchmidtState& s, const BipartiteSystem& sys) {
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(sys.ns()));
  for (std::size_t i = 0; i < sys.na(); ++i)
    v[static_cast<Eigen::Index>(i * sys.nb() + i)] = std::polar(std::sqrt(s.weights()[i]), s.phases()[i]);
  return v;
}

// eta and E_exp straight from the expectation values: stored energy of the
// target, and the ground-state diagonal entry of H_I minus its target value.
std::pair<double, double> direct_report(const ComplexMatrix& h, const ComplexVector& psi, const BipartiteSystem& sys) {
  const auto& e = sys.product_energies();
  double stored = -e[0];
  for (Eigen::Index k = 0; k < psi.size(); ++k) stored += std::norm(psi[k]) * e[static_cast<std::size_t>(k)];
  cplx on_target = 0.0;
  for (Eigen::Index r = 0; r < psi.size(); ++r)
    for (Eigen::Index c = 0; c < psi.size(); ++c) on_target += std::conj(psi[r]) * h(r, c) * psi[c];
  const double e_exp = h(0, 0).real() - on_target.real();
  return {stored / e_exp, e_exp};
}

Outcome fixtures_equivalence() {
  using namespace mees::fixtures;
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> lam(0.01, 0.99), om(0.2, 4.0), th(-M_PI, M_PI);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    TwoQubitParams p;
    p.lambda = lam(rng);
    p.omega_a = om(rng);
    p.omega_b = om(rng);
    p.theta0 = th(rng);
    p.theta1 = th(rng);
    const BipartiteSystem s = two_qubit_system(p);
    const SchmidtState st = two_qubit_target(p);
    const double v = 0.5 + 0.05 * t;
    const std::vector<std::pair<ComplexMatrix, ComplexMatrix>> pairs{
        {build_us(s, st), fixture(Fixture::US, p)},
        {compose_tilde(Side::A, s, st).matrix, fixture(Fixture::UATilde, p)},
        {compose_tilde(Side::B, s, st).matrix, fixture(Fixture::UBTilde, p)},
        {h_simple(embed(st, s), fixed_strength(ApproachKind::Simple, v), s).matrix,
         fixture(Fixture::HSi, p, v)},
        {h_modified_simple(st, fixed_strength(ApproachKind::ModifiedSimple, v), s).matrix,
         fixture(Fixture::HSim, p, v)},
        {build_interaction(ApproachKind::GlobalUnitary, st, s).matrix, fixture(Fixture::HS, p)},
        {build_interaction(ApproachKind::MssgA, st, s).matrix, fixture(Fixture::HA, p)},
        {build_interaction(ApproachKind::MssgB, st, s).matrix, fixture(Fixture::HB, p)},
    };
    for (const auto& [built, fixed] : pairs) worst = std::max(worst, max_abs_diff(built, fixed));
  }
  std::ostringstream d;
  d << "50 draws, max entry error " << worst;
  return {worst < 1e-12, d.str()};
}

Outcome ground_state_suite() {
  const std::vector<BipartiteSystem> systems{build_system(Spectrum({0, 1}), Spectrum({0, 1.7})),
                                             build_system(Spectrum({0, 1}), Spectrum({0, 0.5, 3})), sys34()};
  std::mt19937_64 rng(202);
  double worst_fid = 1.0, worst_spec = 0.0;
  std::size_t cases = 0;
  for (const auto& s : systems) {
    std::vector<double> h0(s.product_energies().begin(), s.product_energies().end());
    std::sort(h0.begin(), h0.end());
    for (ApproachKind k : kAllApproaches) {
      for (int t = 0; t < 100; ++t) {
        Target target = haar_schmidt(s.na(), rng);
        ComplexVector want = dense(std::get<SchmidtState>(target), s);
        if (!requires_schmidt_target(k) && t % 2 == 1) {
          want = oracle::random_state(s.ns(), rng);
          target = DensePureState(want);
        }
        const InteractionHamiltonian h = build_interaction(k, target, s);
        const ComplexMatrix total = s.h0() + h.matrix;
        const GroundState g = ground_state(total);
        worst_fid = std::min(worst_fid, fidelity(g.state.amplitudes(), want));
        if (is_unitary_approach(k)) {
          Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(total, Eigen::EigenvaluesOnly);
          for (std::size_t i = 0; i < h0.size(); ++i)
            worst_spec = std::max(worst_spec, std::abs(es.eigenvalues()[static_cast<Eigen::Index>(i)] - h0[i]));
        }
        ++cases;
      }
    }
  }
  std::ostringstream d;
  d << cases << " targets, min fidelity 1-" << (1.0 - worst_fid) << ", max spectrum shift " << worst_spec;
  return {1.0 - worst_fid < 1e-9 && worst_spec < 1e-9, d.str()};
}

Outcome closed_vs_first_principles() {
  const auto s = sys34();
  std::mt19937_64 rng(303);
  double worst = 0.0;
  std::size_t cases = 0;
  std::vector<SchmidtState> targets;
  for (int t = 0; t < 400; ++t) targets.push_back(haar_schmidt(3, rng));
  for (double e : {0.1, 0.549, 1.0}) targets.push_back(solve_beta_g(s, e).state);
  for (const auto& st : targets) {
    const ComplexVector psi = dense(st, s);
    for (ApproachKind k : kAllApproaches) {
      const ProtocolReport cf = report(k, s, st);
      const auto [eta, e_exp] = direct_report(build_interaction(k, st, s).matrix, psi, s);
      worst = std::max({worst, std::abs(cf.eta - eta) / std::abs(eta), std::abs(cf.e_exp - e_exp) / std::abs(e_exp)});
      ++cases;
    }
  }
  std::ostringstream d;
  d << cases << " comparisons, max relative error " << worst;
  return {worst < 1e-9, d.str()};
}

Outcome inequality_suite() {
  const auto s = sys34();
  const double bound = 2.0 * (s.diagonal_energies().back() - s.diagonal_energies().front());
  std::vector<SchmidtState> targets;
  std::mt19937_64 rng(404);
  for (int t = 0; t < 1000; ++t) targets.push_back(haar_schmidt(3, rng));
  for (double e : uniform_entanglement_grid(s, 200)) targets.push_back(solve_beta_g(s, e).state);
  std::size_t violations = 0;
  double slack = 1e300;
  for (const auto& st : targets) {
    const double es = report(ApproachKind::GlobalUnitary, s, st).e_exp;
    const double ea = report(ApproachKind::MssgA, s, st).e_exp;
    const double eb = report(ApproachKind::MssgB, s, st).e_exp;
    const double simple = report(ApproachKind::Simple, s, st).e_exp;
    const double modified = report(ApproachKind::ModifiedSimple, s, st).e_exp;
    if (es < ea || es < eb || es > bound || modified > simple) ++violations;
    slack = std::min({slack, es - ea, es - eb, bound - es, simple - modified});
  }
  std::ostringstream d;
  d << targets.size() << " targets, " << violations << " violations, min slack " << slack;
  return {violations == 0, d.str()};
}

Outcome scan_orderings() {
  const auto s = sys34();
  const std::vector<ApproachKind> kinds{kAllApproaches.begin(), kAllApproaches.end()};
  const CurveScan scan = scan_mees_curve(s, kinds, uniform_entanglement_grid(s, 200));
  auto at = [&](ApproachKind k) -> const std::vector<CurvePoint>& {
    return scan.values[static_cast<std::size_t>(std::find(kinds.begin(), kinds.end(), k) - kinds.begin())];
  };
  const auto& simple = at(ApproachKind::Simple);
  const auto& modified = at(ApproachKind::ModifiedSimple);
  const auto& global = at(ApproachKind::GlobalUnitary);
  const auto& ma = at(ApproachKind::MssgA);
  const auto& mb = at(ApproachKind::MssgB);
  bool a = true, c = true;
  std::vector<double> crossings;
  for (std::size_t k = 0; k < scan.e_norm.size(); ++k) {
    if (!scan.errors[k].empty()) return {false, "grid point failed: " + scan.errors[k]};
    a = a && global[k].eta < ma[k].eta && global[k].eta < mb[k].eta;
    c = c && modified[k].e_exp_norm < simple[k].e_exp_norm;
    if (k > 0 && (ma[k].eta > mb[k].eta) != (ma[k - 1].eta > mb[k - 1].eta)) crossings.push_back(scan.e_norm[k]);
  }
  const bool b = !crossings.empty();
  std::ostringstream d;
  d << "(a) global worst " << (a ? "yes" : "no") << ", (b) MSSG crossing at e_norm";
  if (b) {
    for (double x : crossings) d << ' ' << x;
  } else {
    d << " none";
  }
  d << ", (c) modified below simple " << (c ? "yes" : "no");
  return {a && b && c, d.str()};
}

Outcome mees_dominance() {
  const auto s = sys34();
  SamplerConfig cfg;
  cfg.seed = 1;
  cfg.count = 1'000'000;
  cfg.measure = Measure::HaarFull;
  ScatterOptions opt;
  opt.keep_samples = true;
  bool pass = true;
  std::ostringstream d;
  for (ApproachKind k : {ApproachKind::Simple, ApproachKind::GlobalUnitary}) {
    const ScatterResult r = run_scatter(s, k, cfg, opt);
    const auto q = column_expense_quantile(r, 0.01, 100);
    std::size_t checked = 0, below = 0;
    double margin = 1e300;
    for (int c = 0; c < r.expense.bins_x(); ++c) {
      if (!q[static_cast<std::size_t>(c)]) continue;
      const double x = r.expense.center_x(c);
      const MeesSolution m = solve_beta_g(s, x * std::log(3.0));
      const double curve = report(k, s, m.state, opt.leak).e_exp / expense_norm(s);
      ++checked;
      if (curve < *q[static_cast<std::size_t>(c)]) ++below;
      margin = std::min(margin, *q[static_cast<std::size_t>(c)] - curve);
    }
    pass = pass && checked > 0 && below == checked;
    d << to_string(k) << ": " << below << "/" << checked << " columns, min margin " << margin << "; ";
  }
  return {pass, d.str()};
}

Outcome envelope_onset() {
  const auto s = sys34();
  bool pass = true;
  std::ostringstream d;
  for (std::uint64_t seed : {1, 2, 3}) {
    SamplerConfig cfg;
    cfg.seed = seed;
    cfg.count = 1'000'000;
    cfg.measure = Measure::HaarSchmidt;
    const ScatterResult r = run_scatter(s, ApproachKind::ModifiedSimple, cfg);
    const EnvelopeBreak b = envelope_break(r);
    const bool ok = b.onset && *b.onset >= 0.60 && *b.onset <= 0.66;
    pass = pass && ok;
    d << "seed " << seed << " onset ";
    if (b.onset) {
      d << *b.onset;
    } else {
      d << "none";
    }
    d << "; ";
  }
  return {pass, d.str()};
}

Outcome beta_grid_oracle() {
  const auto s = sys34();
  const std::vector<double> e(s.diagonal_energies().begin(), s.diagonal_energies().end());
  std::vector<double> targets;
  for (int k = 1; k <= 100; ++k) targets.push_back(k / 101.0 * std::log(3.0));
  // Entropy falls with beta, so one sweep over the grid finds every crossing.
  std::vector<double> grid_beta(targets.size(), -1.0);
  std::vector<std::size_t> order(targets.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return targets[x] > targets[y]; });
  std::size_t next = 0;
  const double step = 1e-5;
  for (std::size_t j = 0; next < order.size() && j <= 5'000'000; ++j) {
    const double beta = j * step;
    const double ent = oracle::gibbs_entropy(e, beta);
    while (next < order.size() && ent <= targets[order[next]]) grid_beta[order[next++]] = beta;
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (grid_beta[i] < 0.0) return {false, "grid never reached entanglement " + std::to_string(targets[i])};
    worst = std::max(worst, std::abs(solve_beta_g(s, targets[i]).beta_g - grid_beta[i]));
  }
  std::ostringstream d;
  d << "100 values, max |beta - grid beta| " << worst;
  return {worst < 1e-4, d.str()};
}

Outcome determinism() {
  const auto s = sys34();
  bool pass = true;
  std::ostringstream d;
  for (ApproachKind k : {ApproachKind::Simple, ApproachKind::GlobalUnitary, ApproachKind::MssgA}) {
    SamplerConfig cfg;
    cfg.seed = 2024;
    cfg.count = 100'000;
    cfg.measure = default_measure(k);
    cfg.workers = 1;
    const ScatterResult one = run_scatter(s, k, cfg);
    for (unsigned w : {4u, 8u}) {
      cfg.workers = w;
      const ScatterResult many = run_scatter(s, k, cfg);
      pass = pass && many.eta == one.eta && many.expense == one.expense && many.skipped == one.skipped;
    }
    d << to_string(k) << " ";
  }
  d << "at workers 1/4/8, " << (pass ? "identical" : "DIFFERENT") << " grids";
  return {pass, d.str()};
}

struct Criterion {
  const char* name;
  double budget_s;  // 0 for no runtime bound
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"fixture-equivalence", 1.0, fixtures_equivalence},
      {"ground-state-suite", 30.0, ground_state_suite},
      {"closed-form-vs-first-principles", 5.0, closed_vs_first_principles},
      {"inequality-suite", 10.0, inequality_suite},
      {"scan-orderings", 2.0, scan_orderings},
      {"mees-dominance", 600.0, mees_dominance},
      {"envelope-break", 0.0, envelope_onset},
      {"beta-g-grid-oracle", 5.0, beta_grid_oracle},
      {"montecarlo-determinism", 0.0, determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0.0 && secs > c.budget_s) {
      out.pass = false;
      out.detail += " (over the " + std::to_string(c.budget_s) + " s budget)";
    }
    if (!out.pass) ++failures;
    std::printf("%s %s [%.2fs] %s\n", out.pass ? "PASS" : "FAIL", c.name, secs, out.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
