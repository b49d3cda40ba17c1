// mees: command-line front end. Exit codes: 0 success, 2 domain error,
// 64 usage error.

#include "mees/error.hpp"
#include "mees/interaction.hpp"
#include "mees/io.hpp"
#include "mees/montecarlo.hpp"
#include "mees/protocol.hpp"
#include "mees/synthesis.hpp"
#include "mees/thermal.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using mees::io::json;

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string spectra;
  std::string system_file;
  std::optional<double> entanglement;
  std::optional<double> beta_g;
  std::string weights;
  std::string phases;
  std::vector<std::string> approaches;
  std::string op = "US";
  std::string measure;
  double epsilon = mees::kDefaultLeak;
  std::uint64_t seed = 1;
  std::uint64_t count = 1'000'000;
  int bins = 200;
  std::size_t points = 200;
  unsigned workers = 1;
  std::string out_dir = ".";
  bool check = false;
};

std::vector<double> parse_doubles(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": not a number: '" + item + "'");
    }
  }
  return out;
}

mees::BipartiteSystem load_system(const Options& o) {
  if (o.spectra.empty() == o.system_file.empty()) throw UsageError("give exactly one of --spectra or --system-file");
  if (!o.system_file.empty()) return mees::io::load_system(o.system_file);
  try {
    return mees::io::parse_spectra(o.spectra);
  } catch (const mees::Error& e) {
    if (e.code() == mees::ErrorCode::InvalidConfig) throw UsageError(std::string("--spectra: ") + e.what());
    throw;
  }
}

mees::ApproachKind approach_of(const std::string& name) {
  const auto k = mees::parse_approach(name);
  if (!k) {
    throw UsageError("unknown approach '" + name +
                     "' (expected simple, modified-simple, global-unitary, mssg-a, mssg-b)");
  }
  return *k;
}

mees::MeesSolution mees_of(const mees::BipartiteSystem& system, const Options& o) {
  if (o.entanglement.has_value() == o.beta_g.has_value()) throw UsageError("give exactly one of --entanglement or --beta-g");
  if (o.entanglement) return mees::solve_beta_g(system, *o.entanglement);
  return mees::mees_from_beta(system, *o.beta_g);
}

// Target from --weights/--phases, or the MEES selected by --entanglement/--beta-g.
mees::SchmidtState target_of(const mees::BipartiteSystem& system, const Options& o) {
  if (!o.weights.empty()) {
    if (o.entanglement || o.beta_g) throw UsageError("--weights cannot be combined with --entanglement/--beta-g");
    std::vector<double> w = parse_doubles(o.weights, "--weights");
    std::vector<double> p = o.phases.empty() ? std::vector<double>(w.size(), 0.0) : parse_doubles(o.phases, "--phases");
    if (w.size() != system.na() || p.size() != system.na()) {
      throw UsageError("--weights/--phases need " + std::to_string(system.na()) + " values");
    }
    return mees::SchmidtState(std::move(w), std::move(p));
  }
  mees::MeesSolution s = mees_of(system, o);
  if (!o.phases.empty()) {
    std::vector<double> p = parse_doubles(o.phases, "--phases");
    if (p.size() != system.na()) throw UsageError("--phases needs " + std::to_string(system.na()) + " values");
    return mees::SchmidtState(std::vector<double>(s.state.weights().begin(), s.state.weights().end()), std::move(p));
  }
  return s.state;
}

json config_json(const std::string& command, const Options& o, const mees::BipartiteSystem& system) {
  json j{{"command", command}, {"system", mees::io::system_to_json(system)}, {"epsilon", o.epsilon}};
  if (o.entanglement) j["entanglement"] = *o.entanglement;
  if (o.beta_g) j["beta_g"] = *o.beta_g;
  if (!o.weights.empty()) j["weights"] = o.weights;
  if (!o.phases.empty()) j["phases"] = o.phases;
  if (!o.approaches.empty()) j["approaches"] = o.approaches;
  return j;
}

fs::path out_dir(const Options& o) {
  fs::path dir(o.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw mees::Error(mees::ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
  return dir;
}

std::string fmt(double v) { return mees::io::format_double(v); }

int cmd_mees(const Options& o) {
  const auto system = load_system(o);
  const mees::MeesSolution s = mees_of(system, o);
  std::cout << "beta_g " << fmt(s.beta_g) << "\nz_g " << fmt(s.z_g) << "\ne_g " << fmt(s.e_g) << "\nentanglement "
            << fmt(mees::schmidt_entropy(s.state)) << "\nweights";
  for (double w : s.state.weights()) std::cout << ' ' << fmt(w);
  std::cout << '\n';
  json j = mees::io::to_json(s);
  j["entanglement"] = mees::schmidt_entropy(s.state);
  j["config"] = config_json("mees", o, system);
  mees::io::write_json(out_dir(o) / "mees.json", j);
  return 0;
}

int cmd_synth(const Options& o) {
  const auto system = load_system(o);
  const mees::SchmidtState target = target_of(system, o);
  mees::ComplexMatrix u;
  std::optional<mees::GatePlan> plan;
  if (o.op == "US") {
    u = mees::build_us(system, target);
    plan = mees::plan_us(target);
  } else if (o.op == "UA" || o.op == "UB") {
    auto t = mees::compose_tilde(o.op == "UA" ? mees::Side::A : mees::Side::B, system, target);
    u = std::move(t.matrix);
    plan = std::move(t.plan);
  } else {
    throw UsageError("unknown operator '" + o.op + "' (expected US, UA, UB)");
  }
  const mees::DensePureState psi = mees::embed(target, system);
  const double fid = mees::fidelity(psi.amplitudes(), u.col(static_cast<Eigen::Index>(system.diagonal_index(0))));
  const double dev = mees::verify_unitary(u).max_deviation();
  const double plan_dev = mees::max_abs_diff(mees::recompose(*plan, system), u);
  std::cout << "operator " << o.op << "\nfidelity " << fmt(fid) << "\nunitarity_deviation " << fmt(dev)
            << "\nplan_deviation " << fmt(plan_dev) << "\nfactors " << plan->factors.size() << '\n';
  json j{{"operator", o.op},
         {"matrix", mees::io::to_json(u)},
         {"plan", mees::io::to_json(*plan)},
         {"fidelity", fid},
         {"unitarity_deviation", dev},
         {"config", config_json("synth", o, system)}};
  mees::io::write_json(out_dir(o) / ("unitary_" + o.op + ".json"), j);
  return 0;
}

int cmd_hamiltonian(const Options& o) {
  if (o.approaches.size() != 1) throw UsageError("hamiltonian takes exactly one --approach");
  const mees::ApproachKind kind = approach_of(o.approaches.front());
  const auto system = load_system(o);
  const mees::SchmidtState target = target_of(system, o);
  const mees::InteractionHamiltonian h = mees::build_interaction(kind, target, system, o.epsilon);
  const mees::ProtocolReport fp = mees::protocol_report_first_principles(h, system);
  const mees::ProtocolReport cf = mees::report(kind, system, target, o.epsilon);
  const mees::GroundState gs = mees::ground_state(system.h0() + h.matrix);
  const double fid = mees::fidelity(gs.state.amplitudes(), mees::embed(target, system).amplitudes());
  std::cout << "approach " << mees::to_string(kind) << "\neta " << fmt(cf.eta) << "\ne_exp " << fmt(cf.e_exp)
            << "\nmethod " << mees::to_string(cf.method) << "\neta_first_principles " << fmt(fp.eta)
            << "\ne_exp_first_principles " << fmt(fp.e_exp) << "\nground_state_fidelity " << fmt(fid) << '\n';
  const fs::path dir = out_dir(o);
  const std::string stem = std::string(mees::to_string(kind));
  mees::io::write_json(dir / ("h_i_" + stem + ".json"),
                       json{{"approach", stem}, {"matrix", mees::io::to_json(h.matrix)},
                            {"config", config_json("hamiltonian", o, system)}});
  json rep = mees::io::to_json(cf);
  rep["first_principles"] = mees::io::to_json(fp);
  rep["ground_state_fidelity"] = fid;
  rep["config"] = config_json("hamiltonian", o, system);
  mees::io::write_json(dir / ("report_" + stem + ".json"), rep);
  return 0;
}

std::vector<mees::ApproachKind> approach_set(const Options& o) {
  std::vector<mees::ApproachKind> out;
  if (o.approaches.empty()) return {mees::kAllApproaches.begin(), mees::kAllApproaches.end()};
  for (const auto& a : o.approaches) {
    if (a.empty()) continue;
    out.push_back(approach_of(a));
  }
  if (out.empty()) throw UsageError("empty approach set");
  return out;
}

int check_scan(const mees::CurveScan& scan) {
  auto find = [&](mees::ApproachKind k) -> const std::vector<mees::CurvePoint>* {
    for (std::size_t a = 0; a < scan.approaches.size(); ++a)
      if (scan.approaches[a] == k) return &scan.values[a];
    return nullptr;
  };
  int failures = 0;
  auto require = [&](mees::ApproachKind lo, mees::ApproachKind hi, const char* what) {
    const auto* l = find(lo);
    const auto* h = find(hi);
    if (!l || !h) return;
    for (std::size_t k = 0; k < scan.e_norm.size(); ++k) {
      if (!((*l)[k].e_exp_norm <= (*h)[k].e_exp_norm)) {
        std::cerr << "check failed: " << what << " at e_norm " << fmt(scan.e_norm[k]) << '\n';
        ++failures;
        return;
      }
    }
    std::cout << "check ok: " << what << '\n';
  };
  require(mees::ApproachKind::MssgA, mees::ApproachKind::GlobalUnitary, "E_exp(mssg-a) <= E_exp(global-unitary)");
  require(mees::ApproachKind::MssgB, mees::ApproachKind::GlobalUnitary, "E_exp(mssg-b) <= E_exp(global-unitary)");
  require(mees::ApproachKind::ModifiedSimple, mees::ApproachKind::Simple, "E_exp(modified-simple) <= E_exp(simple)");
  for (const auto& e : scan.errors) {
    if (!e.empty()) {
      std::cerr << "check failed: grid point error: " << e << '\n';
      ++failures;
      break;
    }
  }
  return failures == 0 ? 0 : kExitDomain;
}

int cmd_scan(const Options& o) {
  const auto approaches = approach_set(o);
  if (o.points < 1) throw UsageError("--points must be at least 1");
  const auto system = load_system(o);
  const auto t0 = std::chrono::steady_clock::now();
  const mees::CurveScan scan =
      mees::scan_mees_curve(system, approaches, mees::uniform_entanglement_grid(system, o.points), o.epsilon);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const fs::path dir = out_dir(o);
  mees::io::write_curve_scan(dir / "scan.csv", scan);
  json side = config_json("scan", o, system);
  side["points"] = o.points;
  side["y_norm"] = scan.y_norm;
  mees::io::write_json(dir / "scan.json", side);
  std::cout << "points " << o.points << "\nseconds " << fmt(secs) << "\nwrote " << (dir / "scan.csv").string() << '\n';
  return o.check ? check_scan(scan) : 0;
}

int cmd_montecarlo(const Options& o) {
  if (o.approaches.size() != 1) throw UsageError("montecarlo takes exactly one --approach");
  const mees::ApproachKind kind = approach_of(o.approaches.front());
  if (o.count < 1) throw UsageError("--count must be at least 1");
  if (o.workers < 1) throw UsageError("--workers must be at least 1");
  if (o.bins < 1) throw UsageError("--bins must be at least 1");
  mees::SamplerConfig cfg;
  cfg.seed = o.seed;
  cfg.count = o.count;
  cfg.workers = o.workers;
  cfg.measure = mees::default_measure(kind);
  if (!o.measure.empty()) {
    const auto m = mees::parse_measure(o.measure);
    if (!m) throw UsageError("unknown measure '" + o.measure + "' (expected haar-full, haar-schmidt)");
    cfg.measure = *m;
  }
  const auto system = load_system(o);
  mees::ScatterOptions opt;
  opt.bins_x = opt.bins_y = o.bins;
  opt.leak = o.epsilon;

  const auto t0 = std::chrono::steady_clock::now();
  const mees::ScatterResult r = mees::run_scatter(system, kind, cfg, opt);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const fs::path dir = out_dir(o);
  const std::string stem = std::string(mees::to_string(kind));
  json extra = config_json("montecarlo", o, system);
  extra["seed"] = cfg.seed;
  extra["count"] = cfg.count;
  extra["workers"] = cfg.workers;
  extra["measure"] = std::string(mees::to_string(cfg.measure));
  extra["approach"] = stem;
  extra["skipped"] = r.skipped;

  json eta_side = extra;
  eta_side["quantity"] = "eta";
  eta_side["clamped"] = r.clamped_eta;
  mees::io::write_histogram(dir / (stem + "_eta.csv"), dir / (stem + "_eta.json"), r.eta, eta_side);
  json exp_side = extra;
  exp_side["quantity"] = "e_exp_norm";
  exp_side["clamped"] = r.clamped_expense;
  mees::io::write_histogram(dir / (stem + "_expense.csv"), dir / (stem + "_expense.json"), r.expense, exp_side);

  // MEES overlay for the same approach.
  const mees::CurveScan curve =
      mees::scan_mees_curve(system, {kind}, mees::uniform_entanglement_grid(system, static_cast<std::size_t>(o.bins)),
                            o.epsilon);
  mees::io::write_curve_scan(dir / (stem + "_mees_curve.csv"), curve);

  // Read everything back before reporting success.
  const std::uint64_t expected = cfg.count - r.skipped;
  for (const char* q : {"_eta", "_expense"}) {
    const mees::Histogram2D back = mees::io::read_histogram(dir / (stem + q + ".csv"), dir / (stem + q + ".json"));
    if (back.total() != expected) throw mees::Error(mees::ErrorCode::Io, "round-trip count mismatch");
  }
  std::cout << "approach " << stem << "\nmeasure " << mees::to_string(cfg.measure) << "\nsamples " << cfg.count
            << "\nskipped " << r.skipped << "\nclamped_eta " << r.clamped_eta << "\nclamped_expense "
            << r.clamped_expense << "\nseconds " << fmt(secs) << "\nwrote " << dir.string() << '\n';
  return 0;
}

void add_system(CLI::App* app, Options& o) {
  app->add_option("--spectra", o.spectra, "Inline spectra, e.g. \"0,2,4;0,1,6,9\"");
  app->add_option("--system-file", o.system_file, "JSON file {\"spectrum_a\": [...], \"spectrum_b\": [...]}");
  app->add_option("--out-dir", o.out_dir, "Output directory");
}

void add_target(CLI::App* app, Options& o) {
  app->add_option("--entanglement", o.entanglement, "Entropy of entanglement (nats) of the MEES target");
  app->add_option("--beta-g", o.beta_g, "Inverse temperature of the MEES target");
  app->add_option("--weights", o.weights, "Explicit Schmidt weights, comma separated");
  app->add_option("--phases", o.phases, "Schmidt phases (radians), comma separated");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-energy entangled states: construction, synthesis, thermalization"};
  app.require_subcommand(1);
  Options o;

  auto* mees_cmd = app.add_subcommand("mees", "Solve for the MEES at a given entanglement or beta_g");
  add_system(mees_cmd, o);
  mees_cmd->add_option("--entanglement", o.entanglement, "Entropy of entanglement (nats)");
  mees_cmd->add_option("--beta-g", o.beta_g, "Evaluate directly at this inverse temperature");

  auto* synth = app.add_subcommand("synth", "Build U_S, U~_A or U~_B with its gate plan");
  add_system(synth, o);
  add_target(synth, o);
  synth->add_option("--operator", o.op, "US, UA or UB");

  auto* ham = app.add_subcommand("hamiltonian", "Build an interaction Hamiltonian and its protocol report");
  add_system(ham, o);
  add_target(ham, o);
  ham->add_option("--approach", o.approaches, "simple, modified-simple, global-unitary, mssg-a, mssg-b");
  ham->add_option("--epsilon", o.epsilon, "Bath leak epsilon in (0, 1)");

  auto* scan = app.add_subcommand("scan", "Evaluate every approach along the MEES curve");
  add_system(scan, o);
  scan->add_option("--approach", o.approaches, "Approaches (repeatable; default all)")->delimiter(',');
  scan->add_option("--points", o.points, "Grid points");
  scan->add_option("--epsilon", o.epsilon, "Bath leak epsilon in (0, 1)");
  scan->add_flag("--check", o.check, "Fail if the expense orderings are violated");

  auto* mc = app.add_subcommand("montecarlo", "Random-state scatter histograms");
  add_system(mc, o);
  mc->add_option("--approach", o.approaches, "Approach");
  mc->add_option("--measure", o.measure, "haar-full or haar-schmidt (default by approach)");
  mc->add_option("--seed", o.seed, "Seed");
  mc->add_option("--count", o.count, "Number of samples");
  mc->add_option("--bins", o.bins, "Bins per axis");
  mc->add_option("--workers", o.workers, "Worker threads");
  mc->add_option("--epsilon", o.epsilon, "Bath leak epsilon in (0, 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*mees_cmd) return cmd_mees(o);
    if (*synth) return cmd_synth(o);
    if (*ham) return cmd_hamiltonian(o);
    if (*scan) return cmd_scan(o);
    if (*mc) return cmd_montecarlo(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const mees::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}
