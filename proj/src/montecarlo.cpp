#include "mees/montecarlo.hpp"

#include "mees/error.hpp"
#include "mees/kernels.hpp"
#include "mees/protocol.hpp"
#include "mees/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace mees {

namespace {

constexpr std::size_t kBlock = 1024;
constexpr double kZeroExpense = 1e-14;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ComplexVector gaussian_amplitudes(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector c(static_cast<Eigen::Index>(n));
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    c[k] = cplx(re, im);
  }
  return c;
}

struct Partial {
  Histogram2D eta;
  Histogram2D expense;
  std::vector<ColumnStats> columns;
  std::uint64_t skipped = 0;
  std::uint64_t clamped_eta = 0;
  std::uint64_t clamped_expense = 0;

  void absorb(const Partial& o) {
    eta.merge(o.eta);
    expense.merge(o.expense);
    for (std::size_t k = 0; k < columns.size(); ++k) {
      ColumnStats& a = columns[k];
      const ColumnStats& b = o.columns[k];
      if (b.count == 0) continue;
      if (a.count == 0) {
        a = b;
        continue;
      }
      a.count += b.count;
      a.eta_min = std::min(a.eta_min, b.eta_min);
      a.eta_max = std::max(a.eta_max, b.eta_max);
      a.e_min = std::min(a.e_min, b.e_min);
      a.e_max = std::max(a.e_max, b.e_max);
    }
    skipped += o.skipped;
    clamped_eta += o.clamped_eta;
    clamped_expense += o.clamped_expense;
  }
};

class Evaluator {
 public:
  Evaluator(const BipartiteSystem& system, ApproachKind kind, const SamplerConfig& config, const ScatterOptions& opt)
      : system_(system), kind_(kind), config_(config), opt_(opt), log_na_(std::log(static_cast<double>(system.na()))),
        y_norm_(expense_norm(system)) {
    if (kind == ApproachKind::Simple || kind == ApproachKind::ModifiedSimple) {
      v_ = v_strength(system, kind, opt.leak).value;
    }
  }

  Partial fresh() const {
    Partial p;
    p.eta = Histogram2D(opt_.bins_x, opt_.bins_y, log_na_, 1.0);
    p.expense = Histogram2D(opt_.bins_x, opt_.bins_y, log_na_, y_norm_);
    p.columns.assign(static_cast<std::size_t>(opt_.bins_x), ColumnStats{});
    return p;
  }

  // Evaluates samples [begin, end) into `part`; when `keep` is set, writes each
  // sample (NaN x for skipped ones) to keep[index].
  void run(std::uint64_t begin, std::uint64_t end, Partial& part, ScatterSample* keep) const {
    std::vector<double> x(kBlock), eta(kBlock), e(kBlock);
    std::vector<std::int32_t> bx(kBlock), by(kBlock);
    std::vector<double> lam, stored, lambda0, unitary;
    std::vector<SchmidtState> held;
    const auto& k = kernels::active();

    for (std::uint64_t s0 = begin; s0 < end; s0 += kBlock) {
      const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(kBlock, end - s0));
      if (config_.measure == Measure::HaarSchmidt) {
        schmidt_block(s0, n, x.data(), eta.data(), e.data(), lam, stored, lambda0, unitary, held);
      } else {
        for (std::size_t j = 0; j < n; ++j) full_sample(s0 + j, x[j], eta[j], e[j]);
      }

      // Compact out skipped samples.
      std::size_t m = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (keep) keep[s0 + j] = ScatterSample{x[j], eta[j], e[j]};
        if (std::isnan(x[j])) {
          ++part.skipped;
          continue;
        }
        x[m] = x[j];
        eta[m] = eta[j];
        e[m] = e[j];
        ++m;
      }

      const std::int32_t bins_x = opt_.bins_x;
      const std::int32_t bins_y = opt_.bins_y;
      k.bin_indices(x.data(), m, 0.0, 1.0, bins_x, bx.data());
      part.clamped_eta += k.bin_indices(eta.data(), m, 0.0, 1.0, bins_y, by.data());
      for (std::size_t j = 0; j < m; ++j) part.eta.add(bx[j], by[j]);
      part.clamped_expense += k.bin_indices(e.data(), m, 0.0, 1.0, bins_y, by.data());
      for (std::size_t j = 0; j < m; ++j) part.expense.add(bx[j], by[j]);

      for (std::size_t j = 0; j < m; ++j) {
        ColumnStats& c = part.columns[static_cast<std::size_t>(bx[j])];
        if (c.count++ == 0) {
          c.eta_min = c.eta_max = eta[j];
          c.e_min = c.e_max = e[j];
          continue;
        }
        c.eta_min = std::min(c.eta_min, eta[j]);
        c.eta_max = std::max(c.eta_max, eta[j]);
        c.e_min = std::min(c.e_min, e[j]);
        c.e_max = std::max(c.e_max, e[j]);
      }
    }
  }

 private:
  const BipartiteSystem& system_;
  ApproachKind kind_;
  SamplerConfig config_;
  ScatterOptions opt_;
  double log_na_;
  double y_norm_;
  double v_ = 0.0;

  void full_sample(std::uint64_t index, double& x, double& eta, double& e) const {
    Rng rng = substream(config_.seed, index);
    const DensePureState psi = sample_haar_full(system_, rng);
    x = entanglement_entropy(psi, system_) / log_na_;
    try {
      const ProtocolReport r = kind_ == ApproachKind::GlobalUnitary
                                   ? report_from_unitary(kind_, build_us_general(system_, psi), system_, psi)
                                   : report_simple(system_, psi, fixed_strength(kind_, v_));
      eta = r.eta;
      e = r.e_exp / y_norm_;
    } catch (const Error& err) {
      if (err.code() != ErrorCode::ZeroEntanglementTarget) throw;
      x = kNaN;
    }
  }

  void schmidt_block(std::uint64_t s0, std::size_t n, double* x, double* eta, double* e, std::vector<double>& lam,
                     std::vector<double>& stored, std::vector<double>& lambda0, std::vector<double>& unitary,
                     std::vector<SchmidtState>& held) const {
    const std::size_t na = system_.na();
    lam.assign(na * n, 0.0);
    stored.assign(n, 0.0);
    lambda0.assign(n, 0.0);
    unitary.assign(n, 0.0);
    held.clear();
    held.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      Rng rng = substream(config_.seed, s0 + j);
      held.push_back(sample_schmidt(system_, rng));
      const auto w = held.back().weights();
      for (std::size_t i = 0; i < na; ++i) lam[i * n + j] = w[i];
      x[j] = shannon_entropy(w) / log_na_;
    }

    kernels::SchmidtBlock in;
    in.lambda = lam.data();
    in.stride = n;
    in.count = n;
    in.levels = na;
    in.e = system_.diagonal_energies().data();
    in.a = system_.a().levels().data();
    in.b = system_.b().levels().data();
    kernels::SchmidtExpense out;
    out.stored = stored.data();
    out.lambda0 = lambda0.data();
    if (kind_ == ApproachKind::GlobalUnitary) out.global = unitary.data();
    if (kind_ == ApproachKind::MssgA) out.mssg_a = unitary.data();
    if (kind_ == ApproachKind::MssgB) out.mssg_b = unitary.data();
    kernels::active().schmidt_expense(in, out);

    for (std::size_t j = 0; j < n; ++j) {
      double exp_j = is_unitary_approach(kind_) ? unitary[j] : stored[j] + v_ * (1.0 - lambda0[j]);
      if (std::isnan(exp_j)) {
        // lambda_0 == 0: no closed form, go through the swap-variant unitary.
        exp_j = report(kind_, system_, held[j], opt_.leak).e_exp;
      }
      if (std::abs(stored[j]) < kZeroExpense && std::abs(exp_j) < kZeroExpense) {
        x[j] = kNaN;
        continue;
      }
      eta[j] = stored[j] / exp_j;
      e[j] = exp_j / y_norm_;
    }
  }
};

}  // namespace

std::string_view to_string(Measure m) { return m == Measure::HaarFull ? "haar-full" : "haar-schmidt"; }

std::optional<Measure> parse_measure(std::string_view name) {
  if (name == "haar-full") return Measure::HaarFull;
  if (name == "haar-schmidt") return Measure::HaarSchmidt;
  return std::nullopt;
}

Measure default_measure(ApproachKind kind) {
  return kind == ApproachKind::Simple || kind == ApproachKind::GlobalUnitary ? Measure::HaarFull : Measure::HaarSchmidt;
}

bool measure_supported(ApproachKind kind, Measure m) {
  return m == Measure::HaarSchmidt || !requires_schmidt_target(kind);
}

Rng substream(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ (index * 0xD1B54A32D192ED03ULL + 0x2545F4914F6CDD1DULL)));
}

DensePureState sample_haar_full(const BipartiteSystem& system, Rng& rng) {
  for (;;) {
    ComplexVector c = gaussian_amplitudes(system.ns(), rng);
    if (c.norm() > 1e-12) return DensePureState::normalized(std::move(c));
  }
}

SchmidtState sample_schmidt(const BipartiteSystem& system, Rng& rng) {
  for (;;) {
    const ComplexVector c = gaussian_amplitudes(system.na(), rng);
    if (c.norm() > 1e-12) return SchmidtState::from_amplitudes(std::span<const cplx>(c.data(), system.na()));
  }
}

double expense_norm(const BipartiteSystem& system) { return 2.0 * (system.max_energy() - system.ground_energy()); }

ScatterResult run_scatter(const BipartiteSystem& system, ApproachKind approach, const SamplerConfig& config,
                          const ScatterOptions& options) {
  if (config.count < 1) throw Error(ErrorCode::InvalidConfig, "count must be at least 1");
  if (config.workers < 1) throw Error(ErrorCode::InvalidConfig, "workers must be at least 1");
  if (!measure_supported(approach, config.measure)) {
    throw Error(ErrorCode::MeasureMismatch, std::string(to_string(approach)) + " cannot prepare " +
                                                std::string(to_string(config.measure)) + " states");
  }
  const Evaluator eval(system, approach, config, options);

  ScatterResult result;
  result.approach = approach;
  result.config = config;
  std::vector<ScatterSample> kept;
  if (options.keep_samples) kept.resize(static_cast<std::size_t>(config.count));
  ScatterSample* keep = options.keep_samples ? kept.data() : nullptr;

  const std::uint64_t workers = std::min<std::uint64_t>(config.workers, config.count);
  std::vector<Partial> parts(static_cast<std::size_t>(workers));
  for (auto& p : parts) p = eval.fresh();
  auto range = [&](std::uint64_t w) { return config.count * w / workers; };

  if (workers == 1) {
    eval.run(0, config.count, parts[0], keep);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> failures(parts.size());
    for (std::uint64_t w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          eval.run(range(w), range(w + 1), parts[w], keep);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }

  Partial total = eval.fresh();
  for (const auto& p : parts) total.absorb(p);
  result.eta = std::move(total.eta);
  result.expense = std::move(total.expense);
  result.columns = std::move(total.columns);
  result.skipped = total.skipped;
  result.clamped_eta = total.clamped_eta;
  result.clamped_expense = total.clamped_expense;
  if (options.keep_samples) {
    std::erase_if(kept, [](const ScatterSample& s) { return std::isnan(s.x); });
    result.samples = std::move(kept);
  }
  return result;
}

std::vector<double> uniform_entanglement_grid(const BipartiteSystem& system, std::size_t points) {
  const double top = std::log(static_cast<double>(system.na()));
  std::vector<double> grid(points);
  for (std::size_t k = 0; k < points; ++k) grid[k] = top * static_cast<double>(k + 1) / static_cast<double>(points + 1);
  return grid;
}

CurveScan scan_mees_curve(const BipartiteSystem& system, const std::vector<ApproachKind>& approaches,
                          const std::vector<double>& e_grid, double leak) {
  CurveScan scan;
  scan.approaches = approaches;
  scan.y_norm = expense_norm(system);
  scan.values.assign(approaches.size(), std::vector<CurvePoint>(e_grid.size(), CurvePoint{kNaN, kNaN}));
  scan.errors.assign(e_grid.size(), std::string());
  const double log_na = std::log(static_cast<double>(system.na()));
  for (std::size_t k = 0; k < e_grid.size(); ++k) {
    scan.e_norm.push_back(e_grid[k] / log_na);
    try {
      const MeesSolution mees = solve_beta_g(system, e_grid[k]);
      for (std::size_t a = 0; a < approaches.size(); ++a) {
        const ProtocolReport r = report(approaches[a], system, mees.state, leak);
        scan.values[a][k] = CurvePoint{r.eta, r.e_exp / scan.y_norm};
      }
    } catch (const Error& err) {
      scan.errors[k] = err.what();
    }
  }
  return scan;
}

std::vector<std::optional<double>> column_expense_quantile(const ScatterResult& r, double q, std::uint64_t min_count) {
  const int bins = r.expense.bins_x();
  std::vector<std::vector<double>> by_column(static_cast<std::size_t>(bins));
  std::vector<double> xs(r.samples.size());
  std::vector<std::int32_t> ix(r.samples.size());
  for (std::size_t j = 0; j < r.samples.size(); ++j) xs[j] = r.samples[j].x;
  kernels::scalar().bin_indices(xs.data(), xs.size(), 0.0, 1.0, bins, ix.data());
  for (std::size_t j = 0; j < r.samples.size(); ++j) by_column[static_cast<std::size_t>(ix[j])].push_back(r.samples[j].e);

  std::vector<std::optional<double>> out(static_cast<std::size_t>(bins));
  for (std::size_t c = 0; c < by_column.size(); ++c) {
    auto& v = by_column[c];
    if (v.empty() || v.size() < min_count) continue;
    const auto pos = static_cast<std::size_t>(std::floor(q * static_cast<double>(v.size() - 1)));
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(pos), v.end());
    out[c] = v[pos];
  }
  return out;
}

EnvelopeBreak envelope_break(const ScatterResult& r, double search_from, double tail_from, std::uint64_t min_count,
                             double tolerance) {
  EnvelopeBreak out;
  const int bins = r.eta.bins_x();
  std::vector<int> eligible;
  for (int c = 0; c < bins; ++c) {
    if (r.columns[static_cast<std::size_t>(c)].count >= min_count) eligible.push_back(c);
  }
  bool have_plateau = false;
  for (int c : eligible) {
    if (r.eta.center_x(c) < search_from) {
      out.plateau = have_plateau ? std::max(out.plateau, r.columns[static_cast<std::size_t>(c)].eta_max)
                                 : r.columns[static_cast<std::size_t>(c)].eta_max;
      have_plateau = true;
    }
  }
  if (!have_plateau) return out;

  // Walk down from the top: the onset is the first column after the last one
  // still touching the plateau.
  const double floor = out.plateau - tolerance;
  std::optional<double> onset;
  for (auto it = eligible.rbegin(); it != eligible.rend(); ++it) {
    const double center = r.eta.center_x(*it);
    if (center < search_from) break;
    if (r.columns[static_cast<std::size_t>(*it)].eta_max >= floor) break;
    onset = center;
  }
  out.onset = onset;

  out.nonincreasing_tail = true;
  const ColumnStats* prev = nullptr;
  for (int c : eligible) {
    if (r.eta.center_x(c) < tail_from) continue;
    const ColumnStats& cur = r.columns[static_cast<std::size_t>(c)];
    if (prev && cur.eta_max > prev->eta_max) out.nonincreasing_tail = false;
    prev = &cur;
  }
  return out;
}

}  // namespace mees
