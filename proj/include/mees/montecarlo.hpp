#pragma once

#include "mees/histogram.hpp"
#include "mees/interaction.hpp"
#include "mees/states.hpp"
#include "mees/system.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace mees {

enum class Measure { HaarFull, HaarSchmidt };

std::string_view to_string(Measure m);
/// "haar-full" or "haar-schmidt".
std::optional<Measure> parse_measure(std::string_view name);

/// HaarFull for the approaches that reach every state, HaarSchmidt otherwise.
Measure default_measure(ApproachKind kind);
/// False when the approach cannot prepare states drawn from the measure.
bool measure_supported(ApproachKind kind, Measure m);

struct SamplerConfig {
  std::uint64_t seed = 1;
  std::uint64_t count = 1'000'000;
  Measure measure = Measure::HaarFull;
  unsigned workers = 1;
};

using Rng = std::mt19937_64;

/// Independent generator for sample `index`; depends only on (seed, index).
Rng substream(std::uint64_t seed, std::uint64_t index);

/// Complex Gaussian amplitudes over the whole product basis, normalized.
DensePureState sample_haar_full(const BipartiteSystem& system, Rng& rng);
/// Complex Gaussian amplitudes over the N_A diagonal kets, normalized.
SchmidtState sample_schmidt(const BipartiteSystem& system, Rng& rng);

/// 2 (max sigma(H_0) - E_0): the expense normalization of the scatter plots.
double expense_norm(const BipartiteSystem& system);

struct ScatterOptions {
  int bins_x = 200;
  int bins_y = 200;
  double leak = 1e-3;
  /// Keep every evaluated sample (in index order) for percentile queries.
  bool keep_samples = false;
};

/// Exact extremes of the samples that fell in one entanglement column.
struct ColumnStats {
  std::uint64_t count = 0;
  double eta_min = 0.0;
  double eta_max = 0.0;
  double e_min = 0.0;  // normalized expense
  double e_max = 0.0;
};

struct ScatterSample {
  double x = 0.0;    // entanglement / ln N_A
  double eta = 0.0;
  double e = 0.0;    // E_exp / expense_norm
};

struct ScatterResult {
  ApproachKind approach = ApproachKind::Simple;
  SamplerConfig config;
  Histogram2D eta;      // eta vs normalized entanglement
  Histogram2D expense;  // normalized E_exp vs normalized entanglement
  std::vector<ColumnStats> columns;
  std::uint64_t skipped = 0;          // zero-entanglement 0/0 samples
  std::uint64_t clamped_eta = 0;      // samples placed in an edge cell from outside the range
  std::uint64_t clamped_expense = 0;
  std::vector<ScatterSample> samples;  // only with keep_samples; skipped ones are absent
};

/// Samples config.count states, evaluates eta and E_exp for `approach`, and bins
/// both against the normalized entanglement. Output is independent of
/// config.workers. MeasureMismatch when the approach cannot reach the measure.
ScatterResult run_scatter(const BipartiteSystem& system, ApproachKind approach, const SamplerConfig& config,
                          const ScatterOptions& options = {});

struct CurvePoint {
  double eta = 0.0;
  double e_exp_norm = 0.0;
};

struct CurveScan {
  std::vector<double> e_norm;  // entanglement / ln N_A, strictly increasing in (0, 1)
  std::vector<ApproachKind> approaches;
  /// values[a][k]: approach a at grid point k; NaN where the point failed.
  std::vector<std::vector<CurvePoint>> values;
  std::vector<std::string> errors;  // per grid point, empty on success
  double y_norm = 1.0;
};

/// k / (points + 1) for k = 1..points, scaled by ln N_A.
std::vector<double> uniform_entanglement_grid(const BipartiteSystem& system, std::size_t points);

/// MEES at every grid value evaluated under every requested approach.
CurveScan scan_mees_curve(const BipartiteSystem& system, const std::vector<ApproachKind>& approaches,
                          const std::vector<double>& e_grid, double leak = 1e-3);

/// Per entanglement column, the q-quantile (0 <= q <= 1) of the normalized
/// expense over retained samples; nullopt where fewer than `min_count` fall.
std::vector<std::optional<double>> column_expense_quantile(const ScatterResult& r, double q, std::uint64_t min_count);

struct EnvelopeBreak {
  double plateau = 0.0;  // max eta over columns left of the search start
  std::optional<double> onset;  // center of the first column after which the envelope stays below the plateau
  bool nonincreasing_tail = false;  // envelope nonincreasing above `tail_from`
};

/// Locates where the per-column maximum efficiency leaves its plateau. Columns
/// with fewer than `min_count` samples are ignored; `tolerance` absorbs
/// sampling noise on the plateau.
EnvelopeBreak envelope_break(const ScatterResult& r, double search_from = 0.5, double tail_from = 0.66,
                             std::uint64_t min_count = 100, double tolerance = 5e-5);

}  // namespace mees
