#pragma once

#include "mees/histogram.hpp"
#include "mees/linalg.hpp"
#include "mees/montecarlo.hpp"
#include "mees/protocol.hpp"
#include "mees/synthesis.hpp"
#include "mees/system.hpp"
#include "mees/thermal.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace mees::io {

using nlohmann::json;

/// printf("%.17g"): enough digits to read the same double back.
std::string format_double(double v);

/// Rows of [re, im] pairs.
json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json to_json(const GatePlan& plan);
json to_json(const ProtocolReport& r);
json to_json(const MeesSolution& s);

/// {"spectrum_a": [...], "spectrum_b": [...]}
json system_to_json(const BipartiteSystem& system);
BipartiteSystem system_from_json(const json& j);
BipartiteSystem load_system(const std::filesystem::path& path);
/// "0,2,4;0,1,6,9"
BipartiteSystem parse_spectra(std::string_view text);

void write_json(const std::filesystem::path& path, const json& j);
json read_json(const std::filesystem::path& path);

/// CSV "# x_norm,y_norm,count" with one row per cell (cell centers), plus a
/// JSON sidecar carrying the geometry and `extra`.
void write_histogram(const std::filesystem::path& csv, const std::filesystem::path& sidecar, const Histogram2D& h,
                     const json& extra);

/// Reads both files back and checks them against each other (geometry, cell
/// centers, count total). Throws Io on any disagreement.
Histogram2D read_histogram(const std::filesystem::path& csv, const std::filesystem::path& sidecar);

/// Columns e_norm, then <approach>_eta and <approach>_e_exp_norm per approach.
void write_curve_scan(const std::filesystem::path& csv, const CurveScan& scan);
/// Header names and rows; Io if the row widths disagree with the header.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable read_csv(const std::filesystem::path& csv);

}  // namespace mees::io
