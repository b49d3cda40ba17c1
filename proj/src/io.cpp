#include "mees/io.hpp"

#include "mees/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mees::io {

namespace {

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidConfig, "not a number: '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) {
      throw Error(ErrorCode::InvalidConfig, "not a number: '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<double> levels_of(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw Error(ErrorCode::Io, std::string("missing array '") + key + "'");
  std::vector<double> v;
  for (const auto& x : j[key]) {
    if (!x.is_number()) throw Error(ErrorCode::Io, std::string("non-numeric level in '") + key + "'");
    v.push_back(x.get<double>());
  }
  return v;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::Io, "matrix must be a nonempty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  ComplexMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) throw Error(ErrorCode::Io, "matrix is not square");
    for (Eigen::Index c = 0; c < n; ++c) {
      const json& z = row[static_cast<std::size_t>(c)];
      if (!z.is_array() || z.size() != 2) throw Error(ErrorCode::Io, "entries must be [re, im]");
      m(r, c) = cplx(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

json to_json(const GatePlan& plan) {
  json factors = json::array();
  for (const auto& f : plan.factors) {
    factors.push_back({{"kind", std::string(to_string(f.kind))},
                       {"index", f.index},
                       {"c", f.c},
                       {"s", f.s},
                       {"theta", f.theta}});
  }
  json j{{"factors", factors},
         {"cnot", std::string(to_string(plan.cnot))},
         {"acting", std::string(to_string(plan.acting))}};
  j["swap_index"] = plan.swap_index ? json(*plan.swap_index) : json(nullptr);
  return j;
}

json to_json(const ProtocolReport& r) {
  return {{"approach", std::string(to_string(r.approach))},
          {"eta", r.eta},
          {"e_exp", r.e_exp},
          {"stored", r.stored},
          {"method", std::string(to_string(r.method))}};
}

json to_json(const MeesSolution& s) {
  return {{"beta_g", s.beta_g},
          {"z_g", s.z_g},
          {"e_g", s.e_g},
          {"weights", std::vector<double>(s.state.weights().begin(), s.state.weights().end())},
          {"phases", std::vector<double>(s.state.phases().begin(), s.state.phases().end())}};
}

json system_to_json(const BipartiteSystem& system) {
  const auto a = system.a().levels();
  const auto b = system.b().levels();
  return {{"spectrum_a", std::vector<double>(a.begin(), a.end())},
          {"spectrum_b", std::vector<double>(b.begin(), b.end())}};
}

BipartiteSystem system_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Io, "system document must be an object");
  return build_system(Spectrum(levels_of(j, "spectrum_a")), Spectrum(levels_of(j, "spectrum_b")));
}

BipartiteSystem load_system(const std::filesystem::path& path) { return system_from_json(read_json(path)); }

BipartiteSystem parse_spectra(std::string_view text) {
  const auto semi = text.find(';');
  if (semi == std::string_view::npos || text.find(';', semi + 1) != std::string_view::npos) {
    throw Error(ErrorCode::InvalidConfig, "spectra must look like \"a0,a1,...;b0,b1,...\"");
  }
  return build_system(Spectrum(parse_list(text.substr(0, semi))), Spectrum(parse_list(text.substr(semi + 1))));
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::Io, "write failed: " + path.string());
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Io, path.string() + ": " + e.what());
  }
}

void write_histogram(const std::filesystem::path& csv, const std::filesystem::path& sidecar, const Histogram2D& h,
                     const json& extra) {
  std::ofstream out(csv);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + csv.string());
  out << "# x_norm,y_norm,count\n";
  for (int ix = 0; ix < h.bins_x(); ++ix)
    for (int iy = 0; iy < h.bins_y(); ++iy)
      out << format_double(h.center_x(ix)) << ',' << format_double(h.center_y(iy)) << ',' << h.count(ix, iy) << '\n';
  if (!out) throw Error(ErrorCode::Io, "write failed: " + csv.string());

  json j = extra.is_object() ? extra : json::object();
  j["bins_x"] = h.bins_x();
  j["bins_y"] = h.bins_y();
  j["x_norm"] = h.x_norm();
  j["y_norm"] = h.y_norm();
  j["x_range"] = {h.x_lo(), h.x_hi()};
  j["y_range"] = {h.y_lo(), h.y_hi()};
  j["total"] = h.total();
  write_json(sidecar, j);
}

Histogram2D read_histogram(const std::filesystem::path& csv, const std::filesystem::path& sidecar) {
  const json j = read_json(sidecar);
  for (const char* key : {"bins_x", "bins_y", "x_norm", "y_norm", "x_range", "y_range", "total"}) {
    if (!j.contains(key)) throw Error(ErrorCode::Io, std::string("sidecar lacks '") + key + "'");
  }
  Histogram2D h(j["bins_x"].get<int>(), j["bins_y"].get<int>(), j["x_norm"].get<double>(), j["y_norm"].get<double>(),
                j["x_range"][0].get<double>(), j["x_range"][1].get<double>(), j["y_range"][0].get<double>(),
                j["y_range"][1].get<double>());

  std::ifstream in(csv);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + csv.string());
  std::string line;
  if (!std::getline(in, line) || line != "# x_norm,y_norm,count") throw Error(ErrorCode::Io, "bad histogram header");
  const std::size_t cells = static_cast<std::size_t>(h.bins_x()) * static_cast<std::size_t>(h.bins_y());
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (row >= cells) throw Error(ErrorCode::Io, "more rows than cells");
    double x = 0.0, y = 0.0;
    unsigned long long c = 0;
    if (std::sscanf(line.c_str(), "%lf,%lf,%llu", &x, &y, &c) != 3) throw Error(ErrorCode::Io, "bad row: " + line);
    const int ix = static_cast<int>(row / static_cast<std::size_t>(h.bins_y()));
    const int iy = static_cast<int>(row % static_cast<std::size_t>(h.bins_y()));
    if (!close(x, h.center_x(ix)) || !close(y, h.center_y(iy))) throw Error(ErrorCode::Io, "cell center mismatch");
    h.add(ix, iy, c);
    ++row;
  }
  if (row != cells) throw Error(ErrorCode::Io, "expected " + std::to_string(cells) + " rows");
  if (h.total() != j["total"].get<std::uint64_t>()) throw Error(ErrorCode::Io, "count total disagrees with sidecar");
  return h;
}

void write_curve_scan(const std::filesystem::path& csv, const CurveScan& scan) {
  std::ofstream out(csv);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + csv.string());
  out << "e_norm";
  for (ApproachKind a : scan.approaches) out << ',' << to_string(a) << "_eta," << to_string(a) << "_e_exp_norm";
  out << '\n';
  for (std::size_t k = 0; k < scan.e_norm.size(); ++k) {
    out << format_double(scan.e_norm[k]);
    for (std::size_t a = 0; a < scan.approaches.size(); ++a) {
      out << ',' << format_double(scan.values[a][k].eta) << ',' << format_double(scan.values[a][k].e_exp_norm);
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::Io, "write failed: " + csv.string());
}

CsvTable read_csv(const std::filesystem::path& csv) {
  std::ifstream in(csv);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + csv.string());
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::Io, "empty csv");
  {
    std::istringstream hs(line);
    std::string name;
    while (std::getline(hs, name, ',')) t.header.push_back(name);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream rs(line);
    std::string cell;
    while (std::getline(rs, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    if (row.size() != t.header.size()) throw Error(ErrorCode::Io, "row width differs from header");
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace mees::io
