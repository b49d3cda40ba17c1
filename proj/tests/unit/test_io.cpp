#include "mees/error.hpp"
#include "mees/io.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>

using namespace mees;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("mees_io_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidConfig;
}

}  // namespace

TEST_CASE("doubles survive formatting") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, std::nextafter(1.0, 2.0)}) {
    CHECK(std::stod(io::format_double(v)) == v);
  }
}

TEST_CASE("matrix round trip") {
  ComplexMatrix m(2, 2);
  m << cplx(1, 2), cplx(0.1, -0.3), cplx(-4, 1e-17), cplx(1.0 / 3, 0);
  const io::json j = io::to_json(m);
  CHECK(j.size() == 2);
  CHECK(j[0].size() == 2);
  CHECK(j[0][0][1] == 2.0);
  CHECK(io::matrix_from_json(io::json::parse(j.dump())) == m);
  CHECK(code_of([] { io::matrix_from_json(io::json::parse("[[[1,0]],[[1,0],[2,0]]]")); }) == ErrorCode::Io);
}

TEST_CASE("systems") {
  const BipartiteSystem s = io::parse_spectra("0,2,4;0,1,6,9");
  CHECK(s.na() == 3);
  CHECK(s.nb() == 4);
  CHECK(s.b()[3] == 9.0);
  const BipartiteSystem back = io::system_from_json(io::system_to_json(s));
  CHECK(back.na() == 3);
  CHECK(back.a()[2] == 4.0);

  TempDir dir;
  io::write_json(dir.path / "sys.json", io::system_to_json(s));
  CHECK(io::load_system(dir.path / "sys.json").nb() == 4);

  CHECK(code_of([] { io::parse_spectra("0,2,4"); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([] { io::parse_spectra("0,2;0,1;3"); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([] { io::parse_spectra("0,x;0,1"); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([] { io::parse_spectra("0,0;0,1,6,9"); }) == ErrorCode::DegenerateGround);
  CHECK(io::parse_spectra("0,1,6,9;0,2").na() == 2);
  CHECK(code_of([&] { io::load_system(dir.path / "missing.json"); }) == ErrorCode::Io);
  std::ofstream(dir.path / "broken.json") << "{";
  CHECK(code_of([&] { io::read_json(dir.path / "broken.json"); }) == ErrorCode::Io);
}

TEST_CASE("reports and plans") {
  const BipartiteSystem s = io::parse_spectra("0,2,4;0,1,6,9");
  const MeesSolution m = solve_beta_g(s, 0.7);
  const io::json jm = io::to_json(m);
  CHECK(jm["beta_g"].get<double>() == m.beta_g);
  CHECK(jm["weights"].size() == 3);
  const io::json jr = io::to_json(report(ApproachKind::MssgA, s, m.state));
  CHECK(jr["approach"] == "mssg-a");
  CHECK(jr["method"] == "closed-form");
  const GatePlan plan = plan_us(m.state);
  const io::json jp = io::to_json(plan);
  CHECK(jp["factors"].size() == plan.factors.size());
  CHECK(jp["factors"][0].contains("theta"));
}

TEST_CASE("histogram files") {
  TempDir dir;
  Histogram2D h(5, 4, std::log(3.0), 26.0);
  h.add(0, 0, 3);
  h.add(4, 3, 7);
  h.add(2, 1);
  io::write_histogram(dir.path / "h.csv", dir.path / "h.json", h, {{"seed", 5}, {"approach", "simple"}});
  const Histogram2D back = io::read_histogram(dir.path / "h.csv", dir.path / "h.json");
  CHECK(back == h);
  const io::json side = io::read_json(dir.path / "h.json");
  CHECK(side["seed"] == 5);
  CHECK(side["bins_x"] == 5);
  CHECK(side["y_norm"] == 26.0);

  std::ifstream in(dir.path / "h.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "# x_norm,y_norm,count");

  // A row dropped from the CSV no longer matches the sidecar.
  const io::CsvTable t = io::read_csv(dir.path / "h.csv");
  CHECK(t.rows.size() == 20);
  std::ofstream out(dir.path / "h.csv");
  out << header << '\n';
  for (std::size_t r = 1; r < t.rows.size(); ++r)
    out << t.rows[r][0] << ',' << t.rows[r][1] << ',' << t.rows[r][2] << '\n';
  out.close();
  CHECK(code_of([&] { io::read_histogram(dir.path / "h.csv", dir.path / "h.json"); }) == ErrorCode::Io);
}

TEST_CASE("curve scan file") {
  TempDir dir;
  const BipartiteSystem s = io::parse_spectra("0,2,4;0,1,6,9");
  const auto grid = uniform_entanglement_grid(s, 10);
  const CurveScan scan = scan_mees_curve(s, {ApproachKind::Simple, ApproachKind::MssgB}, grid);
  io::write_curve_scan(dir.path / "scan.csv", scan);
  const io::CsvTable t = io::read_csv(dir.path / "scan.csv");
  REQUIRE(t.header.size() == 5);
  CHECK(t.header[0] == "e_norm");
  CHECK(t.header[1] == "simple_eta");
  CHECK(t.header[4] == "mssg-b_e_exp_norm");
  REQUIRE(t.rows.size() == 10);
  for (std::size_t k = 0; k < 10; ++k) {
    CHECK(t.rows[k][0] == scan.e_norm[k]);
    CHECK(t.rows[k][3] == scan.values[1][k].eta);
  }
}
