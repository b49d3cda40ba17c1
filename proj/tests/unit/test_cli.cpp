#include "mees/io.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

namespace fs = std::filesystem;
using mees::io::json;

namespace {

struct Run {
  fs::path dir;
  Run() {
    dir = fs::temp_directory_path() / ("mees_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
  }
  ~Run() { fs::remove_all(dir); }

  // Runs on the 3x4 system unless the arguments name another.
  int operator()(const std::string& args) const {
    const bool own = args.find("--spectra") != std::string::npos || args.find("--system-file") != std::string::npos;
    const std::string cmd = std::string(MEES_CLI_PATH) + " " + args + (own ? "" : " --spectra '0,2,4;0,1,6,9'") + " --out-dir " + dir.string() + " >" +
                            (dir / "stdout.txt").string() + " 2>" + (dir / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
};

}  // namespace

TEST_CASE("mees") {
  Run run;
  REQUIRE(run("mees --entanglement 0.5") == 0);
  const json j = mees::io::read_json(run.dir / "mees.json");
  CHECK(j["weights"].size() == 3);
  CHECK(j["entanglement"] == 0.5);
  CHECK(j["config"]["system"]["spectrum_b"].size() == 4);
  CHECK(run("mees --entanglement 0") == 2);
  CHECK(run("mees --entanglement 2") == 2);
  CHECK(run("mees") == 64);
  CHECK(run("mees --entanglement 0.5 --spectra '0,1;0,2' --system-file x.json") == 64);
  CHECK(run("mees --entanglement 0.5 --spectra '0,0;0,1'") == 2);
}

TEST_CASE("synth") {
  Run run;
  REQUIRE(run("synth --operator UA --weights 0.5,0.3,0.2 --phases 0,1,2") == 0);
  const json j = mees::io::read_json(run.dir / "unitary_UA.json");
  CHECK(j["matrix"].size() == 12);
  CHECK(run("synth --operator UB --beta-g 0.8") == 0);
  CHECK(fs::exists(run.dir / "unitary_UB.json"));
  CHECK(run("synth --operator UX --entanglement 0.5") == 64);
  REQUIRE(run("synth --weights 1,0,0") == 0);
  const json id = mees::io::read_json(run.dir / "unitary_US.json");
  for (std::size_t r = 0; r < 12; ++r)
    for (std::size_t c = 0; c < 12; ++c) CHECK(id["matrix"][r][c][0].get<double>() == (r == c ? 1.0 : 0.0));
  CHECK(run("synth --weights 0.5,0.5") == 64);
  CHECK(run("synth --entanglement 5") == 2);
}

TEST_CASE("hamiltonian") {
  Run run;
  for (const char* a : {"simple", "modified-simple", "global-unitary", "mssg-a", "mssg-b"}) {
    CAPTURE(a);
    REQUIRE(run(std::string("hamiltonian --approach ") + a + " --entanglement 0.8") == 0);
    const json rep = mees::io::read_json(run.dir / (std::string("report_") + a + ".json"));
    CHECK(std::abs(rep["eta"].get<double>() - rep["first_principles"]["eta"].get<double>()) < 1e-9);
    CHECK(rep["ground_state_fidelity"].get<double>() > 1.0 - 1e-9);
    CHECK(fs::exists(run.dir / (std::string("h_i_") + a + ".json")));
  }
  CHECK(run("hamiltonian --approach mssg-b --weights 1,0,0") == 2);
  CHECK(run("hamiltonian --approach sideways --entanglement 0.8") == 64);
  CHECK(run("hamiltonian --approach simple --entanglement 0.8 --epsilon 1.5") == 2);
}

TEST_CASE("scan") {
  Run run;
  REQUIRE(run("scan --points 50 --check") == 0);
  const mees::io::CsvTable t = mees::io::read_csv(run.dir / "scan.csv");
  CHECK(t.rows.size() == 50);
  CHECK(t.header.size() == 11);
  CHECK(run("scan --approach simple,mssg-a --points 5") == 0);
  CHECK(mees::io::read_csv(run.dir / "scan.csv").header.size() == 5);
  CHECK(run("scan --approach '' --points 5") == 64);
}

TEST_CASE("montecarlo") {
  Run run;
  REQUIRE(run("montecarlo --approach mssg-a --count 2000 --bins 20 --seed 4") == 0);
  const mees::Histogram2D h = mees::io::read_histogram(run.dir / "mssg-a_eta.csv", run.dir / "mssg-a_eta.json");
  const json side = mees::io::read_json(run.dir / "mssg-a_eta.json");
  CHECK(h.bins_x() == 20);
  CHECK(h.total() == 2000 - side["skipped"].get<std::uint64_t>());
  CHECK(side["seed"] == 4);
  CHECK(side["measure"] == "haar-schmidt");
  CHECK(fs::exists(run.dir / "mssg-a_expense.csv"));
  CHECK(mees::io::read_csv(run.dir / "mssg-a_mees_curve.csv").rows.size() == 20);

  CHECK(run("montecarlo --approach mssg-a --measure haar-full --count 10") == 2);
  CHECK(run("montecarlo --approach simple --measure uniform --count 10") == 64);
  CHECK(run("montecarlo --approach simple --count 10 --bogus") == 64);
}

TEST_CASE("system file") {
  Run run;
  mees::io::write_json(run.dir / "sys.json", {{"spectrum_a", {0, 1}}, {"spectrum_b", {0, 3}}});
  REQUIRE(run("mees --beta-g 1 --system-file " + (run.dir / "sys.json").string()) == 0);
  CHECK(mees::io::read_json(run.dir / "mees.json")["weights"].size() == 2);
  CHECK(run("mees --beta-g 1 --system-file " + (run.dir / "none.json").string()) == 2);
}
