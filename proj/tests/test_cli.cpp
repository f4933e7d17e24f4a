#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lep/cli.hpp"
#include "test_util.hpp"

using lep::run_command;
using lep::testing::fixture_path;

namespace {

namespace fs = std::filesystem;

struct Capture {
  std::ostringstream out, err;
  std::streambuf* old_out;
  std::streambuf* old_err;
  Capture() : old_out(std::cout.rdbuf(out.rdbuf())), old_err(std::cerr.rdbuf(err.rdbuf())) {}
  ~Capture() {
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
  }
};

fs::path temp_dir() {
  fs::path dir = fs::temp_directory_path() / "lep_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("validate exit codes") {
  {
    Capture cap;
    CHECK(run_command({"validate", fixture_path("square.lep")}) == 0);
  }
  {
    Capture cap;
    CHECK(run_command({"validate", fixture_path("cube_no_corner_exclusion.lep")}) == 1);
    CHECK(cap.out.str().find("corner") != std::string::npos);
  }
  {
    Capture cap;
    CHECK(run_command({"validate", fixture_path("does_not_exist.lep")}) != 0);
  }
  {
    // Syntax errors report file, line and column and exit 2.
    fs::path bad = temp_dir() / "bad.lep";
    std::ofstream(bad) << "lep 1\ndim 3 2\nvertices\n  0 a b c\nend\n";
    Capture cap;
    CHECK(run_command({"validate", bad.string()}) == 2);
    CHECK(cap.err.str().find("bad.lep:4") != std::string::npos);
  }
}

TEST_CASE("usage errors exit with 2") {
  Capture cap;
  CHECK(run_command({"distance", "--complex", fixture_path("square.lep")}) == 2);
  CHECK(run_command({"frobnicate"}) == 2);
  CHECK(run_command({}) == 2);
}

TEST_CASE("distance command prints a number") {
  Capture cap;
  CHECK(run_command({"distance", "--complex", fixture_path("square.lep"), "--from", "0:0,0",
                     "--to", "0:1,0", "--h", "0.125"}) == 0);
  CHECK(std::stod(cap.out.str()) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("solve then check round trip") {
  fs::path dir = temp_dir();
  fs::path u_csv = dir / "u.csv";
  {
    Capture cap;
    CHECK(run_command({"solve", fixture_path("square.lep"), "--g", "const:0", "--f", "const:1",
                       "--h", "0.03125", "--out", u_csv.string()}) == 0);
  }
  {
    Capture cap;
    CHECK(run_command({"check", "--complex", fixture_path("square.lep"), "--u", u_csv.string(),
                       "--mode", "sub", "--tol", "auto"}) == 0);
    CHECK(cap.out.str().find("subsolution") != std::string::npos);
  }
  {
    Capture cap;
    CHECK(run_command({"check", "--complex", fixture_path("square.lep"), "--u", u_csv.string(),
                       "--mode", "super", "--exclude-sigma"}) == 0);
  }
  {
    Capture cap;
    CHECK(run_command({"check", "--complex", fixture_path("square.lep"), "--u", u_csv.string(),
                       "--mode", "lipschitz"}) == 0);
  }
  {
    // Comparing the field against itself passes; a lifted copy has no verdict.
    Capture cap;
    CHECK(run_command({"check", "--complex", fixture_path("square.lep"), "--u", u_csv.string(),
                       "--u2", u_csv.string(), "--mode", "compare"}) == 0);
  }
  {
    // The provenance hash must match the complex the field came from.
    Capture cap;
    CHECK(run_command({"check", "--complex", fixture_path("book3.lep"), "--u", u_csv.string(),
                       "--mode", "sub"}) == 2);
  }

  // Re-exports are byte identical.
  fs::path again = dir / "u2.csv";
  {
    Capture cap;
    CHECK(run_command({"export", "--complex", fixture_path("square.lep"), "--u", u_csv.string(),
                       "--format", "csv", "--out", again.string()}) == 0);
  }
  CHECK(slurp(u_csv) == slurp(again));

  fs::path mesh_base = dir / "mesh";
  {
    Capture cap;
    CHECK(run_command({"export", "--complex", fixture_path("square.lep"), "--u", u_csv.string(),
                       "--format", "mesh", "--out", mesh_base.string()}) == 0);
  }
  std::string obj = slurp(mesh_base.string() + ".obj");
  CHECK(obj.find("v ") != std::string::npos);
  CHECK(obj.find("f ") != std::string::npos);
}

TEST_CASE("failing verdicts exit with 1") {
  fs::path dir = temp_dir();
  fs::path u_csv = dir / "uu.csv";
  {
    Capture cap;
    CHECK(run_command({"solve", fixture_path("square.lep"), "--g", "const:0", "--f", "const:1",
                       "--h", "0.0625", "--out", u_csv.string()}) == 0);
  }
  // Doubling every value breaks the subsolution property.
  std::string csv = slurp(u_csv);
  std::ostringstream doubled;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("node,", 0) == 0) {
      doubled << line << "\n";
      continue;
    }
    auto pos = line.rfind(',');
    double v = std::stod(line.substr(pos + 1));
    doubled << line.substr(0, pos + 1) << lep::format_double(2 * v) << "\n";
  }
  fs::path u2 = dir / "uu2.csv";
  std::ofstream(u2) << doubled.str();
  Capture cap;
  CHECK(run_command({"check", "--complex", fixture_path("square.lep"), "--u", u2.string(),
                     "--mode", "sub"}) == 1);
  CHECK(run_command({"check", "--complex", fixture_path("square.lep"), "--u", u2.string(),
                     "--mode", "lipschitz"}) == 1);
}

TEST_CASE("hypothesis failures exit with 1") {
  Capture cap;
  CHECK(run_command({"solve", fixture_path("square_g2x.lep"), "--h", "0.125", "--out",
                     (temp_dir() / "never.csv").string()}) == 1);
  CHECK(cap.err.str().find("hypothesis") != std::string::npos);
}

TEST_CASE("oracle subcommand") {
  {
    Capture cap;
    CHECK(run_command({"oracle", "--complex", fixture_path("book3.lep"), "--mode", "unfold",
                       "--from", "0:0.3,0.4", "--to", "1:0.5,0.4"}) == 0);
    CHECK(std::stod(cap.out.str()) == doctest::Approx(0.8).epsilon(1e-9));
  }
  {
    Capture cap;
    CHECK(run_command({"oracle", "--complex", fixture_path("ynet.lep"), "--mode", "brute",
                       "--from", "0:0.5", "--to", "1:0.5"}) == 0);
    CHECK(std::stod(cap.out.str()) == doctest::Approx(1.0).epsilon(1e-5));
  }
}
