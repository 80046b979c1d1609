#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>
#include <sstream>

#include "cli.hpp"
#include "harmonic_aaa/io.hpp"

namespace fs = std::filesystem;
using harmonic_aaa::Complex;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = harmonic_aaa::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Scratch directory holding a square boundary with u = x^2.
struct Workspace {
  fs::path dir;

  Workspace() {
    dir = fs::temp_directory_path() / ("harmonic_aaa_cli_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::ofstream b(dir / "square.csv");
    b << "x,y,u\n";
    const std::vector<Complex> v{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
    for (int e = 0; e < 4; ++e) {
      for (int k = 0; k < 30; ++k) {
        const Complex z = v[e] + (v[(e + 1) % 4] - v[e]) * (k / 30.0);
        b << harmonic_aaa::io::format_double(z.real()) << ',' << harmonic_aaa::io::format_double(z.imag()) << ','
          << harmonic_aaa::io::format_double(z.real() * z.real()) << '\n';
      }
    }
    std::ofstream p(dir / "points.csv");
    p << "x,y\n0,0\n0.5,-0.25\n3,3\n";
  }
  ~Workspace() { fs::remove_all(dir); }

  std::string path(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("cli: usage errors and help") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"demo", "--help"}).code == 0);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"demo", "nowhere"}).code == 2);
  CHECK(run({"solve", "b.csv"}).code == 2);
  CHECK(run({"solve", "b.csv", "--center", "0", "--lawson", "2"}).code == 2);
  CHECK(run({"solve", "b.csv", "--center", "0", "--region", "sideways"}).code == 2);
  CHECK(run({"eval", "s.json"}).code == 2);
}

TEST_CASE("cli: solve, eval and map on a square") {
  Workspace ws;
  const std::string grid = "-1.2,1.2,-1.2,1.2,25,25";

  const Result a = run({"solve", ws.path("square.csv"), "--center", "0.1+0.1i", "--grid", grid, "--out", ws.path("a"),
                        "--svg", ws.path("a/plot.svg")});
  REQUIRE_MESSAGE(a.code == 0, a.err);
  CHECK(a.out.find("boundary_max_error") != std::string::npos);
  const Result b = run({"solve", ws.path("square.csv"), "--center", "0.1+0.1i", "--grid", grid, "--out", ws.path("b")});
  REQUIRE(b.code == 0);
  for (const char* f : {"solution.json", "poles.csv", "field.csv"}) {
    CHECK(fs::exists(ws.dir / "a" / f));
    CHECK(slurp(ws.dir / "a" / f) == slurp(ws.dir / "b" / f));
  }
  CHECK(slurp(ws.dir / "a" / "plot.svg").rfind("<svg", 0) == 0);

  const auto sol = harmonic_aaa::io::read_json(ws.path("a/solution.json"));
  CHECK(sol["boundary_max_error"].get<double>() < 1e-3);

  // Re-evaluating the stored solution on the same grid reproduces the field.
  const Result e = run({"eval", ws.path("a/solution.json"), "--grid", grid, "--out", ws.path("eval.csv")});
  REQUIRE_MESSAGE(e.code == 0, e.err);
  CHECK(slurp(ws.dir / "eval.csv") == slurp(ws.dir / "a" / "field.csv"));

  const Result p = run({"eval", ws.path("a/solution.json"), "--points", ws.path("points.csv"), "--out", ws.path("p.csv")});
  REQUIRE(p.code == 0);
  std::istringstream rows(slurp(ws.dir / "p.csv"));
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(rows, line)) lines.push_back(line);
  REQUIRE(lines.size() == 4);
  CHECK(lines[3].substr(lines[3].size() - 2) == ",1");
  CHECK(lines[1].substr(lines[1].size() - 2) == ",0");

  CHECK(run({"eval", ws.path("a/solution.json"), "--points", ws.path("points.csv"), "--grid", grid}).code == 2);
  CHECK(run({"eval", ws.path("missing.json"), "--grid", grid}).code == 1);

  const Result m = run({"map", "disk-interior", ws.path("square.csv"), "--center", "0", "--out", ws.path("m")});
  REQUIRE_MESSAGE(m.code == 0, m.err);
  const auto map = harmonic_aaa::io::read_json(ws.path("m/map.json"));
  CHECK(map["kind"] == "disk-interior");
  CHECK(map["modulus"].is_null());
  CHECK(fs::exists(ws.dir / "m" / "gridlines.csv"));

  CHECK(run({"map", "annulus", ws.path("square.csv"), "--center", "0"}).code == 2);
}

TEST_CASE("cli: data errors") {
  Workspace ws;
  CHECK(run({"solve", ws.path("square.csv"), "--center", "5+5i", "--out", ws.path("x")}).code == 1);
  CHECK(run({"solve", ws.path("nothing.csv"), "--center", "0", "--out", ws.path("x")}).code == 1);
  std::ofstream(ws.dir / "bad.csv") << "0,0,1\n1,zero,1\n1,1,1\n";
  const Result r = run({"solve", ws.path("bad.csv"), "--center", "0.5+0.2i", "--out", ws.path("x")});
  CHECK(r.code == 1);
  CHECK(r.err.find(":2:") != std::string::npos);
}
