#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

#ifndef PRODGEO_CLI_PATH
#error "PRODGEO_CLI_PATH must point at the driver binary"
#endif

struct RunResult {
  int exit_code = -1;
  std::string out;
};

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("prodgeo-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  f << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

RunResult run(const std::string& args, const fs::path& dir) {
  const fs::path log = dir / "stdout.txt";
  const std::string cmd =
      std::string(PRODGEO_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(raw);
  r.out = read_file(log);
  return r;
}

}  // namespace

TEST_CASE("check passes on a family chart and is byte-deterministic") {
  const fs::path dir = fresh_dir("check-pass");
  write_file(dir / "c.cfg",
             "chart.kind = family\nfamily.p = 2.0\nfamily.q = 1.0\ngrid.points = 7\n");
  const auto r1 = run("check --config " + (dir / "c.cfg").string() + " --out " +
                          (dir / "a").string(),
                      dir);
  CHECK(r1.exit_code == 0);
  CHECK(r1.out.find("FAIL") == std::string::npos);

  const auto r2 = run("check --config " + (dir / "c.cfg").string() + " --out " +
                          (dir / "b").string(),
                      dir);
  CHECK(r2.exit_code == 0);
  CHECK(read_file(dir / "a" / "report.json") == read_file(dir / "b" / "report.json"));

  const auto report = nlohmann::json::parse(read_file(dir / "a" / "report.json"));
  CHECK(report["schema"] == 1);
  CHECK(report["pass"] == true);
  CHECK(report["checks"].size() >= 10);
}

TEST_CASE("inadmissible parameters exit with a config error") {
  const fs::path dir = fresh_dir("check-domain");
  write_file(dir / "c.cfg", "chart.kind = family\nfamily.p = 2.0\nfamily.q = 4.5\n");
  const auto r = run("check --config " + (dir / "c.cfg").string(), dir);
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("(p-1)^2 <= q < p^2") != std::string::npos);
}

TEST_CASE("perturbed fixture fails with named checks") {
  const fs::path dir = fresh_dir("check-perturbed");
  write_file(dir / "c.cfg",
             "chart.kind = family\nfamily.p = 2.0\nfamily.q = 1.5\nchart.perturb = 0.01\n"
             "grid.points = 5\n");
  const auto r = run(
      "check --config " + (dir / "c.cfg").string() + " --out " + dir.string(), dir);
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("FAIL surface_constraint") != std::string::npos);
  CHECK(r.out.find("FAIL gauss") != std::string::npos);
  const auto report = nlohmann::json::parse(read_file(dir / "report.json"));
  CHECK(report["pass"] == false);
}

TEST_CASE("tolerance overrides take effect") {
  const fs::path dir = fresh_dir("check-tol");
  write_file(dir / "c.cfg",
             "chart.kind = builtin\nbuiltin.name = slice_sphere\ngrid.points = 5\n");
  // An absurdly tight frame tolerance must flip the orthonormality check.
  const auto r = run("check --config " + (dir / "c.cfg").string() + " --out " + dir.string() +
                         " --tol frame=1e-18",
                     dir);
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("FAIL frame_orthonormality") != std::string::npos);
}

TEST_CASE("mesh export writes the advertised format") {
  const fs::path dir = fresh_dir("export");
  write_file(dir / "c.cfg",
             "chart.kind = family\nfamily.p = 2.0\nfamily.q = 1.0\n"
             "export.projection = conformal\nexport.axes = 0,1,2\ngrid.points = 9\n");
  const auto r = run(
      "export --config " + (dir / "c.cfg").string() + " --out " + dir.string(), dir);
  REQUIRE(r.exit_code == 0);

  const std::string obj = read_file(dir / "mesh.obj");
  CHECK(obj.find('\r') == std::string::npos);
  int vcount = 0, fcount = 0;
  std::istringstream in(obj);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) == 0) {
      ++vcount;
      std::istringstream ls(line.substr(2));
      double x, y, z;
      REQUIRE((ls >> x >> y >> z));
    } else if (line.rfind("f ", 0) == 0) {
      ++fcount;
      std::istringstream ls(line.substr(2));
      int a, b, c, d;
      REQUIRE((ls >> a >> b >> c >> d));
      for (int idx : {a, b, c, d}) {
        CHECK(idx >= 1);
        CHECK(idx <= 81);
      }
    }
  }
  CHECK(vcount == 81);
  CHECK(fcount == 64);

  // Raw-coordinate table: one row per grid vertex.
  const std::string csv = read_file(dir / "points.csv");
  int rows = 0;
  for (char ch : csv)
    if (ch == '\n') ++rows;
  CHECK(rows == 81);

  // Determinism of both artifacts.
  const auto r2 = run(
      "export --config " + (dir / "c.cfg").string() + " --out " + (dir / "b").string(), dir);
  CHECK(r2.exit_code == 0);
  CHECK(read_file(dir / "b" / "mesh.obj") == obj);
  CHECK(read_file(dir / "b" / "points.csv") == csv);
}

TEST_CASE("cylinder export is a rectangular coordinate mesh") {
  const fs::path dir = fresh_dir("export-cyl");
  write_file(dir / "c.cfg",
             "chart.kind = builtin\nbuiltin.name = vertical_cylinder\n"
             "export.projection = coords\nexport.axes = 0,1,4\ngrid.points = 7\n");
  const auto r = run(
      "export --config " + (dir / "c.cfg").string() + " --out " + dir.string(), dir);
  REQUIRE(r.exit_code == 0);
  const std::string obj = read_file(dir / "mesh.obj");
  int vcount = 0;
  std::istringstream in(obj);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) != 0) continue;
    ++vcount;
    std::istringstream ls(line.substr(2));
    double x, y, z;
    REQUIRE((ls >> x >> y >> z));
    // Vertices of the cylinder lie on the unit circle times a height range.
    CHECK(std::abs(std::hypot(x, y) - 1.0) < 1e-9);
    CHECK(std::abs(z) <= 1.0);
  }
  CHECK(vcount == 49);
}

TEST_CASE("export rejects non-surface charts") {
  const fs::path dir = fresh_dir("export-dim");
  write_file(dir / "c.cfg", "chart.kind = builtin\nbuiltin.name = product_hypersurface\n");
  const auto r = run("export --config " + (dir / "c.cfg").string(), dir);
  CHECK(r.exit_code == 2);
}

TEST_CASE("sweep reports the height dichotomy") {
  const fs::path dir = fresh_dir("sweep");
  write_file(dir / "c.cfg",
             "sweep.p_values = 1.0,2.0\nsweep.q_fracs = 0,0.5\ngrid.points = 7\n");
  const auto r = run(
      "sweep --config " + (dir / "c.cfg").string() + " --out " + dir.string(), dir);
  CHECK(r.exit_code == 0);

  const std::string csv = read_file(dir / "sweep.csv");
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "p,q,r,h,ell,max_umbilicity,varphi_mid,arclength_mid");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> cols;
    while (std::getline(ls, tok, ',')) cols.push_back(tok);
    REQUIRE(cols.size() == 8);
    const double h = std::stod(cols[3]);
    const int ell = std::stoi(cols[4]);
    CHECK(ell == (h > 1e-12 ? 2 : 1));
    CHECK(std::stod(cols[5]) < 1e-5);
  }
  CHECK(rows == 4);
}

TEST_CASE("ode comparison passes") {
  const fs::path dir = fresh_dir("ode");
  write_file(dir / "c.cfg", "ode.p = 2.0\node.q = 1.0\n");
  const auto r = run(
      "ode-compare --config " + (dir / "c.cfg").string() + " --out " + dir.string(), dir);
  CHECK(r.exit_code == 0);
  CHECK(read_file(dir / "ode_compare.csv").rfind("s,closed_plus", 0) == 0);
}
