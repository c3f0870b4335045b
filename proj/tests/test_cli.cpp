#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::filesystem::path scratch() {
  auto dir = std::filesystem::temp_directory_path() / ("kepler_sym_cli_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Run run(const std::string& args, const std::string& env = "") {
  auto dir = scratch();
  std::string cmd = env + " '" + std::string(KEPLER_SYM_CLI) + "' " + args + " >'" + (dir / "out").string() +
                    "' 2>'" + (dir / "err").string() + "'";
  int st = std::system(cmd.c_str());
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, slurp(dir / "out"), slurp(dir / "err")};
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    rows.push_back(cells);
  }
  return rows;
}

std::string write_input(const std::string& name, const std::string& text) {
  auto p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run("verify --suite nope").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("orbit info --a 1").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("orbit info") {
  Run r = run("orbit info --a 0 --b 0 --c 1");
  REQUIRE(r.code == 0);
  auto j = json_of(r);
  CHECK(j["e"] == 0.0);
  CHECK(j["E"] == -0.5);
  CHECK(j["M"] == 1.0);
  CHECK(j["class"] == "ellipse");
  auto p = json_of(run("orbit info --a 1 --b 0 --c 1"));
  CHECK(p["semi_major"].is_null());
}

TEST_CASE("a line is not an orbit") {
  Run r = run("orbit info --a 1 --b 0 --c 0");
  CHECK(r.code == 1);
  CHECK(r.err.find("line, not a Kepler orbit") != std::string::npos);
}

TEST_CASE("orbit sample") {
  Run r = run("orbit sample --a 0.5 --b 0 --c 1 --n 100");
  REQUIRE(r.code == 0);
  auto rows = csv(r.out);
  REQUIRE(rows.size() == 101);
  CHECK(rows[0] == std::vector<std::string>{"theta", "x", "y"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    double x = std::stod(rows[i][1]), y = std::stod(rows[i][2]);
    CHECK(std::abs(0.5 * x + std::hypot(x, y) - 1.0) <= 1e-12);
  }
  auto j = json_of(run("orbit sample --a 0 --b 0 --c 1 --n 7 --format json"));
  CHECK(j.size() == 7);
}

TEST_CASE("ode invariants") {
  Run r = run("ode invariants --f '(y^2+p^2)/(2*(y-1))-y' --at 'y=2,p=0,x=0'");
  REQUIRE(r.code == 0);
  auto j = json_of(r);
  CHECK(std::abs(j["I2"].get<double>() - 9.0) <= 1e-10);
  CHECK(std::abs(j["I1"].get<double>()) <= 1e-10);
  CHECK(run("ode invariants --f '(y^2+' --at 'y=2'").code == 2);
  CHECK(run("ode invariants --f 'y' --at 'y=two'").code == 2);
}

TEST_CASE("ode wunschmann") {
  Run r = run("ode wunschmann --alpha -2");
  REQUIRE(r.code == 0);
  auto j = json_of(r);
  CHECK(j["zero"] == true);
  CHECK(j["residual"].get<double>() <= 1e-10);
  auto bad = json_of(run("ode wunschmann --alpha -3"));
  CHECK(bad["zero"] == false);
  CHECK(run("ode wunschmann --alpha 1 --F 'rho1'").code == 2);
  CHECK(run("ode wunschmann").code == 2);
}

TEST_CASE("verify exit codes and deterministic json") {
  Run a = run("verify --suite maps --seed 7 --json");
  REQUIRE(a.code == 0);
  Run b = run("verify --suite maps --json", "KEPLER_SYM_SEED=7");
  Run c = run("verify --suite maps --seed 7 --json --exec serial");
  auto ja = json_of(a), jb = json_of(b), jc = json_of(c);
  CHECK(ja["seed"] == 7);
  for (auto* j : {&ja, &jb, &jc}) j->erase("wall_time_s");
  CHECK(ja.dump() == jb.dump());
  CHECK(ja.dump() == jc.dump());
  Run f = run("verify --suite duality --tol 1e-300");
  CHECK(f.code == 1);
  CHECK(f.out.find("FAIL") != std::string::npos);
  Run h = run("verify --suite symmetry --seed 7");
  CHECK(h.code == 0);
  CHECK(h.out.find("PASS  symmetry.commuting_square") != std::string::npos);
}

TEST_CASE("map square") {
  std::string in = "x,y\n1,-1\n1,0.5\n1,2\n0,0\n";
  Run r = run("map square --in '" + write_input("line.csv", in) + "'");
  REQUIRE(r.code == 0);
  auto rows = csv(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == std::vector<std::string>{"theta", "x", "y", "err"});
  for (int i = 1; i <= 3; ++i) {
    double x = std::stod(rows[static_cast<std::size_t>(i)][1]), y = std::stod(rows[static_cast<std::size_t>(i)][2]);
    CHECK(std::abs(x - (1 - y * y / 4)) <= 1e-14);
    CHECK(rows[static_cast<std::size_t>(i)][3].empty());
  }
  CHECK(rows[4][3] == "origin-point");
}

TEST_CASE("map hill and flattenM") {
  std::string samples = run("orbit sample --a 1.7320508075688772 --b 0 --c 1 --n 30").out;
  std::string path = write_input("hyp.csv", samples);
  auto rows = csv(run("map hill --E 1 --in '" + path + "'").out);
  REQUIRE(rows.size() == 31);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::hypot(std::stod(rows[i][1]), std::stod(rows[i][2])) < 0.5);
  }
  std::string ell = write_input("ell.csv", run("orbit sample --a 0.5 --b 0.2 --c 1 --n 12").out);
  auto out = scratch() / "flat.csv";
  REQUIRE(run("map flattenM --M 1 --in '" + ell + "' --out '" + out.string() + "'").code == 0);
  auto flat = csv(slurp(out));
  // Collinear: cross products against the first two images vanish.
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 1; i < flat.size(); ++i) {
    if (flat[i][3].empty()) pts.push_back({std::stod(flat[i][1]), std::stod(flat[i][2])});
  }
  REQUIRE(pts.size() >= 3);
  for (std::size_t i = 2; i < pts.size(); ++i) {
    double ux = pts[1].first - pts[0].first, uy = pts[1].second - pts[0].second;
    double vx = pts[i].first - pts[0].first, vy = pts[i].second - pts[0].second;
    CHECK(std::abs(ux * vy - uy * vx) <= 1e-9 * (1 + std::hypot(ux, uy) * std::hypot(vx, vy)));
  }
  CHECK(run("map flattenM --M 0 --in '" + ell + "'").code == 2);
  CHECK(run("map square --in /nonexistent/file.csv").code == 1);
}

TEST_CASE("envelopes") {
  auto m = json_of(run("envelope minor-axis --B 2 --x1 1 --members 5 --samples 50"));
  CHECK(m["p"] == 1.0);
  for (const auto& p : m["envelope"]["points"]) {
    double x = p[0], y = p[1];
    CHECK(std::abs(y * y - 4 * (x + 1)) <= 1e-9 * (1 + std::abs(x)));
  }
  CHECK(m["family"].size() == 5);
  auto e = json_of(run("envelope energy --E -0.5 --x0 1"));
  CHECK(std::abs(e["second_focus"][0].get<double>() - 1.0) <= 1e-9);
  CHECK(std::abs(e["second_focus"][1].get<double>()) <= 1e-9);
  auto h = json_of(run("envelope hooke --Delta 3.141592653589793"));
  REQUIRE(h["lines"].size() == 2);
  CHECK(std::abs(h["lines"][0]["offset"].get<double>() - 1.0) <= 1e-15);
  CHECK(std::abs(std::abs(h["lines"][0]["normal"][1].get<double>()) - 1.0) <= 1e-15);
  CHECK(run("envelope energy --E -0.5 --x0 3").code == 1);
}
