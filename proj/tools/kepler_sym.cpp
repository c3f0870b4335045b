// kepler_sym: verification suites, orbit inspection, ODE invariants, point
// maps and envelope data.
//
// Exit status: 0 success, 1 verification failure or domain error, 2 usage
// or parse error.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kepler_sym/error.hpp"
#include "kepler_sym/expr.hpp"
#include "kepler_sym/invariants.hpp"
#include "kepler_sym/maps.hpp"
#include "kepler_sym/orbit.hpp"
#include "kepler_sym/parallel.hpp"
#include "kepler_sym/theorems.hpp"
#include "kepler_sym/verify.hpp"

using json = nlohmann::ordered_json;
using namespace kepler_sym;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;
constexpr double kPi = std::numbers::pi;

// Thrown for malformed option values that CLI11 cannot validate itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json orbit_json(const KeplerOrbit& o) { return {{"a", o.a()}, {"b", o.b()}, {"c", o.c()}}; }

json points_json(const std::vector<PlanePoint>& pts) {
  json arr = json::array();
  for (const auto& p : pts) arr.push_back({p.x, p.y});
  return arr;
}

// "y=2,p=0" -> bindings.
Bindings parse_bindings(const std::string& text) {
  Bindings b;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("binding '" + item + "' is not name=value");
    std::string name = item.substr(0, eq);
    name.erase(0, name.find_first_not_of(' '));
    name.erase(name.find_last_not_of(' ') + 1);
    try {
      std::size_t used = 0;
      std::string value = item.substr(eq + 1);
      b[name] = std::stod(value, &used);
      if (value.find_first_not_of(' ', used) != std::string::npos) throw std::invalid_argument(value);
    } catch (const std::logic_error&) {
      throw UsageError("binding '" + item + "' has a malformed value");
    }
  }
  return b;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string suite = "all";
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  bool json = false;
  std::string exec = "openmp";
};

int cmd_verify(const VerifyArgs& args) {
  VerifyOptions opt;
  if (args.seed) {
    opt.seed = *args.seed;
  } else if (const char* env = std::getenv("KEPLER_SYM_SEED")) {
    try {
      opt.seed = std::stoull(env);
    } catch (const std::logic_error&) {
      throw UsageError(std::string("KEPLER_SYM_SEED is not an integer: ") + env);
    }
  }
  opt.tol = args.tol;
  opt.exec = args.exec == "serial" ? Exec::kSerial : Exec::kOpenMP;
  VerifyReport rep = run_suite(args.suite, opt);
  if (args.json) {
    std::cout << to_json(rep) << "\n";
  } else {
    for (const CaseResult& c : rep.cases) {
      std::string status(to_string(c.status));
      for (char& ch : status) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      std::cout << status << "  " << c.name << "  residual=" << c.residual << "  tol=" << c.tol;
      if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
      std::cout << "\n";
    }
    std::cout << rep.summary.pass << " passed, " << rep.summary.fail << " failed, "
              << rep.summary.error << " errors (suite " << rep.suite << ", seed " << rep.seed << ")\n";
  }
  return rep.ok() ? kOk : kFailure;
}

// ---------------------------------------------------------------- orbit

struct OrbitArgs {
  double a = 0.0, b = 0.0, c = 0.0;
  int n = 100;
  std::string format;
};

int cmd_orbit_info(const OrbitArgs& args) {
  KeplerOrbit o = KeplerOrbit::from_abc(args.a, args.b, args.c);
  OrbitGeometry g = geometry(o);
  Conserved q = conserved(o);
  json j = orbit_json(o);
  j["class"] = std::string(to_string(o.conic_class()));
  j["e"] = q.e;
  j["E"] = q.E;
  j["M"] = q.M;
  j["semi_major"] = g.semi_major ? json(*g.semi_major) : json(nullptr);
  j["semi_minor"] = g.semi_minor ? json(*g.semi_minor) : json(nullptr);
  j["latus_rectum"] = g.latus_rectum;
  j["pericenter_angle"] = g.pericenter_angle;
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_orbit_sample(const OrbitArgs& args) {
  if (args.n < 3) throw UsageError("--n must be at least 3");
  KeplerOrbit o = KeplerOrbit::from_abc(args.a, args.b, args.c);
  std::vector<double> th = sample_angles(o, args.n);
  if (args.format == "json") {
    json arr = json::array();
    for (double t : th) {
      PlanePoint p = PlanePoint::polar(radius(o, t), t);
      arr.push_back({{"theta", t}, {"x", p.x}, {"y", p.y}});
    }
    std::cout << arr.dump(2) << "\n";
  } else {
    std::cout << "theta,x,y\n";
    std::cout.precision(17);
    for (double t : th) {
      PlanePoint p = PlanePoint::polar(radius(o, t), t);
      std::cout << t << "," << p.x << "," << p.y << "\n";
    }
  }
  return kOk;
}

// ---------------------------------------------------------------- ode

struct OdeArgs {
  std::string f;
  std::string at;
  std::optional<double> alpha;
  std::string F;
  std::uint64_t seed = 0x5eed;
};

int cmd_ode_invariants(const OdeArgs& args) {
  SecondOrderODE ode{parse(args.f), default_box2()};
  Bindings b = parse_bindings(args.at);
  json j;
  j["f"] = ode.f.to_string();
  j["I1"] = number_or_null(eval(I1(ode), b));
  j["I2"] = number_or_null(eval(I2(ode), b));
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_ode_wunschmann(const OdeArgs& args) {
  ThirdOrderODE ode;
  json j;
  if (args.alpha) {
    ode = central_3rd_order(pow(Expr::var("rho"), number_from_double(-*args.alpha)));
    j["alpha"] = *args.alpha;
  } else if (!args.F.empty()) {
    ode = ThirdOrderODE{parse(args.F), default_box3()};
  } else {
    throw UsageError("ode wunschmann needs --alpha or --F");
  }
  Expr w = wunschmann_residual(ode);
  j["F"] = ode.F.to_string();
  if (!args.at.empty()) {
    j["residual"] = number_or_null(eval(w, parse_bindings(args.at)));
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  ZeroTestOptions opt;
  opt.seed = args.seed;
  ZeroTestResult z = zero_test(w, ode.box, opt);
  j["zero"] = z.zero;
  j["residual"] = z.max_scaled_residual;
  j["max_abs_value"] = z.max_abs_value;
  std::cout << j.dump(2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------- map

struct MapArgs {
  std::string in;
  std::string out;
  double M = 1.0;
  double E = 1.0;
};

struct CsvPoints {
  std::vector<PlanePoint> points;
};

CsvPoints read_points(const std::string& path) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (!path.empty() && path != "-") {
    file.open(path);
    if (!file) throw Error(ErrorCode::kInvalidArgument, "cannot read " + path);
    in = &file;
  }
  std::string line;
  if (!std::getline(*in, line)) throw Error(ErrorCode::kInvalidArgument, "empty input");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ',')) {
      col.erase(col.find_last_not_of(" \r") + 1);
      header.push_back(col);
    }
  }
  auto col_of = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw Error(ErrorCode::kInvalidArgument, "input header lacks column " + name);
  };
  std::size_t cx = col_of("x"), cy = col_of("y");
  CsvPoints out;
  int row = 1;
  while (std::getline(*in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() <= std::max(cx, cy)) {
      throw Error(ErrorCode::kInvalidArgument, "row " + std::to_string(row) + " is short");
    }
    try {
      out.points.push_back({std::stod(cells[cx]), std::stod(cells[cy])});
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kInvalidArgument, "row " + std::to_string(row) + " has a malformed number");
    }
  }
  return out;
}

int cmd_map(const std::string& name, const MapArgs& args) {
  CsvPoints in = read_points(args.in);
  std::vector<MappedPoint> out;
  if (name == "parabola-chart") {
    // Input columns x, y are the chart coordinates (X, Y).
    for (const PlanePoint& p : in.points) {
      try {
        out.push_back({parabola_chart(p.x, p.y), std::nullopt});
      } catch (const Error& e) {
        out.push_back({{std::nan(""), std::nan("")}, e.code()});
      }
    }
  } else {
    PointMap m = name == "square" ? PointMap::kSquare : name == "flattenM" ? PointMap::kFlattenM : PointMap::kHill;
    double param = m == PointMap::kFlattenM ? args.M : args.E;
    if (m == PointMap::kFlattenM && args.M == 0.0) throw UsageError("--M must be nonzero");
    if (m == PointMap::kHill && !(args.E > 0.0)) throw UsageError("--E must be positive");
    out = map_points(m, param, in.points, Exec::kOpenMP);
  }
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!args.out.empty() && args.out != "-") {
    file.open(args.out);
    if (!file) throw Error(ErrorCode::kInvalidArgument, "cannot write " + args.out);
    os = &file;
  }
  os->precision(17);
  *os << "theta,x,y,err\n";
  for (const MappedPoint& p : out) {
    if (p.error) {
      *os << "nan,nan,nan," << to_string(*p.error) << "\n";
    } else {
      *os << std::atan2(p.point.y, p.point.x) << "," << p.point.x << "," << p.point.y << ",\n";
    }
  }
  return kOk;
}

// ---------------------------------------------------------------- envelope

struct EnvelopeArgs {
  double B = 2.0, x1 = 1.0;
  double E = -0.5, x0 = 1.0;
  double Delta = kPi, Px = 1.0, Py = 0.0;
  int members = 20;
  int samples = 200;
};

json orbit_curve_json(const KeplerOrbit& o, int n) {
  json j = orbit_json(o);
  j["class"] = std::string(to_string(o.conic_class()));
  j["points"] = points_json(sample(o, n));
  return j;
}

int cmd_envelope(const std::string& kind, const EnvelopeArgs& args) {
  if (args.members < 1 || args.samples < 3) throw UsageError("--members >= 1 and --samples >= 3 required");
  json j;
  j["kind"] = kind;
  if (kind == "minor-axis") {
    if (!(args.B > 0.0 && args.x1 > 0.0)) throw UsageError("--B and --x1 must be positive");
    KeplerOrbit env = envelope_minor_axis(args.B, args.x1);
    j["p"] = args.B * args.B / (4.0 * args.x1);
    j["envelope"] = orbit_curve_json(env, args.samples);
    json fam = json::array();
    for (const KeplerOrbit& m : minor_axis_family(args.B, args.x1, args.members)) {
      fam.push_back(orbit_curve_json(m, args.samples));
    }
    j["family"] = std::move(fam);
  } else if (kind == "energy") {
    KeplerOrbit env = envelope_energy(args.E, args.x0);
    PlanePoint f = second_focus(env);
    j["p"] = (1.0 + args.E * args.x0) / (args.x0 * args.E * args.E);
    j["envelope"] = orbit_curve_json(env, args.samples);
    j["second_focus"] = {f.x, f.y};
    json fam = json::array();
    for (const KeplerOrbit& m : energy_family(args.E, args.x0, args.members)) {
      fam.push_back(orbit_curve_json(m, args.samples));
    }
    j["family"] = std::move(fam);
  } else {
    if (!(args.Delta > 0.0)) throw UsageError("--Delta must be positive");
    PlanePoint P{args.Px, args.Py};
    HookeEnvelope env = envelope_hooke(args.Delta, P);
    j["lines"] = json::array({{{"normal", {env.normal.x, env.normal.y}}, {"offset", env.offset}},
                              {{"normal", {-env.normal.x, -env.normal.y}}, {"offset", env.offset}}});
    json fam = json::array();
    for (int k = 0; k < args.members; ++k) {
      double shear = args.members == 1 ? 0.0 : -2.0 + 4.0 * k / (args.members - 1);
      ParametricCurve m = hooke_member(args.Delta, shear, P);
      std::vector<PlanePoint> pts;
      for (int i = 0; i < args.samples; ++i) pts.push_back(m.point(m.t0() + (m.t1() - m.t0()) * i / args.samples));
      fam.push_back({{"shear", shear}, {"points", points_json(pts)}});
    }
    j["family"] = std::move(fam);
  }
  std::cout << j.dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kepler orbit symmetries, duality and invariants"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a property suite and report per-case residuals");
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  verify->add_option("--suite", va.suite, "Suite name")->check(CLI::IsMember(suites));
  verify->add_option("--seed", va.seed, "Seed (default: $KEPLER_SYM_SEED, else 1)");
  verify->add_option("--tol", va.tol, "Override every case tolerance")->check(CLI::PositiveNumber);
  verify->add_flag("--json", va.json, "Emit the JSON report");
  verify->add_option("--exec", va.exec, "Case scheduling")->check(CLI::IsMember({"serial", "openmp"}));

  OrbitArgs oa;
  auto* orbit = app.add_subcommand("orbit", "Inspect or sample an orbit ax + by + cr = 1");
  orbit->require_subcommand(1);
  auto* oinfo = orbit->add_subcommand("info", "Conserved quantities and geometry as JSON");
  auto* osample = orbit->add_subcommand("sample", "n points of the attractive branch");
  for (auto* sc : {oinfo, osample}) {
    sc->add_option("--a", oa.a)->required();
    sc->add_option("--b", oa.b)->required();
    sc->add_option("--c", oa.c)->required();
  }
  osample->add_option("--n", oa.n, "Number of points");
  osample->add_option("--format", oa.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  OdeArgs da;
  auto* ode = app.add_subcommand("ode", "Relative invariants and the Wunschmann residual");
  ode->require_subcommand(1);
  auto* oinv = ode->add_subcommand("invariants", "I1 and I2 of y'' = f(x, y, p) at a point");
  oinv->add_option("--f", da.f, "Right-hand side in x, y, p")->required();
  oinv->add_option("--at", da.at, "Bindings, e.g. \"y=2,p=0\"")->required();
  auto* owun = ode->add_subcommand("wunschmann", "Wunschmann residual of the central-force equation");
  auto* alpha_opt = owun->add_option("--alpha", da.alpha, "Power law |f| = r^alpha");
  owun->add_option("--F", da.F, "Right-hand side in theta, rho, rho1, rho2")->excludes(alpha_opt);
  owun->add_option("--at", da.at, "Evaluate at these bindings instead of zero-testing");
  owun->add_option("--seed", da.seed, "Zero-test seed");

  MapArgs ma;
  std::string map_name;
  auto* map = app.add_subcommand("map", "Apply a point map to CSV points (columns x, y)");
  map->add_option("name", map_name, "square, flattenM, hill or parabola-chart")
      ->required()
      ->check(CLI::IsMember({"square", "flattenM", "hill", "parabola-chart"}));
  map->add_option("--in", ma.in, "Input CSV (default stdin)");
  map->add_option("--out", ma.out, "Output CSV (default stdout)");
  map->add_option("--M", ma.M, "Angular momentum for flattenM");
  map->add_option("--E", ma.E, "Energy for hill");

  EnvelopeArgs ea;
  std::string env_kind;
  auto* envelope = app.add_subcommand("envelope", "Envelope and family data as JSON");
  envelope->add_option("kind", env_kind, "minor-axis, energy or hooke")
      ->required()
      ->check(CLI::IsMember({"minor-axis", "energy", "hooke"}));
  envelope->add_option("--B", ea.B, "Minor axis");
  envelope->add_option("--x1", ea.x1, "Common point (x1, 0)");
  envelope->add_option("--E", ea.E, "Energy");
  envelope->add_option("--x0", ea.x0, "Common point (x0, 0)");
  envelope->add_option("--Delta", ea.Delta, "Hooke ellipse area");
  envelope->add_option("--Px", ea.Px, "Hooke common point x");
  envelope->add_option("--Py", ea.Py, "Hooke common point y");
  envelope->add_option("--members", ea.members, "Family size");
  envelope->add_option("--samples", ea.samples, "Points per curve");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*verify) return cmd_verify(va);
    if (*oinfo) return cmd_orbit_info(oa);
    if (*osample) return cmd_orbit_sample(oa);
    if (*oinv) return cmd_ode_invariants(da);
    if (*owun) return cmd_ode_wunschmann(da);
    if (*map) return cmd_map(map_name, ma);
    if (*envelope) return cmd_envelope(env_kind, ea);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const SyntaxError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kLineNotOrbit) {
      std::cerr << "line, not a Kepler orbit\n";
    } else {
      std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    }
    return kFailure;
  }
  return kUsage;
}
