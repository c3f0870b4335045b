#include "kepler_sym/invariants.hpp"

#include <algorithm>
#include <cmath>

#include "kepler_sym/error.hpp"

namespace kepler_sym {

namespace {

const Expr& Y() {
  static const Expr v = Expr::var("y");
  return v;
}
const Expr& P() {
  static const Expr v = Expr::var("p");
  return v;
}

// Force as a function of r, rewritten at r = 1/y.
Expr at_inverse(const Expr& e_of_r) { return substitute(e_of_r, "r", Expr(1) / Y()); }

Interval y_range(const Box& box, const char* name) {
  auto it = box.find(name);
  if (it == box.end()) {
    throw Error(ErrorCode::kInvalidArgument, std::string("box has no interval for ") + name);
  }
  return it->second;
}

constexpr int kGrid = 257;

}  // namespace

Box default_box2() { return {{"x", {0.0, 1.0}}, {"y", {0.5, 2.0}}, {"p", {-1.0, 1.0}}}; }

Box default_box3() {
  return {{"theta", {0.0, 1.0}}, {"rho", {1.0, 2.0}}, {"rho1", {-1.0, 1.0}}, {"rho2", {-1.0, 1.0}}};
}

Number number_from_double(double x) {
  for (std::int64_t den = 1; den <= 64; ++den) {
    double n = x * static_cast<double>(den);
    if (std::abs(n) < 9e15 && n == std::round(n)) {
      return Number(Rational(static_cast<std::int64_t>(n), den));
    }
  }
  return Number::real(x);
}

Expr I1(const SecondOrderODE& ode) {
  Expr d = ode.f;
  for (int i = 0; i < 4; ++i) d = diff(d, "p");
  return d;
}

Expr I2(const SecondOrderODE& ode) {
  JetContext ctx = order2_context(ode.f);
  auto D = [&](const Expr& e) { return total_derivative(e, ctx); };
  const Expr& f = ode.f;
  Expr fp = diff(f, "p");
  Expr fy = diff(f, "y");
  Expr fpp = diff(fp, "p");
  Expr fpy = diff(fp, "y");
  Expr fyy = diff(fy, "y");
  Expr dfpp = D(fpp);
  return D(dfpp) - Expr(4) * D(fpy) + fp * (Expr(4) * fpy - dfpp) - Expr(3) * fpp * fy +
         Expr(6) * fyy;
}

Flatness flatness(const SecondOrderODE& ode, const ZeroTestOptions& options) {
  Flatness out;
  out.i1 = zero_test(I1(ode), ode.box, options);
  out.i2 = zero_test(I2(ode), ode.box, options);
  out.flat = out.i1.zero && out.i2.zero;
  return out;
}

bool is_flat(const SecondOrderODE& ode) { return flatness(ode).flat; }

SecondOrderODE fixed_M_ode(const Expr& force, double M, Box box) {
  if (M == 0.0) throw Error(ErrorCode::kInvalidArgument, "fixed_M_ode needs M != 0");
  Expr m2 = Expr::constant(number_from_double(M * M));
  Expr f = -Y() - at_inverse(force) / (m2 * Y() * Y());
  return {f, std::move(box)};
}

SecondOrderODE fixed_E_ode(const Expr& force, const Expr& potential, double E, Box box) {
  Expr energy = Expr::constant(number_from_double(E));
  Expr gap = energy - at_inverse(potential);
  Interval yr = y_range(box, "y");
  for (int i = 0; i < kGrid; ++i) {
    double y = yr.lo + (yr.hi - yr.lo) * i / (kGrid - 1);
    if (!(eval(gap, {{"y", y}}) > 0.0)) {
      throw Error(ErrorCode::kPositivity,
                  "E - V(1/rho) <= 0 at rho = " + std::to_string(y) + "; shrink the box");
    }
  }
  Expr f = -Y() - at_inverse(force) * (P() * P() + Y() * Y()) / (Expr(2) * Y() * Y() * gap);
  return {f, std::move(box)};
}

ThirdOrderODE central_3rd_order(const Expr& force_of_rho, Box box) {
  Interval rr = y_range(box, "rho");
  for (int i = 0; i < kGrid; ++i) {
    double rho = rr.lo + (rr.hi - rr.lo) * i / (kGrid - 1);
    if (eval(force_of_rho, {{"rho", rho}}) == 0.0) {
      throw Error(ErrorCode::kVanishingForce, "force vanishes at rho = " + std::to_string(rho));
    }
  }
  Expr rho = Expr::var("rho");
  Expr rho1 = Expr::var("rho1");
  Expr rho2 = Expr::var("rho2");
  Expr log_slope = diff(force_of_rho, "rho") / force_of_rho;
  Expr F = rho1 * ((rho2 + rho) * (log_slope - Expr(2) / rho) - Expr(1));
  return {F, std::move(box)};
}

Expr wunschmann_residual(const ThirdOrderODE& ode) {
  JetContext ctx = order3_context(ode.F);
  auto D = [&](const Expr& e) { return total_derivative(e, ctx); };
  Expr Fq = diff(ode.F, "rho2");
  Expr Fp = diff(ode.F, "rho1");
  Expr Fy = diff(ode.F, "rho");
  Expr K = Expr(Rational(1, 6)) * D(Fq) - Expr(Rational(1, 9)) * Fq * Fq -
           Expr(Rational(1, 2)) * Fp;
  return Fy + D(K) - Expr(Rational(2, 3)) * Fq * K;
}

std::string_view to_string(ScanKind kind) {
  switch (kind) {
    case ScanKind::kWunschmann: return "wunschmann";
    case ScanKind::kFixedEFlat: return "fixedE-flat";
    case ScanKind::kFixedMFlat: return "fixedM-flat";
    case ScanKind::kZeroEFlat: return "zeroE-flat";
  }
  return "?";
}

namespace {

struct PowerLaw {
  Expr force;
  Expr potential;
};

// f = s r^alpha with s chosen so that V < 0 near r <= 1; V(r) = -s
// r^(alpha+1)/(alpha+1), or V = ln r for alpha = -1 (s = -1).
PowerLaw power_law(double alpha) {
  Expr r = Expr::var("r");
  if (alpha == -1.0) return {Expr(-1) / r, ln(r)};
  Expr s = alpha < -1.0 ? Expr(-1) : Expr(1);
  Number a1 = number_from_double(alpha + 1.0);
  Expr force = s * pow(r, number_from_double(alpha));
  Expr potential = -s * pow(r, a1) / Expr::constant(a1);
  return {force, potential};
}

}  // namespace

ScanRow power_law_row(double alpha, ScanKind which, const ZeroTestOptions& options) {
  if (which == ScanKind::kWunschmann) {
    Expr rho = Expr::var("rho");
    ThirdOrderODE ode = central_3rd_order(pow(rho, number_from_double(-alpha)));
    ZeroTestResult z = zero_test(wunschmann_residual(ode), ode.box, options);
    return {alpha, z.zero, z.max_scaled_residual};
  }
  PowerLaw law = power_law(alpha);
  SecondOrderODE ode;
  switch (which) {
    case ScanKind::kFixedMFlat:
      ode = fixed_M_ode(law.force, 1.0);
      break;
    case ScanKind::kFixedEFlat:
      ode = fixed_E_ode(law.force, law.potential, 1.0);
      break;
    case ScanKind::kZeroEFlat: {
      Box box = default_box2();
      box["y"] = {1.5, 3.0};
      ode = fixed_E_ode(law.force, law.potential, 0.0, box);
      break;
    }
    case ScanKind::kWunschmann:
      break;
  }
  Flatness fl = flatness(ode, options);
  return {alpha, fl.flat, std::max(fl.i1.max_scaled_residual, fl.i2.max_scaled_residual)};
}

std::vector<ScanRow> power_law_scan(std::span<const double> alphas, ScanKind which,
                                    const ZeroTestOptions& options) {
  std::vector<ScanRow> rows;
  rows.reserve(alphas.size());
  for (double a : alphas) rows.push_back(power_law_row(a, which, options));
  return rows;
}

}  // namespace kepler_sym
