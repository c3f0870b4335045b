#pragma once

// Relative invariants of second-order ODEs y'' = f(x, y, p), flatness, the
// fixed-M and fixed-E orbit equations of central forces, and the Wunschmann
// condition for the third-order central-force equation.
//
// Orbit equations use x = theta, y = rho = 1/r, p = rho'.

#include <span>
#include <string>
#include <vector>

#include "kepler_sym/expr.hpp"

namespace kepler_sym {

struct SecondOrderODE {
  Expr f;  // in x, y, p
  Box box;
};

struct ThirdOrderODE {
  Expr F;  // in theta, rho, rho1, rho2
  Box box;
};

// Default boxes: x in [0, 1], y in [0.5, 2], p in [-1, 1]; and theta in
// [0, 1], rho in [1, 2], rho1, rho2 in [-1, 1].
Box default_box2();
Box default_box3();

// Exact rational when x is a fraction with denominator <= 64, else real.
Number number_from_double(double x);

Expr I1(const SecondOrderODE& ode);
// D^2 f_pp - 4 D f_py + f_p (4 f_py - D f_pp) - 3 f_pp f_y + 6 f_yy with
// D = d/dx + p d/dy + f d/dp.
Expr I2(const SecondOrderODE& ode);

struct Flatness {
  bool flat;
  ZeroTestResult i1;
  ZeroTestResult i2;
};

Flatness flatness(const SecondOrderODE& ode, const ZeroTestOptions& options = {});
bool is_flat(const SecondOrderODE& ode);

// rho'' = -rho - f(1/rho) / (M^2 rho^2) for the radial force f(r) (an Expr
// in "r", negative when attractive). Throws Error(kInvalidArgument) if M = 0.
SecondOrderODE fixed_M_ode(const Expr& force, double M, Box box = default_box2());

// rho'' = -rho - f(1/rho) (p^2 + rho^2) / (2 rho^2 (E - V(1/rho))) with the
// potential V (V' = -f) passed explicitly. Throws Error(kPositivity) when
// E - V(1/rho) <= 0 somewhere on the box's y interval.
SecondOrderODE fixed_E_ode(const Expr& force, const Expr& potential, double E,
                           Box box = default_box2());

// rho''' = rho' [(rho'' + rho)(f'/f - 2/rho) - 1] where f is the force
// magnitude written as a function of "rho". Throws Error(kVanishingForce)
// when f vanishes on the box's rho interval.
ThirdOrderODE central_3rd_order(const Expr& force_of_rho, Box box = default_box3());

// F_rho + (D - (2/3) F_rho2) K, K = (1/6) D F_rho2 - (1/9) F_rho2^2 - (1/2) F_rho1.
Expr wunschmann_residual(const ThirdOrderODE& ode);

enum class ScanKind { kWunschmann, kFixedEFlat, kFixedMFlat, kZeroEFlat };
std::string_view to_string(ScanKind kind);

struct ScanRow {
  double alpha;
  // wunschmann: residual vanishes; *-flat: the family is flat.
  bool pass;
  // Largest scaled residual among the tested invariants.
  double residual;
};

// Power laws |f| = r^alpha. wunschmann uses f(rho) = rho^(-alpha); the flat
// scans use M = 1 (fixed M), E = 1 (fixed E) and E = 0, choosing the sign
// of the force so that E - V > 0 on the box (the equations do not depend on
// that sign). Rows come back in the order of alphas.
std::vector<ScanRow> power_law_scan(std::span<const double> alphas, ScanKind which,
                                    const ZeroTestOptions& options = {});

// Scan of a single alpha; power_law_scan applies it to each entry.
ScanRow power_law_row(double alpha, ScanKind which, const ZeroTestOptions& options = {});

}  // namespace kepler_sym
