#pragma once

// Reference computations that share no code path with the functions they
// check: closed-form vector fields, brute-force intersection counts, finite
// differences and derivative-free tangency search.

#include <functional>
#include <vector>

#include "kepler_sym/curve.hpp"
#include "kepler_sym/minkowski.hpp"
#include "kepler_sym/orbit.hpp"

namespace kepler_sym::oracle {

// Plane fields of the seven basis generators: r d_r, d_theta, r d_x, r d_y,
// -x r d_r, -y r d_r, -r^2 d_r, with r replaced by sheet * r where the cone
// height enters (fields 3, 4, 7).
PlanePoint plane_field(int basis, const PlanePoint& p, int sheet);

// Dual fields: -(a,b,c), (-b,a,0), (-c,0,-a), (0,-c,-b), d_a, d_b, d_c.
MinkVec dual_field(int basis, const MinkVec& v);

// Intersections of two ellipses from sign changes of rho1 - rho2 on a dense
// grid, plus touching points where |rho1 - rho2| <= tol at a local minimum.
int intersection_count(const KeplerOrbit& o1, const KeplerOrbit& o2, int samples = 20000,
                       double tol = 1e-7);

// Central differences of order 1..3 with O(h^4) error.
double fd1(const std::function<double(double)>& f, double x, double h);
double fd2(const std::function<double(double)>& f, double x, double h);
double fd3(const std::function<double(double)>& f, double x, double h);

// Kepler vertices of the circle with center (d, 0), radius R > |d|, as polar
// angles: zeros of rho''' + rho' for r(theta) = d cos + sqrt(R^2 - d^2 sin^2).
std::vector<double> circle_kepler_vertex_angles(double d, double R, int grid = 4096);

// Orbit through gamma(t - h), gamma(t), gamma(t + h) by least squares.
MinkVec orbit_through_three(const ParametricCurve& gamma, double t, double h);

struct TangencyOracle {
  double residual;  // |F| at the extremum of F along the member closest to 0
  bool crossing;    // F takes both signs beyond tol
};

// Dense sampling of F along the member points, then golden-section
// refinement of each discrete local extremum. No derivatives are used.
TangencyOracle tangency(const std::function<PlanePoint(double)>& member, double t0, double t1,
                        const std::function<double(const PlanePoint&)>& F, double tol = 1e-7,
                        int samples = 8192);

// Membership residual of p on the full conic (either branch) of dual v.
double conic_residual(const MinkVec& v, const PlanePoint& p);

}  // namespace kepler_sym::oracle
