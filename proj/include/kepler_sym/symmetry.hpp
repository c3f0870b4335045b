#pragma once

// The 7-dimensional orbital symmetry group of the Kepler problem, realized as
// 4x4 block matrices [[A, 0], [b^T, lambda]] acting projectively on the cone
// x^2 + y^2 = z^2 (and so on the Kepler plane) and dually on R^{2,1}.

#include <Eigen/Dense>
#include <array>

#include "kepler_sym/minkowski.hpp"
#include "kepler_sym/orbit.hpp"

namespace kepler_sym {

using Mat4 = Eigen::Matrix4d;
using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

// J3 = diag(1, 1, -1).
const Mat3& minkowski_metric();

// Traceless generator
//   [ x1/4  -x2    x3    0     ]
//   [ x2    x1/4   x4    0     ]
//   [ x3    x4     x1/4  0     ]
//   [ x5    x6     x7   -3x1/4 ]
class AlgebraElement {
 public:
  AlgebraElement() : AlgebraElement(std::array<double, 7>{}) {}
  explicit AlgebraElement(const std::array<double, 7>& coords);

  // Basis element with x_index = 1, index in 1..7.
  static AlgebraElement basis(int index);
  // Throws Error(kOutsideAlgebra) unless m has the generator shape.
  static AlgebraElement from_matrix(const Mat4& m, double tol = 1e-10);

  const std::array<double, 7>& coords() const { return coords_; }
  double operator[](int index) const { return coords_.at(static_cast<std::size_t>(index - 1)); }
  const Mat4& matrix() const { return matrix_; }

  friend AlgebraElement operator+(const AlgebraElement& u, const AlgebraElement& v);
  friend AlgebraElement operator*(double s, const AlgebraElement& v);

 private:
  std::array<double, 7> coords_;
  Mat4 matrix_;
};

AlgebraElement algebra(double x1, double x2, double x3, double x4, double x5, double x6,
                       double x7);

// [X1, X2] = X1 X2 - X2 X1 in x1..x7 coordinates.
AlgebraElement bracket(const AlgebraElement& u, const AlgebraElement& v);

class GroupElement {
 public:
  static GroupElement identity();
  // Throws Error(kInvalidGroupElement) if lambda == 0 or A is not a
  // conformal Lorentz matrix (A^T J3 A = kappa J3, kappa != 0).
  static GroupElement from_blocks(const Mat3& A, const Vec3& b, double lambda);
  static GroupElement from_matrix(const Mat4& m);

  const Mat3& A() const { return A_; }
  const Vec3& b() const { return b_; }
  double lambda() const { return lambda_; }
  Mat4 matrix() const;

  // kappa in A^T J3 A = kappa J3; its sign is recorded, either is accepted.
  double conformal_factor() const;
  // max |A^T J3 A - kappa J3| / |kappa|
  double conformal_residual() const;

  GroupElement inverse() const;
  friend GroupElement operator*(const GroupElement& g, const GroupElement& h);

 private:
  GroupElement(const Mat3& A, const Vec3& b, double lambda) : A_(A), b_(b), lambda_(lambda) {}

  Mat3 A_;
  Vec3 b_;
  double lambda_;
};

// exp(t X) by scaling and squaring with Pade approximants.
GroupElement exp(const AlgebraElement& X, double t = 1.0);

// q -> A q / (lambda + b.q) on the cone. Throws Error(kChartExit) when
// |lambda + b.q| <= 1e-12 |q| and Error(kVertexCrossing) when the image
// reaches the cone vertex.
ConePoint act_cone(const GroupElement& g, const ConePoint& q);
PlanePoint act_plane(const GroupElement& g, const PlanePoint& p, int sheet);

// Row-vector action p -> (lambda p + b^T) A^{-1}.
MinkVec act_dual(const GroupElement& g, const MinkVec& v);

struct PlaneVector {
  PlanePoint point;
  double vx;
  double vy;
};

// d/dt at t = 0 of pi(exp(tX) q), q = (x, y, sheet r, 1), pi = (X/W, Y/W).
PlaneVector vf_plane(const AlgebraElement& X, const PlanePoint& p, int sheet);
// d/dt at t = 0 of -(A/D, B/D, C/D) for (A, B, C, D) = (v, -1) exp(-tX).
MinkVec vf_dual(const AlgebraElement& X, const MinkVec& v);

// Generators preserving the Kepler orbits of energy E != 0 (rotation and
// two boosts with |E| translations). Throws Error(kZeroEnergy) for E = 0.
std::array<AlgebraElement, 3> fixed_energy_algebra(double E);
// Lift sheet used with fixed_energy_algebra: +1 for E < 0, -1 for E > 0.
int fixed_energy_sheet(double E);

// RK4 integration of vf_plane over [0, t]. Throws ChartExitError with the
// last time still in the chart if the path nears the origin or infinity.
PlanePoint flow(const AlgebraElement& X, const PlanePoint& p, double t, int sheet,
                int steps = 1000);
// RK4 integration of vf_dual over [0, t].
MinkVec flow_dual(const AlgebraElement& X, const MinkVec& v, double t, int steps = 1000);

}  // namespace kepler_sym
