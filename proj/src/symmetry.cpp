#include "kepler_sym/symmetry.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "kepler_sym/error.hpp"

namespace kepler_sym {

const Mat3& minkowski_metric() {
  static const Mat3 j = Vec3(1.0, 1.0, -1.0).asDiagonal();
  return j;
}

// ---------------------------------------------------------------- algebra

AlgebraElement::AlgebraElement(const std::array<double, 7>& x) : coords_(x) {
  const double q = x[0] / 4.0;
  matrix_ << q, -x[1], x[2], 0.0,
             x[1], q, x[3], 0.0,
             x[2], x[3], q, 0.0,
             x[4], x[5], x[6], -3.0 * q;
}

AlgebraElement AlgebraElement::basis(int index) {
  if (index < 1 || index > 7) throw Error(ErrorCode::kInvalidArgument, "basis index must be 1..7");
  std::array<double, 7> x{};
  x[static_cast<std::size_t>(index - 1)] = 1.0;
  return AlgebraElement(x);
}

AlgebraElement AlgebraElement::from_matrix(const Mat4& m, double tol) {
  AlgebraElement e({4.0 * m(0, 0), m(1, 0), m(2, 0), m(2, 1), m(3, 0), m(3, 1), m(3, 2)});
  double scale = 1.0 + m.cwiseAbs().maxCoeff();
  if ((e.matrix() - m).cwiseAbs().maxCoeff() > tol * scale) {
    throw Error(ErrorCode::kOutsideAlgebra, "matrix is not in the orbital symmetry algebra");
  }
  return e;
}

AlgebraElement operator+(const AlgebraElement& u, const AlgebraElement& v) {
  std::array<double, 7> x;
  for (std::size_t i = 0; i < 7; ++i) x[i] = u.coords_[i] + v.coords_[i];
  return AlgebraElement(x);
}

AlgebraElement operator*(double s, const AlgebraElement& v) {
  std::array<double, 7> x;
  for (std::size_t i = 0; i < 7; ++i) x[i] = s * v.coords_[i];
  return AlgebraElement(x);
}

AlgebraElement algebra(double x1, double x2, double x3, double x4, double x5, double x6,
                       double x7) {
  return AlgebraElement({x1, x2, x3, x4, x5, x6, x7});
}

AlgebraElement bracket(const AlgebraElement& u, const AlgebraElement& v) {
  Mat4 c = u.matrix() * v.matrix() - v.matrix() * u.matrix();
  return AlgebraElement::from_matrix(c);
}

// ---------------------------------------------------------------- group

GroupElement GroupElement::identity() {
  return GroupElement(Mat3::Identity(), Vec3::Zero(), 1.0);
}

GroupElement GroupElement::from_blocks(const Mat3& A, const Vec3& b, double lambda) {
  if (lambda == 0.0 || !std::isfinite(lambda)) {
    throw Error(ErrorCode::kInvalidGroupElement, "lambda must be a nonzero real");
  }
  GroupElement g(A, b, lambda);
  if (!A.allFinite() || !b.allFinite() || g.conformal_factor() == 0.0 ||
      g.conformal_residual() > 1e-10) {
    throw Error(ErrorCode::kInvalidGroupElement, "A is not in CO(2,1)");
  }
  return g;
}

GroupElement GroupElement::from_matrix(const Mat4& m) {
  double scale = m.cwiseAbs().maxCoeff();
  if (m.block<3, 1>(0, 3).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::kInvalidGroupElement, "matrix is not of the form [[A,0],[b,lambda]]");
  }
  return from_blocks(m.block<3, 3>(0, 0), m.block<1, 3>(3, 0).transpose(), m(3, 3));
}

Mat4 GroupElement::matrix() const {
  Mat4 m = Mat4::Zero();
  m.block<3, 3>(0, 0) = A_;
  m.block<1, 3>(3, 0) = b_.transpose();
  m(3, 3) = lambda_;
  return m;
}

double GroupElement::conformal_factor() const {
  return (A_.transpose() * minkowski_metric() * A_)(0, 0);
}

double GroupElement::conformal_residual() const {
  double kappa = conformal_factor();
  Mat3 r = A_.transpose() * minkowski_metric() * A_ - kappa * minkowski_metric();
  return r.cwiseAbs().maxCoeff() / std::abs(kappa);
}

GroupElement GroupElement::inverse() const {
  Mat3 ai = A_.inverse();
  Vec3 bi = -(ai.transpose() * b_) / lambda_;
  return GroupElement(ai, bi, 1.0 / lambda_);
}

GroupElement operator*(const GroupElement& g, const GroupElement& h) {
  // [[A,0],[b^T,l]] [[A',0],[b'^T,l']] = [[A A', 0], [b^T A' + l b'^T, l l']]
  return GroupElement(g.A_ * h.A_, h.A_.transpose() * g.b_ + g.lambda_ * h.b_,
                      g.lambda_ * h.lambda_);
}

GroupElement exp(const AlgebraElement& X, double t) {
  Mat4 m = (t * X.matrix()).exp();
  // Pade pivoting may leave roundoff in the structurally zero column.
  m.block<3, 1>(0, 3).setZero();
  return GroupElement::from_matrix(m);
}

// ---------------------------------------------------------------- actions

ConePoint act_cone(const GroupElement& g, const ConePoint& q) {
  Vec3 v(q.x, q.y, q.z);
  double den = g.lambda() + g.b().dot(v);
  if (std::abs(den) <= 1e-12 * v.norm()) {
    throw Error(ErrorCode::kChartExit, "image leaves the affine chart (lambda + b.q = 0)");
  }
  Vec3 w = g.A() * v / den;
  if (!w.allFinite()) throw Error(ErrorCode::kChartExit, "image leaves the affine chart");
  if (std::hypot(w(0), w(1)) <= 1e-300) {
    throw Error(ErrorCode::kVertexCrossing, "image crosses the cone vertex");
  }
  return {w(0), w(1), w(2)};
}

PlanePoint act_plane(const GroupElement& g, const PlanePoint& p, int sheet) {
  return project(act_cone(g, lift(p, sheet)));
}

MinkVec act_dual(const GroupElement& g, const MinkVec& v) {
  Vec3 row = g.lambda() * Vec3(v.a, v.b, v.c) + g.b();
  Vec3 w = g.A().transpose().partialPivLu().solve(row);
  if (!w.allFinite()) throw Error(ErrorCode::kChartExit, "dual image leaves the affine chart");
  return {w(0), w(1), w(2)};
}

PlaneVector vf_plane(const AlgebraElement& X, const PlanePoint& p, int sheet) {
  ConePoint c = lift(p, sheet);
  Eigen::Vector4d q(c.x, c.y, c.z, 1.0);
  Eigen::Vector4d v = X.matrix() * q;
  return {p, v(0) - p.x * v(3), v(1) - p.y * v(3)};
}

MinkVec vf_dual(const AlgebraElement& X, const MinkVec& v) {
  Eigen::RowVector4d p(v.a, v.b, v.c, -1.0);
  Eigen::RowVector4d w = -p * X.matrix();
  return {w(0) + v.a * w(3), w(1) + v.b * w(3), w(2) + v.c * w(3)};
}

std::array<AlgebraElement, 3> fixed_energy_algebra(double E) {
  if (E == 0.0) throw Error(ErrorCode::kZeroEnergy, "fixed-energy subalgebra needs E != 0");
  double k = std::abs(E);
  return {algebra(0, 1, 0, 0, 0, 0, 0), algebra(0, 0, 1, 0, k, 0, 0),
          algebra(0, 0, 0, 1, 0, k, 0)};
}

int fixed_energy_sheet(double E) { return E < 0.0 ? 1 : -1; }

PlanePoint flow(const AlgebraElement& X, const PlanePoint& p, double t, int sheet, int steps) {
  double h = t / steps;
  PlanePoint cur = p;
  double r0 = p.r();
  auto field = [&](const PlanePoint& q) {
    PlaneVector v = vf_plane(X, q, sheet);
    return Eigen::Vector2d(v.vx, v.vy);
  };
  for (int i = 0; i < steps; ++i) {
    Eigen::Vector2d u(cur.x, cur.y);
    auto at = [](const Eigen::Vector2d& w) { return PlanePoint{w(0), w(1)}; };
    Eigen::Vector2d k1 = field(cur);
    Eigen::Vector2d k2 = field(at(u + 0.5 * h * k1));
    Eigen::Vector2d k3 = field(at(u + 0.5 * h * k2));
    Eigen::Vector2d k4 = field(at(u + h * k3));
    u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    double r = u.norm();
    if (!u.allFinite() || r < 1e-9 * r0 || r > 1e9 * (1.0 + r0)) {
      throw ChartExitError(ErrorCode::kChartExit, i * h,
                           "flow leaves the chart near t = " + std::to_string(i * h));
    }
    cur = at(u);
  }
  return cur;
}

MinkVec flow_dual(const AlgebraElement& X, const MinkVec& v, double t, int steps) {
  double h = t / steps;
  MinkVec cur = v;
  for (int i = 0; i < steps; ++i) {
    MinkVec k1 = vf_dual(X, cur);
    MinkVec k2 = vf_dual(X, cur + (0.5 * h) * k1);
    MinkVec k3 = vf_dual(X, cur + (0.5 * h) * k2);
    MinkVec k4 = vf_dual(X, cur + h * k3);
    cur = cur + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return cur;
}

}  // namespace kepler_sym
