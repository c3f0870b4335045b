#include "oracles/oracles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "kepler_sym/error.hpp"

namespace kepler_sym::oracle {

namespace {
constexpr double kPi = std::numbers::pi;
}

PlanePoint plane_field(int basis, const PlanePoint& p, int sheet) {
  double x = p.x, y = p.y, r = sheet * std::hypot(x, y);
  switch (basis) {
    case 1: return {x, y};
    case 2: return {-y, x};
    case 3: return {r, 0.0};
    case 4: return {0.0, r};
    case 5: return {-x * x, -x * y};
    case 6: return {-y * x, -y * y};
    case 7: return {-r * x, -r * y};
  }
  throw Error(ErrorCode::kInvalidArgument, "basis index must be 1..7");
}

MinkVec dual_field(int basis, const MinkVec& v) {
  switch (basis) {
    case 1: return {-v.a, -v.b, -v.c};
    case 2: return {-v.b, v.a, 0.0};
    case 3: return {-v.c, 0.0, -v.a};
    case 4: return {0.0, -v.c, -v.b};
    case 5: return {1.0, 0.0, 0.0};
    case 6: return {0.0, 1.0, 0.0};
    case 7: return {0.0, 0.0, 1.0};
  }
  throw Error(ErrorCode::kInvalidArgument, "basis index must be 1..7");
}

int intersection_count(const KeplerOrbit& o1, const KeplerOrbit& o2, int samples, double tol) {
  std::vector<double> h(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    double th = 2.0 * kPi * i / samples;
    h[i] = o1.rho(th) - o2.rho(th);
  }
  int count = 0;
  for (int i = 0; i < samples; ++i) {
    double prev = h[(i + samples - 1) % samples], cur = h[i], next = h[(i + 1) % samples];
    if ((cur > 0.0) != (next > 0.0)) {
      ++count;
    } else if (std::abs(cur) <= tol && std::abs(cur) <= std::abs(prev) &&
               std::abs(cur) < std::abs(next)) {
      ++count;  // touching without crossing
    }
  }
  return count;
}

double fd1(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

double fd2(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

double fd3(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 3 * h) + 8 * f(x + 2 * h) - 13 * f(x + h) + 13 * f(x - h) - 8 * f(x - 2 * h) +
          f(x - 3 * h)) /
         (8 * h * h * h);
}

std::vector<double> circle_kepler_vertex_angles(double d, double R, int grid) {
  auto rho = [=](double th) {
    double s = std::sin(th);
    return 1.0 / (d * std::cos(th) + std::sqrt(R * R - d * d * s * s));
  };
  const double h = 1e-2;
  auto g = [&](double th) { return fd3(rho, th, h) + fd1(rho, th, h); };
  std::vector<double> out;
  double prev = g(0.0);
  for (int i = 1; i <= grid; ++i) {
    double lo = 2.0 * kPi * (i - 1) / grid, hi = 2.0 * kPi * i / grid;
    double cur = g(hi);
    if ((prev >= 0.0) != (cur >= 0.0)) {
      double glo = prev;
      for (int k = 0; k < 100; ++k) {
        double mid = 0.5 * (lo + hi), gm = g(mid);
        if ((gm >= 0.0) == (glo >= 0.0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      out.push_back(0.5 * (lo + hi));
    }
    prev = cur;
  }
  return out;
}

MinkVec orbit_through_three(const ParametricCurve& gamma, double t, double h) {
  Eigen::Matrix3d m;
  int row = 0;
  for (double s : {t - h, t, t + h}) {
    PlanePoint p = gamma.point(s);
    m.row(row++) << p.x, p.y, std::hypot(p.x, p.y);
  }
  Eigen::Vector3d v = m.fullPivLu().solve(Eigen::Vector3d::Ones());
  return {v(0), v(1), v(2)};
}

TangencyOracle tangency(const std::function<PlanePoint(double)>& member, double t0, double t1,
                        const std::function<double(const PlanePoint&)>& F, double tol,
                        int samples) {
  auto f = [&](double t) { return F(member(t)); };
  std::vector<double> v(static_cast<std::size_t>(samples) + 1);
  double step = (t1 - t0) / samples;
  double vmin = 0.0, vmax = 0.0;
  for (int i = 0; i <= samples; ++i) {
    v[i] = f(t0 + step * i);
    if (i == 0 || v[i] < vmin) vmin = v[i];
    if (i == 0 || v[i] > vmax) vmax = v[i];
  }
  TangencyOracle out{std::numeric_limits<double>::infinity(), false};
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i = 1; i < samples; ++i) {
    bool is_min = v[i] <= v[i - 1] && v[i] <= v[i + 1];
    bool is_max = v[i] >= v[i - 1] && v[i] >= v[i + 1];
    if (!is_min && !is_max) continue;
    double sgn = is_min ? 1.0 : -1.0;
    double a = t0 + step * (i - 1), b = t0 + step * (i + 1);
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = sgn * f(c), fd = sgn * f(d);
    for (int k = 0; k < 80; ++k) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - g * (b - a);
        fc = sgn * f(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + g * (b - a);
        fd = sgn * f(d);
      }
    }
    double ext = f(0.5 * (a + b));
    vmin = std::min(vmin, ext);
    vmax = std::max(vmax, ext);
    out.residual = std::min(out.residual, std::abs(ext));
  }
  out.crossing = vmin < -tol && vmax > tol;
  return out;
}

double conic_residual(const MinkVec& v, const PlanePoint& p) {
  double lin = v.a * p.x + v.b * p.y - 1.0;
  double cr = v.c * std::hypot(p.x, p.y);
  return std::min(std::abs(lin + cr), std::abs(lin - cr));
}

}  // namespace kepler_sym::oracle
