#include "kepler_sym/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>

#include "kepler_sym/maps.hpp"

namespace kepler_sym {

std::string_view to_string(Exec e) { return e == Exec::kSerial ? "serial" : "openmp"; }

int max_threads() { return omp_get_max_threads(); }

void run_indexed(int n, Exec exec, const std::function<void(int)>& body) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(std::max(n, 0)));
  auto guarded = [&](int i) {
    try {
      body(i);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  };
  if (exec == Exec::kSerial) {
    for (int i = 0; i < n; ++i) guarded(i);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < n; ++i) guarded(i);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

namespace {

template <class Fn>
std::vector<MappedPoint> map_each(std::span<const PlanePoint> in, Exec exec, const Fn& fn) {
  std::vector<MappedPoint> out(in.size());
  const int n = static_cast<int>(in.size());
  auto one = [&](int i) {
    try {
      out[i] = {fn(in[i]), std::nullopt};
    } catch (const Error& e) {
      out[i] = {{std::nan(""), std::nan("")}, e.code()};
    }
  };
  if (exec == Exec::kSerial) {
    for (int i = 0; i < n; ++i) one(i);
  } else {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) one(i);
  }
  return out;
}

}  // namespace

std::vector<MappedPoint> map_points(PointMap map, double param, std::span<const PlanePoint> in,
                                    Exec exec) {
  switch (map) {
    case PointMap::kSquare:
      return map_each(in, exec, [](const PlanePoint& p) { return square(p); });
    case PointMap::kFlattenM:
      return map_each(in, exec, [param](const PlanePoint& p) { return flatten_M(p, param); });
    case PointMap::kHill:
      return map_each(in, exec, [param](const PlanePoint& p) { return hill_embed(p, param); });
    case PointMap::kRepel:
      return map_each(in, exec, [param](const PlanePoint& p) { return repel_embed(p, param); });
  }
  return {};
}

std::vector<MappedPoint> act_plane_batch(const GroupElement& g, std::span<const PlanePoint> in,
                                         int sheet, Exec exec) {
  return map_each(in, exec, [&](const PlanePoint& p) { return act_plane(g, p, sheet); });
}

ZeroTestResult zero_test_batch(const Expr& e, const Box& box, const ZeroTestOptions& options,
                               Exec exec) {
  if (exec == Exec::kSerial) return zero_test(e, box, options);
  for (const auto& v : e.free_variables()) {
    if (box.find(v) == box.end()) {
      throw Error(ErrorCode::kInvalidArgument, "no interval for variable '" + v + "'");
    }
  }
  std::vector<TrackedValue> vals(static_cast<std::size_t>(std::max(options.trials, 0)));
  run_indexed(options.trials, exec, [&](int i) {
    vals[static_cast<std::size_t>(i)] = eval_tracked(e, zero_test_sample(box, options.seed, i));
  });
  ZeroTestResult result{true, 0.0, 0.0};
  for (const TrackedValue& tv : vals) {
    double scaled = std::abs(tv.value) / (1.0 + tv.max_intermediate);
    result.max_scaled_residual = std::max(result.max_scaled_residual, scaled);
    result.max_abs_value = std::max(result.max_abs_value, std::abs(tv.value));
    if (!(scaled <= options.tolerance)) result.zero = false;
  }
  return result;
}

std::vector<ScanRow> power_law_scan_batch(std::span<const double> alphas, ScanKind which,
                                          const ZeroTestOptions& options, Exec exec) {
  std::vector<ScanRow> rows(alphas.size());
  run_indexed(static_cast<int>(alphas.size()), exec, [&](int i) {
    rows[static_cast<std::size_t>(i)] = power_law_row(alphas[static_cast<std::size_t>(i)], which, options);
  });
  return rows;
}

}  // namespace kepler_sym
