#pragma once

// Batch kernels with a serial reference and an OpenMP version. Both paths
// compute each element from its index alone and reduce in index order, so
// their results are bitwise identical; tests compare them directly.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "kepler_sym/error.hpp"
#include "kepler_sym/expr.hpp"
#include "kepler_sym/invariants.hpp"
#include "kepler_sym/orbit.hpp"
#include "kepler_sym/symmetry.hpp"

namespace kepler_sym {

enum class Exec { kSerial, kOpenMP };
std::string_view to_string(Exec e);

int max_threads();

// body(i) for i in [0, n). If bodies throw, the exception of the lowest
// index is rethrown after the loop.
void run_indexed(int n, Exec exec, const std::function<void(int)>& body);

struct MappedPoint {
  PlanePoint point;
  std::optional<ErrorCode> error;
};

enum class PointMap { kSquare, kFlattenM, kHill, kRepel };

// Applies a maps-module map to every point; failures are recorded per point.
std::vector<MappedPoint> map_points(PointMap map, double param, std::span<const PlanePoint> in,
                                    Exec exec);

std::vector<MappedPoint> act_plane_batch(const GroupElement& g, std::span<const PlanePoint> in,
                                         int sheet, Exec exec);

// Same result as zero_test(e, box, options) for either exec.
ZeroTestResult zero_test_batch(const Expr& e, const Box& box, const ZeroTestOptions& options,
                               Exec exec);

std::vector<ScanRow> power_law_scan_batch(std::span<const double> alphas, ScanKind which,
                                          const ZeroTestOptions& options, Exec exec);

}  // namespace kepler_sym
