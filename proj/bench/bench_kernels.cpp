// Serial reference vs OpenMP for the batch kernels. The second benchmark
// argument selects the path: 0 serial, 1 OpenMP.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "kepler_sym/parallel.hpp"
#include "kepler_sym/random.hpp"

using namespace kepler_sym;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(1) == 0 ? Exec::kSerial : Exec::kOpenMP; }

std::vector<PlanePoint> points(int n) {
  auto g = stream_rng(42, "bench", 0);
  std::vector<PlanePoint> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(PlanePoint::polar(uniform(g, 0.1, 3.0), uniform(g, -3.14, 3.14)));
  return out;
}

void BM_MapPoints(benchmark::State& st) {
  auto in = points(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(map_points(PointMap::kFlattenM, 1.0, in, exec_of(st)));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_ActPlane(benchmark::State& st) {
  auto in = points(static_cast<int>(st.range(0)));
  GroupElement g = exp(algebra(0.1, 0.2, -0.1, 0.05, 0.1, -0.2, 0.1));
  for (auto _ : st) benchmark::DoNotOptimize(act_plane_batch(g, in, 1, exec_of(st)));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_ZeroTestI2(benchmark::State& st) {
  Expr r = Expr::var("r");
  SecondOrderODE ode = fixed_E_ode(Expr(-1) / (r * r), Expr(-1) / r, 0.5);
  Expr i2 = I2(ode);
  ZeroTestOptions opt;
  opt.trials = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(zero_test_batch(i2, ode.box, opt, exec_of(st)));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_WunschmannScan(benchmark::State& st) {
  std::vector<double> alphas;
  for (int i = 0; i < st.range(0); ++i) alphas.push_back(-3.0 + 6.0 * i / static_cast<double>(st.range(0)));
  for (auto _ : st) {
    benchmark::DoNotOptimize(power_law_scan_batch(alphas, ScanKind::kWunschmann, {}, exec_of(st)));
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK(BM_MapPoints)->ArgsProduct({{1 << 12, 1 << 18}, {0, 1}});
BENCHMARK(BM_ActPlane)->ArgsProduct({{1 << 12, 1 << 18}, {0, 1}});
BENCHMARK(BM_ZeroTestI2)->ArgsProduct({{64, 1024}, {0, 1}});
BENCHMARK(BM_WunschmannScan)->ArgsProduct({{12, 48}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
