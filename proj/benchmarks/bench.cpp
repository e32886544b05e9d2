#include <cmath>

#include <benchmark/benchmark.h>

#include "slcyl/assembly.hpp"
#include "slcyl/lawlor.hpp"
#include "slcyl/sampling.hpp"
#include "slcyl/verify.hpp"

using namespace slcyl;

namespace {

const Model& model() {
  static const Model m = Model::make(LawlorParams::normalized({1.0, 1.0, 1.0}), 2, 1.5, 32.0);
  return m;
}

const std::vector<double> kSigma{0.6, 0.0, 0.8};

}  // namespace

static void BM_NeckTables(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(LawlorParams::normalized({1.0, 2.0, 3.0}).A());
}
BENCHMARK(BM_NeckTables)->Unit(benchmark::kMillisecond);

static void BM_GraphPotential(benchmark::State& state) {
  const auto& p = model().neck;
  const double L = p.graphical_radius();
  double r = L;
  for (auto _ : state) {
    benchmark::DoNotOptimize(neck_graph_potential(p, ConePoint{2, kSigma, r}).g);
    r = r > 64 * L ? L : r * 1.01;
  }
}
BENCHMARK(BM_GraphPotential);

static void BM_ThetaX2(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(theta_X(model(), NeckChart{0.4, kSigma}, 1.0 / 256));
}
BENCHMARK(BM_ThetaX2);

static void BM_AssembleBand(benchmark::State& state) {
  const double u = 1.0 / 64, r = 1.5 * std::pow(u, 1.5);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_X(model(), CylinderPoint{1, kSigma, r, u}).point.rho());
}
BENCHMARK(BM_AssembleBand);

static void BM_Census(benchmark::State& state) {
  CensusGrid grid;
  grid.u_values = {1.0 / 128};
  grid.directions = static_cast<std::size_t>(state.range(0));
  const auto pts = census_points_X(model(), grid);
  for (auto _ : state) benchmark::DoNotOptimize(connectivity_census(pts, 0.3).components);
  state.counters["points"] = static_cast<double>(pts.size());
}
BENCHMARK(BM_Census)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
