#include <benchmark/benchmark.h>

#include <projrec/kruppa.hpp>
#include <projrec/reconstruction.hpp>

using namespace projrec;

namespace {

ProjectionPair random_pair(int m, Rng& rng) {
  return ProjectionPair(ProjectionOperator(rng.matrix(m, m + 1)), ProjectionOperator(rng.matrix(m, m + 1)));
}

void BM_Join(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(1);
  const MultiVector a = wedge_columns(rng.matrix(d, d / 2));
  const MultiVector b = wedge_columns(rng.matrix(d, d - d / 2));
  for (auto _ : state) benchmark::DoNotOptimize(join(a, b));
}
BENCHMARK(BM_Join)->DenseRange(3, 8);

void BM_Meet(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(2);
  const MultiVector a = wedge_columns(rng.matrix(d, d - 1));
  const MultiVector b = wedge_columns(rng.matrix(d, d - 1));
  for (auto _ : state) benchmark::DoNotOptimize(meet(a, b));
}
BENCHMARK(BM_Meet)->DenseRange(3, 8);

void BM_Fundamental(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Rng rng(3);
  const ProjectionPair pair = random_pair(m, rng);
  for (auto _ : state) benchmark::DoNotOptimize(fundamental(pair.first, pair.second, 2));
}
BENCHMARK(BM_Fundamental)->DenseRange(3, 6);

void BM_ReducedFundamental(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Rng rng(4);
  const ProjectionPair pair = random_pair(m, rng);
  for (auto _ : state) benchmark::DoNotOptimize(reduced_fundamental(pair.first, pair.second));
}
BENCHMARK(BM_ReducedFundamental)->DenseRange(3, 6);

void BM_KruppaResidual(benchmark::State& state) {
  const int components = static_cast<int>(state.range(0));
  Rng rng(5);
  const ProjectionPair pair = random_pair(3, rng);
  std::vector<std::pair<DualPolynomial, DualPolynomial>> duals;
  for (int i = 0; i < components; ++i) duals.push_back(image_duals(pair, random_conic(3, rng)));
  const KruppaState truth = kruppa_state(pair);
  const KruppaSystem system = make_kruppa_system(3, std::move(duals), truth.e1, 6);
  for (auto _ : state) benchmark::DoNotOptimize(kruppa_residual(truth.f, truth.e1, system));
}
BENCHMARK(BM_KruppaResidual)->Arg(1)->Arg(5);

void BM_KruppaSolve(benchmark::State& state) {
  Rng rng(7);
  const ProjectionPair pair = random_pair(3, rng);
  std::vector<std::pair<DualPolynomial, DualPolynomial>> duals;
  for (int i = 0; i < 5; ++i) duals.push_back(image_duals(pair, random_conic(3, rng)));
  const KruppaState truth = kruppa_state(pair);
  const KruppaSystem system = make_kruppa_system(3, std::move(duals), truth.e1, 8);
  KruppaState init = truth;
  init.f.entries += 1e-3 * init.f.entries.norm() * rng.matrix(3, 3);
  for (auto _ : state) benchmark::DoNotOptimize(kruppa_solve(init, system));
}
BENCHMARK(BM_KruppaSolve)->Unit(benchmark::kMillisecond);

void BM_EpipolarFiber(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(9);
  const ParametricVariety x = d == 2 ? random_conic(3, rng) : random_rational_curve(3, d, rng);
  const SceneCones cones = make_scene_cones(random_pair(3, rng), x, 10);
  const JoinSetup setup = geometric_join_setup(cones.pair, 1, 11, &cones);
  const CVector t = rng.vector(2);
  for (auto _ : state) benchmark::DoNotOptimize(epipolar_fiber(cones, setup, t));
}
BENCHMARK(BM_EpipolarFiber)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
