#include <benchmark/benchmark.h>

#include "latlab/dimension.hpp"
#include "latlab/lattice.hpp"
#include "latlab/littlewood.hpp"
#include "latlab/rigidity.hpp"
#include "latlab/rng.hpp"

namespace {

latlab::MatD random_unimodular3(latlab::Rng& rng) {
  using namespace latlab;
  while (true) {
    MatD m(3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
    double d = m.det();
    if (std::fabs(d) < 0.05) continue;
    if (d < 0.0) {
      for (int i = 0; i < 3; ++i) std::swap(m(i, 0), m(i, 1));
      d = -d;
    }
    const double s = std::pow(1.0 / d, 1.0 / 3.0);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) *= s;
    return m;
  }
}

void BM_ShortestVector3(benchmark::State& state) {
  latlab::Rng rng(7);
  std::vector<latlab::LatticeBasis> bases;
  for (int i = 0; i < 64; ++i) bases.emplace_back(random_unimodular3(rng));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(latlab::shortest_vector(bases[i % bases.size()]));
    ++i;
  }
}
BENCHMARK(BM_ShortestVector3);

void BM_LittlewoodScan(benchmark::State& state) {
  const latlab::TargetPair pair(1.2599210498948732L, 1.5874010519681994L);
  for (auto _ : state)
    benchmark::DoNotOptimize(latlab::littlewood_scan(pair, state.range(0)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LittlewoodScan)->Arg(10000)->Arg(100000);

void BM_SeparatedCount(benchmark::State& state) {
  latlab::Rng rng(11);
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < state.range(0); ++i) pts.push_back({rng.uniform01(), rng.uniform01()});
  const latlab::PointCloud cloud(2, std::move(pts));
  for (auto _ : state)
    benchmark::DoNotOptimize(latlab::separated_count(cloud, 0.01));
}
BENCHMARK(BM_SeparatedCount)->Arg(10000)->Arg(50000);

void BM_ExceptionalCheck(benchmark::State& state) {
  latlab::Mat<long long> m(3, {2, 1, 0, 1, 1, 0, 0, 0, 1});
  const latlab::IntegerMatrix g(m);
  for (auto _ : state) benchmark::DoNotOptimize(latlab::exceptional_check(g));
}
BENCHMARK(BM_ExceptionalCheck);

}  // namespace

BENCHMARK_MAIN();
