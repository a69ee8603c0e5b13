#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>

#include "tetsym/cuspgeom.hpp"
#include "tetsym/homology.hpp"
#include "tetsym/io.hpp"
#include "tetsym/orbtri.hpp"
#include "tetsym/tetglue.hpp"

using namespace tetsym;

namespace {

std::filesystem::path fixture(const std::string& rel) {
  return std::filesystem::path(TETSYM_FIXTURE_DIR) / rel;
}

void BM_CoversOverRigidOrbifold(benchmark::State& state) {
  auto up = io::load_dseq(fixture("census/otet20_00049/dseq0.json"));
  for (auto _ : state) benchmark::DoNotOptimize(orbtri::covers(up, orbtri::o236_2222()));
}
BENCHMARK(BM_CoversOverRigidOrbifold)->Unit(benchmark::kMillisecond);

void BM_CoversL12n2208(benchmark::State& state) {
  auto up = io::load_dseq(fixture("census/otet12_00009/dseq1.json"));
  for (auto _ : state) benchmark::DoNotOptimize(orbtri::covers(up, orbtri::o_v0_over_3()));
}
BENCHMARK(BM_CoversL12n2208)->Unit(benchmark::kMillisecond);

void BM_DesSeq(benchmark::State& state) {
  auto tri = io::load_gluing_table(fixture("census/otet20_00063/tri0.json"));
  for (auto _ : state) benchmark::DoNotOptimize(tetglue::des_seq(tri));
}
BENCHMARK(BM_DesSeq)->Unit(benchmark::kMicrosecond);

void BM_FreeRotStrong(benchmark::State& state) {
  auto diag = io::load_diagram(fixture("census/otet08_00002/cusp0.json"));
  for (auto _ : state) benchmark::DoNotOptimize(cuspgeom::free_rot_strong(diag));
}
BENCHMARK(BM_FreeRotStrong)->Unit(benchmark::kMillisecond);

void BM_Order6Axes(benchmark::State& state) {
  auto diag = io::load_diagram(fixture("census/otet08_00002/cusp0.json"));
  for (auto _ : state) benchmark::DoNotOptimize(cuspgeom::find_bad_order6_axes(diag));
}
BENCHMARK(BM_Order6Axes)->Unit(benchmark::kMillisecond);

void BM_SmithNormalForm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> entry(-20, 20);
  std::vector<homology::Integer> e;
  for (int k = 0; k < n * n; ++k) e.emplace_back(entry(rng));
  homology::IntMatrix m(n, n, e);
  for (auto _ : state) benchmark::DoNotOptimize(homology::smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(6)->Arg(20)->Arg(40);

}  // namespace
BENCHMARK_MAIN();
