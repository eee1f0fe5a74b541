// Serial reference vs OpenMP kernels on the shipped data.

#include "gblocks/category.hpp"
#include "gblocks/mf.hpp"
#include "gblocks/msdata.hpp"
#include "gblocks/roundtrip.hpp"

#include <benchmark/benchmark.h>

#include <string>

using namespace gb;

namespace {

std::string data(const std::string& rel) { return std::string(GBLOCKS_DATA_DIR) + "/" + rel; }

Exec exec_of(const benchmark::State& s) { return s.range(0) ? Exec::parallel : Exec::serial; }

void BM_category(benchmark::State& s) {
  auto cat = load_category(data("ising_z2.json"));
  for (auto _ : s) benchmark::DoNotOptimize(check_category(cat, exec_of(s)).pass());
}

void BM_ms_axioms(benchmark::State& s) {
  auto cat = load_category(data("ising_z2.json"));
  for (auto _ : s) benchmark::DoNotOptimize(check_ms_axioms(cat, {4, exec_of(s)}).pass());
}

void BM_relations(benchmark::State& s) {
  auto cat = load_category(data("ising_z2.json"));
  for (auto _ : s) benchmark::DoNotOptimize(check_relations(cat, {3, exec_of(s)}).pass());
}

void BM_paths(benchmark::State& s) {
  auto cat = load_category(data("ising_z2.json"));
  auto p = load_cover(cat.group, data("covers/four_sigma.json"));
  auto W = load_labeling(cat, p, data("labels/sigma4.json"));
  Mf mf(cat);
  const std::vector<Move> target{Move::F(0), Move::Z(0)};
  for (auto _ : s) benchmark::DoNotOptimize(check_path_independence(mf, p, W, target, {6, exec_of(s)}).nodes);
}

void BM_roundtrip(benchmark::State& s) {
  auto cat = load_category(data("vec_s3.json"));
  for (auto _ : s) benchmark::DoNotOptimize(roundtrip_check(cat, exec_of(s)).pass());
}

}  // namespace

// Arg 0: serial reference, 1: parallel.
BENCHMARK(BM_category)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ms_axioms)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_relations)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_paths)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_roundtrip)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
