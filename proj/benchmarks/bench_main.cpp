#include "d1lc/acd.hpp"
#include "d1lc/config.hpp"
#include "d1lc/generate.hpp"
#include "d1lc/local_procs.hpp"
#include "d1lc/mpc.hpp"
#include "d1lc/partition.hpp"
#include "d1lc/pipeline.hpp"

#include <benchmark/benchmark.h>

using namespace d1lc;

namespace {

Config bench_config() {
  Config cfg;
  cfg.low_degree_threshold = 8;
  cfg.ell = 4;
  cfg.delta = make_rational(1, 5);
  cfg.mid_degree_exponent = 2;
  return cfg;
}

D1LCInstance gnp(std::size_t n, double avg, std::size_t extra) {
  GenerateParams gp;
  gp.kind = GraphKind::Gnp;
  gp.n = n;
  gp.p = avg / static_cast<double>(n);
  gp.extra_colors = extra;
  return generate(gp);
}

void BM_Pipeline(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto avg = static_cast<double>(state.range(1));
  const auto inst = gnp(n, avg, 2 * state.range(1));
  const auto cfg = bench_config();
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(inst, cfg));
}
BENCHMARK(BM_Pipeline)->Args({1024, 16})->Args({4096, 16})->Args({1024, 64})->Unit(benchmark::kMillisecond);

void BM_ColorMiddleRandomized(benchmark::State& state) {
  const auto inst = gnp(static_cast<std::size_t>(state.range(0)), 16, 0);
  auto cfg = bench_config();
  cfg.mode = Mode::Randomized;
  for (auto _ : state) benchmark::DoNotOptimize(color_middle(inst, cfg));
}
BENCHMARK(BM_ColorMiddleRandomized)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_ComputeAcd(benchmark::State& state) {
  GenerateParams gp;
  gp.kind = GraphKind::PlantedCliques;
  gp.clique_size = static_cast<std::size_t>(state.range(0));
  gp.cliques = 32;
  gp.n = 512;
  gp.p = 0.005;
  const auto inst = generate(gp);
  const auto params = AcdParams::from(bench_config(), 8);
  for (auto _ : state) benchmark::DoNotOptimize(compute_acd(inst, params));
}
BENCHMARK(BM_ComputeAcd)->Arg(8)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_SelectHashes(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto inst = gnp(n, 64, 128);
  const auto cfg = bench_config();
  for (auto _ : state) benchmark::DoNotOptimize(select_hashes(inst, cfg, n));
}
BENCHMARK(BM_SelectHashes)->Arg(2048)->Arg(8192)->Unit(benchmark::kMillisecond);

void BM_MpcExchange(benchmark::State& state) {
  MpcConfig mc;
  mc.machine_count = static_cast<std::uint64_t>(state.range(0));
  mc.local_space_words = 64;
  std::vector<Message> msgs;
  for (std::uint64_t m = 0; m < mc.machine_count; ++m)
    for (std::uint64_t k = 0; k < 32; ++k) msgs.push_back({m, (m * 31 + k) % mc.machine_count, k, 1, m ^ k});
  for (auto _ : state) {
    MpcSimulator sim(mc);
    benchmark::DoNotOptimize(sim.exchange(msgs));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * msgs.size()));
}
BENCHMARK(BM_MpcExchange)->Arg(256)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
