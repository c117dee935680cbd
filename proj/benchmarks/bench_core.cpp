#include <benchmark/benchmark.h>

#include <htmkit/experiment.hpp>
#include <htmkit/rng.hpp>
#include <htmkit/sdr.hpp>
#include <htmkit/spatial_pooler.hpp>
#include <htmkit/temporal_memory.hpp>

namespace {

htmkit::Sdr random_sdr(htmkit::Rng& rng, std::size_t width, std::size_t bits) {
  std::vector<std::uint32_t> active;
  for (std::size_t k = 0; k < bits; ++k) active.push_back(static_cast<std::uint32_t>(rng.index(width)));
  return htmkit::Sdr(width, active);
}

void BM_Overlap(benchmark::State& state) {
  htmkit::Rng rng(1);
  const auto width = static_cast<std::size_t>(state.range(0));
  const auto a = random_sdr(rng, width, width / 50), b = random_sdr(rng, width, width / 50);
  for (auto _ : state) benchmark::DoNotOptimize(overlap(a, b));
}
BENCHMARK(BM_Overlap)->Arg(2048)->Arg(16384);

void BM_Pool(benchmark::State& state) {
  htmkit::Rng rng(2);
  htmkit::PoolerConfig cfg;
  cfg.columns = static_cast<std::size_t>(state.range(0));
  const std::size_t width = 1024;
  const auto perms = htmkit::ProximalPermanences::sample(cfg.columns, width, cfg.connect_threshold, 0.5, rng);
  const auto input = random_sdr(rng, width, 40);
  for (auto _ : state) benchmark::DoNotOptimize(pool(input, perms, cfg));
}
BENCHMARK(BM_Pool)->Arg(128)->Arg(1024);

void BM_TemporalStep(benchmark::State& state) {
  htmkit::TemporalParams p;
  p.columns = static_cast<std::size_t>(state.range(0));
  htmkit::TemporalMemory tm(p, 3);
  htmkit::Rng rng(4);
  std::vector<htmkit::Sdr> seq;
  for (int k = 0; k < 16; ++k) seq.push_back(random_sdr(rng, p.columns, 4));
  std::size_t t = 0;
  for (auto _ : state) benchmark::DoNotOptimize(tm.step(seq[t++ % seq.size()], true));
}
BENCHMARK(BM_TemporalStep)->Arg(128)->Arg(1024);

void BM_TimesTableExperiment(benchmark::State& state) {
  htmkit::ExperimentConfig cfg;
  cfg.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(htmkit::run_experiment(cfg));
}
BENCHMARK(BM_TimesTableExperiment)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
