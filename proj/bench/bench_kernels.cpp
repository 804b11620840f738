#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "simpsonbound/campaign.hpp"
#include "simpsonbound/certify.hpp"

namespace {

using namespace simpsonbound;

void scan(benchmark::State& state, ExecutionPolicy policy) {
  const Interval iv(0.0, 2.0);
  const RealFunction g = [](double x) { return std::exp(x) + x * x; };
  CertifyOptions opts;
  opts.grid = static_cast<std::size_t>(state.range(0));
  opts.policy = policy;
  for (auto _ : state) {
    benchmark::DoNotOptimize(certify_h_convex(g, HFunction::power(0.5), iv, opts));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0) * state.range(0));
}

void BM_ScanSerial(benchmark::State& state) { scan(state, ExecutionPolicy::Serial); }
void BM_ScanParallel(benchmark::State& state) { scan(state, ExecutionPolicy::Parallel); }
BENCHMARK(BM_ScanSerial)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

CampaignSpec small_campaign(ExecutionPolicy policy) {
  CampaignSpec spec;
  spec.theorem_ids = {TheoremId::Thm22_EqA, TheoremId::Thm25_Eq22, TheoremId::Sarikaya_EqB};
  spec.h_families = {"identity", "constant", "power:0.5"};
  spec.f_families = {"monomial:2", "monomial:4", "exp:1"};
  spec.intervals = {Interval(0.0, 1.0), Interval(1.0, 3.0)};
  spec.p_values = {2.0, 3.0};
  spec.grid_density = 32;
  spec.policy = policy;
  return spec;
}

void BM_CampaignSerial(benchmark::State& state) {
  const CampaignSpec spec = small_campaign(ExecutionPolicy::Serial);
  for (auto _ : state) benchmark::DoNotOptimize(run_campaign(spec));
}
void BM_CampaignParallel(benchmark::State& state) {
  const CampaignSpec spec = small_campaign(ExecutionPolicy::Parallel);
  for (auto _ : state) benchmark::DoNotOptimize(run_campaign(spec));
}
BENCHMARK(BM_CampaignSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CampaignParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
