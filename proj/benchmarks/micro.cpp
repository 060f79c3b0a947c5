#include <benchmark/benchmark.h>

#include "rftrlp/formulation.hpp"
#include "rftrlp/oracle.hpp"
#include "rftrlp/solver.hpp"

using namespace rftrlp;

namespace {

Instance instance(int n, double dens, int scenarios, std::uint64_t seed) {
  GenConfig cfg;
  cfg.n = n;
  cfg.dens = dens;
  cfg.scenarios = scenarios;
  cfg.flavor = GenFlavor::Gen2;
  cfg.seed = seed;
  return generate(cfg);
}

void BM_Transform(benchmark::State& state) {
  const auto inst = instance(static_cast<int>(state.range(0)), 0.3, 1, 1);
  for (auto _ : state) {
    auto m = build_transformed_graph(inst.network);
    benchmark::DoNotOptimize(derive_sets(inst.network, m));
  }
}
BENCHMARK(BM_Transform)->Arg(20)->Arg(50)->Arg(100);

void BM_BuildFlowModel(benchmark::State& state) {
  const auto inst = instance(static_cast<int>(state.range(0)), 0.5, 10, 2);
  const auto m = build_transformed_graph(inst.network);
  const auto ds = derive_sets(inst.network, m);
  for (auto _ : state) benchmark::DoNotOptimize(build_ip_fb(inst, m, ds));
}
BENCHMARK(BM_BuildFlowModel)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_Separation(benchmark::State& state) {
  const auto inst = instance(static_cast<int>(state.range(0)), 0.5, 1, 3);
  const auto m = build_transformed_graph(inst.network);
  const auto cb = build_ip_cb_base(inst, m, derive_sets(inst.network, m));
  std::vector<double> point(cb.model.variable_count(), 0.0);
  // Every other node chosen: usually disconnected, so cuts are found.
  for (NodeId v = 1; v <= inst.network.node_count(); v += 2) point[static_cast<std::size_t>(cb.vars.x[v])] = 1.0;
  for (auto _ : state) {
    CutRegistry registry;
    benchmark::DoNotOptimize(separate_cuts(point, inst, m, cb.vars, registry));
  }
}
BENCHMARK(BM_Separation)->Arg(20)->Arg(60);

void BM_Solve(benchmark::State& state) {
  const auto inst = instance(10, 0.6, 5, 4);
  const auto method = static_cast<Method>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_instance(inst, method));
  state.SetLabel(std::string(to_string(method)));
}
BENCHMARK(BM_Solve)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_BruteForce(benchmark::State& state) {
  const auto inst = instance(static_cast<int>(state.range(0)), 0.6, 5, 5);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_optimum(inst, Predicate::Structural));
}
BENCHMARK(BM_BruteForce)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
