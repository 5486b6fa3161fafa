#include <benchmark/benchmark.h>

#include "msn/compiler.hpp"
#include "msn/sim.hpp"

using namespace msn;

namespace {

AnsatzSpec upccgsd(int N) {
  AnsatzSpec s;
  s.family = AnsatzFamily::kupccgsd;
  s.n_spatial = N;
  s.reference_occupations.assign(2 * N, 0);
  s.reference_occupations[0] = s.reference_occupations[1] = 1;
  return s;
}

void BM_CompileMsn(benchmark::State& st) {
  const AnsatzSpec spec = upccgsd(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(compile(spec, Strategy::msn, Topology::grid_2xN));
}
BENCHMARK(BM_CompileMsn)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_CompileFsn(benchmark::State& st) {
  const AnsatzSpec spec = upccgsd(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(compile(spec, Strategy::fsn, Topology::linear));
}
BENCHMARK(BM_CompileFsn)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_CompileCyclic(benchmark::State& st) {
  AnsatzSpec spec;
  spec.family = AnsatzFamily::uccgsd;
  spec.n_spatial = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(compile(spec, Strategy::cyclic, Topology::all_to_all));
}
BENCHMARK(BM_CompileCyclic)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_Metrics(benchmark::State& st) {
  const Circuit c = compile(upccgsd(static_cast<int>(st.range(0))), Strategy::msn, Topology::grid_2xN).circuit;
  for (auto _ : st) benchmark::DoNotOptimize(metrics(c));
}
BENCHMARK(BM_Metrics)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Statevector(benchmark::State& st) {
  const int N = static_cast<int>(st.range(0));
  const Circuit c = compile(upccgsd(N), Strategy::msn, Topology::grid_2xN).circuit;
  const std::vector<double> theta(c.n_params(), 0.1);
  for (auto _ : st) benchmark::DoNotOptimize(run(c, theta, State::basis(2 * N)));
}
BENCHMARK(BM_Statevector)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_DensityMatrixNoisy(benchmark::State& st) {
  const int N = static_cast<int>(st.range(0));
  const Circuit c = compile(upccgsd(N), Strategy::msn, Topology::grid_2xN).circuit;
  const std::vector<double> theta(c.n_params(), 0.1);
  const NoiseModel nm = NoiseModel::superconducting_default();
  for (auto _ : st) benchmark::DoNotOptimize(evolve_noisy(c, nm, theta, State::basis(2 * N)));
}
BENCHMARK(BM_DensityMatrixNoisy)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
