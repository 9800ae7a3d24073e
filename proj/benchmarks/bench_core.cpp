#include <benchmark/benchmark.h>

#include "ptosc/coperator.hpp"
#include "ptosc/eigen.hpp"
#include "ptosc/models.hpp"
#include "ptosc/oscillate.hpp"
#include "ptosc/verify.hpp"

using namespace ptosc;

namespace {

const SfdmParams kSfdm{0.5, 0.3, 0.7, 0.2};

void BM_EigOracle4(benchmark::State& state) {
  const CMatrix h = sfdm_hamiltonian(kSfdm);
  for (auto _ : state) benchmark::DoNotOptimize(eig_oracle(h));
}
BENCHMARK(BM_EigOracle4);

void BM_EigOracle8(benchmark::State& state) {
  const CMatrix h = h8_hamiltonian({2.0, 0.5, 1.0, 0.3, 1.0, 0.4, 1.2});
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(h));
}
BENCHMARK(BM_EigOracle8);

void BM_BuildC(benchmark::State& state) {
  const SymmetryPair sym = canonical_pair(4);
  const EigenSystem es = sfdm_eigensystem(kSfdm);
  for (auto _ : state) benchmark::DoNotOptimize(build_C(sym, es));
}
BENCHMARK(BM_BuildC);

void BM_TransitionTable(benchmark::State& state) {
  const SymmetryPair sym = canonical_pair(4);
  const EigenSystem es = sfdm_eigensystem(kSfdm);
  const COperator c = build_C(sym, es);
  const FlavourBasis basis = standard_flavour_basis(sym, es, c);
  const std::vector<double> grid = default_time_grid(es, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(transition_table(sym, basis, es, c, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TransitionTable)->Arg(64)->Arg(1024);

void BM_FullSuite(benchmark::State& state) {
  const ModelSpec spec = ModelSpec::dirac(ModelKind::H8v, {2.0, 0.0, 1.0, 0.0, 1.0, 0.4, 1.2});
  for (auto _ : state) benchmark::DoNotOptimize(run_full_suite(spec));
}
BENCHMARK(BM_FullSuite);

}  // namespace
BENCHMARK_MAIN();
