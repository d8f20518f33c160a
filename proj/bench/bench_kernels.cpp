// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include <random>

#include "hoqt/cones.hpp"
#include "hoqt/kernels.hpp"
#include "hoqt/parprod.hpp"

using namespace hoqt;

namespace {

Matrix random_matrix(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

template <bool Parallel>
void BM_Kron(benchmark::State& state) {
  const Index d = state.range(0);
  const Matrix a = random_matrix(d, d, 1), b = random_matrix(d, d, 2);
  for (auto _ : state) {
    Matrix k = Parallel ? kernels::kron(a, b) : kernels::kron_serial(a, b);
    benchmark::DoNotOptimize(k.data());
  }
  state.SetItemsProcessed(state.iterations() * d * d * d * d);
}

// Column assembly of the parallel-product basis matrix for a pair of
// order-two qubit types.
template <bool Parallel>
void BM_AssembleIso(benchmark::State& state) {
  const auto reg = make_registry(SystemRegistry::qubits({"A", "B", "C", "D", "E", "F"}));
  const Type x = parse_type("(A->B)->C");
  const Type y = state.range(0) == 0 ? parse_type("D->E") : parse_type("(D->E)->F");
  const Index dy = space_dim(y, *reg);
  const Index rows = space_dim(partype(x, y), *reg);
  const Index cols = space_dim(x, *reg) * dy;
  auto column = [&](Index c) {
    return vectorize(parmap(basis_element(x, reg, c / dy), basis_element(y, reg, c % dy)));
  };
  for (auto _ : state) {
    Matrix phi = Parallel ? kernels::assemble_columns(rows, cols, column)
                          : kernels::assemble_columns_serial(rows, cols, column);
    benchmark::DoNotOptimize(phi.data());
  }
}

template <bool Parallel>
void BM_Scatter(benchmark::State& state) {
  const auto reg = make_registry(SystemRegistry::qubits({"A", "B", "C", "D"}));
  const ChoiLinearization lin(parse_type("(AB->C)->(D->A)"), *reg);
  const Index n = static_cast<Index>(lin.permutation().size());
  const Vector v = random_matrix(n, 1, 3).col(0);
  for (auto _ : state) {
    Vector out = Parallel ? kernels::scatter(v, lin.permutation(), n) : kernels::scatter_serial(v, lin.permutation(), n);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}

}  // namespace

BENCHMARK(BM_Kron<false>)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(BM_Kron<true>)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(BM_AssembleIso<false>)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleIso<true>)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Scatter<false>);
BENCHMARK(BM_Scatter<true>);

BENCHMARK_MAIN();
