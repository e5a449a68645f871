// Serial vs OpenMP-parallel throughput of the per-grid-point kernels on a
// random symmetric matrix curve and its characteristic-polynomial curve.

#include <benchmark/benchmark.h>

#include "hypoly/curve.hpp"
#include "hypoly/diag.hpp"
#include "hypoly/families.hpp"
#include "hypoly/kernels.hpp"

namespace {

constexpr int kDim = 8;
constexpr std::size_t kPoints = 4000;

const hypoly::SymMatrixCurve& matrix_curve() {
  static const hypoly::SymMatrixCurve m =
      hypoly::randsym_matrix_curve(kDim, 42, hypoly::uniform_grid(-3.0, 3.0, kPoints));
  return m;
}

const hypoly::CurveSamples& coeff_curve() {
  static const hypoly::CurveSamples c = hypoly::charpoly_curve(matrix_curve());
  return c;
}

void bm_solve_roots(benchmark::State& state, hypoly::Exec exec) {
  for (auto _ : state)
    benchmark::DoNotOptimize(hypoly::solve_curve_roots(coeff_curve(), 1e-9, exec));
}

void bm_charpoly(benchmark::State& state, hypoly::Exec exec) {
  for (auto _ : state)
    benchmark::DoNotOptimize(hypoly::charpoly_rows(matrix_curve(), exec));
}

void bm_jacobi(benchmark::State& state, hypoly::Exec exec) {
  for (auto _ : state)
    benchmark::DoNotOptimize(hypoly::jacobi_rows(matrix_curve(), exec));
}

BENCHMARK_CAPTURE(bm_solve_roots, serial, hypoly::Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_solve_roots, parallel, hypoly::Exec::parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_charpoly, serial, hypoly::Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_charpoly, parallel, hypoly::Exec::parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_jacobi, serial, hypoly::Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_jacobi, parallel, hypoly::Exec::parallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
