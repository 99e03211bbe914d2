// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include <cmath>

#include "nilharm/numerics.hpp"

using namespace nilharm;
using namespace nilharm::numerics;

namespace {

cplx gauss3(std::span<const double> x) {
  return std::polar(std::exp(-x[0] * x[0] - x[1] * x[1] - x[2] * x[2]), x[0] * x[2]);
}

cplx su3_entry(const Eigen::MatrixXcd& g) { return std::exp(cplx(0, 1) * g(0, 0).real()); }

void BM_quadrature_serial(benchmark::State& st) {
  auto spec = QuadratureSpec::box(3, 6.0, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(grid_quadrature_serial(gauss3, spec));
}

void BM_quadrature_omp(benchmark::State& st) {
  auto spec = QuadratureSpec::box(3, 6.0, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(grid_quadrature(gauss3, spec));
}

void BM_haar_mc_serial(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(mc_integrate_serial(su3_entry, GroupSpec::su(3), st.range(0), 1));
}

void BM_haar_mc_omp(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(mc_integrate(su3_entry, GroupSpec::su(3), st.range(0), 1));
}

}  // namespace

BENCHMARK(BM_quadrature_serial)->Arg(32)->Arg(64);
BENCHMARK(BM_quadrature_omp)->Arg(32)->Arg(64);
BENCHMARK(BM_haar_mc_serial)->Arg(1 << 14);
BENCHMARK(BM_haar_mc_omp)->Arg(1 << 14);

BENCHMARK_MAIN();
