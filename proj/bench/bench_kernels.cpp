// Serial reference vs OpenMP kernels on the grid-evaluation hot path.
#include <benchmark/benchmark.h>

#include "putinar/boxgrid.hpp"
#include "putinar/sampling.hpp"
#include "putinar/threads.hpp"

using namespace putinar;

namespace {

MultiPoly dense_poly(int nvars, int maxdeg, std::uint64_t seed) {
  Rng rng(seed);
  MultiPoly p(nvars);
  std::function<void(Exponents&, int, int)> rec = [&](Exponents& e, int pos, int rem) {
    if (pos == nvars) {
      p.add_term(e, rng.uniform(-1.0, 1.0));
      return;
    }
    for (int d = 0; d <= rem; ++d) {
      e[pos] = d;
      rec(e, pos + 1, rem - d);
      e[pos] = 0;
    }
  };
  Exponents e(nvars, 0);
  rec(e, 0, maxdeg);
  return p;
}

void bench_grid_serial(benchmark::State& state) {
  MultiPoly p = dense_poly(3, 8, 1);
  CompiledPoly cp = CompiledPoly::from(p);
  ChebGrid grid = ChebGrid::make(3, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    double v = kernels::grid_max_abs_serial(cp, grid, nullptr);
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations() * grid.point_count());
}

void bench_grid_parallel(benchmark::State& state) {
  MultiPoly p = dense_poly(3, 8, 1);
  CompiledPoly cp = CompiledPoly::from(p);
  ChebGrid grid = ChebGrid::make(3, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    double v = kernels::grid_max_abs_parallel(cp, grid, nullptr);
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations() * grid.point_count());
}

void bench_eval_serial(benchmark::State& state) {
  MultiPoly p = dense_poly(2, 10, 2);
  CompiledPoly cp = CompiledPoly::from(p);
  const int npts = static_cast<int>(state.range(0));
  std::vector<double> xs = halton_box(2, npts);
  std::vector<double> out(npts);
  for (auto _ : state) {
    kernels::eval_points_serial(cp, xs, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * npts);
}

void bench_eval_parallel(benchmark::State& state) {
  MultiPoly p = dense_poly(2, 10, 2);
  CompiledPoly cp = CompiledPoly::from(p);
  const int npts = static_cast<int>(state.range(0));
  std::vector<double> xs = halton_box(2, npts);
  std::vector<double> out(npts);
  for (auto _ : state) {
    kernels::eval_points_parallel(cp, xs, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * npts);
}

}  // namespace

BENCHMARK(bench_grid_serial)->Arg(24)->Arg(48);
BENCHMARK(bench_grid_parallel)->Arg(24)->Arg(48);
BENCHMARK(bench_eval_serial)->Arg(1 << 14)->Arg(1 << 17);
BENCHMARK(bench_eval_parallel)->Arg(1 << 14)->Arg(1 << 17);

int main(int argc, char** argv) {
  putinar::apply_thread_cap();
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
