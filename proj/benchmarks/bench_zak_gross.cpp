#include <benchmark/benchmark.h>

#include "zakgross/gkp_code.hpp"
#include "zakgross/theta.hpp"
#include "zakgross/zak_gross.hpp"

using namespace zakgross;

static void BM_ThetaNd2(benchmark::State& state) {
  Eigen::MatrixXcd tau(2, 2);
  tau << cplx(0.0, 1.0), 0.5, 0.5, cplx(0.0, 1.0);
  Eigen::VectorXcd z(2);
  z << cplx(0.3, 0.1), cplx(-0.2, 0.05);
  const ThetaArg arg(z, tau);
  for (auto _ : state) benchmark::DoNotOptimize(theta_nd(arg));
}
BENCHMARK(BM_ThetaNd2);

// Figure 1 workload on the closed-form path.
static void BM_VacuumGrid13(benchmark::State& state) {
  const QuditSystem sys(13);
  const CvState vacuum(GaussianState::vacuum());
  ZgGridOptions options;
  options.workers = 1;
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(zg_grid(sys, vacuum, n, n, options));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_VacuumGrid13)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

// Figure 4 workload on the generic lattice path.
static void BM_ApproxGkpLatticeGrid(benchmark::State& state) {
  const QuditSystem sys(3);
  const CvState gkp(make_approx_gkp(sys, 0, 0.51, 0.4, 1).displaced(sys.ell() / 2, sys.ell() / 4));
  ZgGridOptions options;
  options.workers = 1;
  options.path = GridPath::lattice;
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(zg_grid(sys, gkp, n, n, options));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_ApproxGkpLatticeGrid)->Arg(96)->Arg(255)->Unit(benchmark::kMillisecond);

static void BM_SuperpositionChi(benchmark::State& state) {
  const QuditSystem sys(3);
  const auto gkp = make_approx_gkp(sys, 0, 0.1, 0.1);
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gkp.chi(x, 0.7));
    x += 1e-3;
  }
}
BENCHMARK(BM_SuperpositionChi);

static void BM_GrossWigner(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const QuditSystem sys(d);
  const DvState magic = DvState::magic(d);
  for (auto _ : state) benchmark::DoNotOptimize(gross_wigner(sys, magic));
}
BENCHMARK(BM_GrossWigner)->Arg(3)->Arg(13)->Arg(51);

static void BM_VacuumNegativity13(benchmark::State& state) {
  const QuditSystem sys(13);
  const CvState vacuum(GaussianState::vacuum());
  ZgGridOptions options;
  options.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(zg_negativity(sys, vacuum, 256, 256, options));
}
BENCHMARK(BM_VacuumNegativity13)->Unit(benchmark::kMillisecond);

static void BM_Corollary(benchmark::State& state) {
  const QuditSystem sys(3);
  const CvState gkp(make_approx_gkp(sys, 0, 0.51, 0.4, 1));
  ZgGridOptions options;
  options.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(corollary_check(sys, gkp, 192, 192, {}, options));
}
BENCHMARK(BM_Corollary)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
