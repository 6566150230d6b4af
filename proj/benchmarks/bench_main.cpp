// Microbenchmarks for the hot paths of the library: matrix-free operator
// application, dense assembly, algebraic residual checks (floating and
// exact), closed-form thermodynamic evaluation, and the zero scanner.
//
// Run:  ./benchmarks/sp4_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include <complex>
#include <random>

#include "sp4/algebra.hpp"
#include "sp4/exact.hpp"
#include "sp4/hamiltonian.hpp"
#include "sp4/identities.hpp"
#include "sp4/spectral.hpp"
#include "sp4/thermo.hpp"
#include "sp4/transfer.hpp"
#include "sp4/zeros.hpp"

namespace {

sp4::RVec random_state(int L, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  sp4::RVec x(static_cast<Eigen::Index>(sp4::physical_dim(L)));
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = dist(rng);
  x /= x.norm();
  return x;
}

// --- matrix-free kernels ---------------------------------------------------

void BM_TransferApply(benchmark::State& state) {
  const int rep = static_cast<int>(state.range(0));
  const int L = static_cast<int>(state.range(1));
  const sp4::RVec x = random_state(L, 0xbe7c0000ULL + static_cast<unsigned>(L));
  sp4::RVec y(x.size());
  for (auto _ : state) {
    sp4::apply_transfer(rep, L, 0.3, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(sp4::physical_dim(L)));
}

void BM_HamiltonianApply(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const sp4::RVec x = random_state(L, 0xbe7c1000ULL + static_cast<unsigned>(L));
  sp4::RVec y(x.size());
  for (auto _ : state) {
    sp4::apply_hamiltonian(L, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(sp4::physical_dim(L)));
}

void BM_DenseTransfer(benchmark::State& state) {
  const int rep = static_cast<int>(state.range(0));
  const int L = static_cast<int>(state.range(1));
  const sp4::cplx lam(0.3, 0.2);
  for (auto _ : state) {
    sp4::CMat t = sp4::dense_transfer(rep, L, lam);
    benchmark::DoNotOptimize(t.data());
  }
}

// --- algebraic residual checks ----------------------------------------------

void BM_YbeResidual(benchmark::State& state) {
  const auto kind = state.range(0) == 0 ? sp4::YbeKind::k444 : sp4::YbeKind::k544;
  const sp4::cplx lam(0.37, 0.21), mu(-1.3, 0.4);
  for (auto _ : state) {
    double r = sp4::check_yang_baxter(kind, lam, mu);
    benchmark::DoNotOptimize(r);
  }
}

void BM_ExactYbe444(benchmark::State& state) {
  const sp4::QSqrt2 lam(sp4::Rational(3, 7), sp4::Rational(1, 5));
  const sp4::QSqrt2 mu(sp4::Rational(-5, 4), sp4::Rational(2, 3));
  for (auto _ : state) {
    bool ok = sp4::check_yang_baxter_exact_444(lam, mu);
    benchmark::DoNotOptimize(ok);
  }
}

void BM_ExactFusedWeight(benchmark::State& state) {
  const sp4::QSqrt2 lam(sp4::Rational(3, 7), sp4::Rational(1, 5));
  for (auto _ : state) {
    bool ok = sp4::check_fus1_exact(lam);
    benchmark::DoNotOptimize(ok);
  }
}

// --- closed-form thermodynamics ----------------------------------------------

void BM_OmegaGammaForm(benchmark::State& state) {
  for (auto _ : state) {
    double v = sp4::omega_region2(-0.5);
    benchmark::DoNotOptimize(v);
  }
}

void BM_OmegaIntegralForm(benchmark::State& state) {
  for (auto _ : state) {
    double v = sp4::omega_region2_integral(-0.5);
    benchmark::DoNotOptimize(v);
  }
}

void BM_LogKappaIntegral(benchmark::State& state) {
  for (auto _ : state) {
    double v = sp4::log_kappa_region2_integral(-0.5);
    benchmark::DoNotOptimize(v);
  }
}

// --- higher-level routines ---------------------------------------------------

void BM_IdentityResidual(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const sp4::cplx lam(0.37, 0.21);
  for (auto _ : state) {
    double r = sp4::identity1_full_residual(L, lam);
    benchmark::DoNotOptimize(r);
  }
}

void BM_ZeroScanWindow(benchmark::State& state) {
  // Narrow window around the left cluster of on-line zeros at L = 4; the
  // reference vector is cached after the first iteration, so steady-state
  // timings measure the grid sweep plus Newton refinement only.
  sp4::ZeroScanOptions opt;
  opt.re_lo = -1.7;
  opt.re_hi = -1.3;
  opt.im_lo = -0.6;
  opt.im_hi = 0.6;
  for (auto _ : state) {
    sp4::ZeroScanResult r = sp4::scan_branch_zeros(4, 4, opt);
    benchmark::DoNotOptimize(r.zeros.data());
  }
}

void BM_KappaFinite(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  sp4::branch_vector(L);  // warm the cache outside the timed region
  for (auto _ : state) {
    double v = sp4::kappa_finite(4, L, -0.5);
    benchmark::DoNotOptimize(v);
  }
}

BENCHMARK(BM_TransferApply)
    ->Args({4, 4})
    ->Args({4, 6})
    ->Args({4, 8})
    ->Args({5, 4})
    ->Args({5, 6})
    ->Args({5, 8})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HamiltonianApply)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DenseTransfer)->Args({4, 3})->Args({5, 3})->Args({4, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_YbeResidual)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ExactYbe444)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactFusedWeight)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OmegaGammaForm)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_OmegaIntegralForm)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LogKappaIntegral)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_IdentityResidual)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ZeroScanWindow)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KappaFinite)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
