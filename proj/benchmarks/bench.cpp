#include <benchmark/benchmark.h>

#include <random>

#include "pinfloer/clifford.hpp"
#include "pinfloer/grading.hpp"
#include "pinfloer/grid.hpp"
#include "pinfloer/homology.hpp"
#include "pinfloer/signs.hpp"
#include "pinfloer/torus_triangles.hpp"

namespace {

using namespace pinfloer;

void bm_clifford_mul(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::map<BladeMask, Scalar> ta, tb;
  for (BladeMask m = 0; m < (BladeMask{1} << n); ++m) {
    ta[m] = Scalar(Rational(static_cast<long>(m) + 1));
    tb[m] = Scalar(Rational(static_cast<long>(m) * 2 + 1));
  }
  const CliffordElement a(n, ta), b(n, tb);
  for (auto _ : state) {
    benchmark::DoNotOptimize(clifford_mul(a, b));
  }
}
BENCHMARK(bm_clifford_mul)->Arg(4)->Arg(6)->Arg(8);

void bm_permutation_lift(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = n - 1 - i;
  for (auto _ : state) {
    benchmark::DoNotOptimize(permutation_lift(perm));
  }
}
BENCHMARK(bm_permutation_lift)->Arg(5)->Arg(7);

void bm_tau_iso(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  SymplecticSpace v(g);
  // Graph-style Lagrangians over the a-span and the b-span; symmetric
  // integer slopes keep the pair transverse.
  RatMat ab, bb;
  for (int i = 0; i < g; ++i) {
    RatVec a(2 * g, Rational(0)), b(2 * g, Rational(0));
    a[2 * i] = 1;
    b[2 * i + 1] = 1;
    for (int j = 0; j < g; ++j) {
      a[2 * j + 1] = Rational(1 + std::min(i, j));
      b[2 * j] = Rational(2 + std::max(i, j));
    }
    ab.push_back(a);
    bb.push_back(b);
  }
  LagrangianSubspace l0(v, ab), l1(v, bb);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tau_iso(v, l0, l1));
  }
}
BENCHMARK(bm_tau_iso)->Arg(2)->Arg(4);

void bm_sign_construction(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(construct_sign_assignment(n));
  }
}
BENCHMARK(bm_sign_construction)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void bm_sign_verify(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SignAssignment signs = construct_sign_assignment(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_sign_assignment(signs));
  }
}
BENCHMARK(bm_sign_verify)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void bm_tilde_complex(benchmark::State& state) {
  const auto g = grid_from_permutations(5, {2, 3, 4, 0, 1}, {0, 1, 2, 3, 4});
  const SignAssignment signs = construct_sign_assignment(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(grid_complex(g, signs, GridFlavor::tilde));
  }
}
BENCHMARK(bm_tilde_complex)->Unit(benchmark::kMillisecond);

void bm_tilde_homology(benchmark::State& state) {
  const auto g = grid_from_permutations(5, {2, 3, 4, 0, 1}, {0, 1, 2, 3, 4});
  const SignAssignment signs = construct_sign_assignment(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tilde_homology(g, signs));
  }
}
BENCHMARK(bm_tilde_homology)->Unit(benchmark::kMillisecond);

void bm_smith_normal_form(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  // Banded integer matrix with mixed magnitudes, the shape the grid
  // boundaries produce after bucketing.
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> value(-2, 2);
  SparseIntMatrix m(n, n + 8);
  for (int r = 0; r < n; ++r) {
    for (int d = 0; d < 4; ++d) {
      m.set(r, (r + d * 3) % (n + 8), value(rng));
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(smith_normal_form(m));
  }
}
BENCHMARK(bm_smith_normal_form)->Arg(40)->Arg(120)->Unit(benchmark::kMillisecond);

void bm_triangle_enumeration(benchmark::State& state) {
  const GenusOneTriple t;
  const int max_k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_triangles(t, max_k));
  }
}
BENCHMARK(bm_triangle_enumeration)->Arg(6)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
