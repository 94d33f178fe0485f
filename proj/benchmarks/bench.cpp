// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <cmath>

#include "semihom/condition.hpp"
#include "semihom/covering.hpp"
#include "semihom/homology.hpp"
#include "semihom/nerve.hpp"
#include "semihom/random.hpp"
#include "semihom/spheregrid.hpp"

using namespace semihom;

namespace {

HomogeneousPolynomial random_poly(Rng& rng, std::size_t vars, unsigned d) {
  std::vector<std::pair<MultiIndex, double>> terms;
  std::vector<unsigned> e(vars, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == vars) {
      e[i] = left;
      terms.emplace_back(MultiIndex(e), rng.normal());
      return;
    }
    for (unsigned a = 0; a <= left; ++a) {
      e[i] = a;
      self(self, i + 1, left - a);
    }
  };
  rec(rec, 0, d);
  return HomogeneousPolynomial(vars, d, terms);
}

void BM_KappaSemi(benchmark::State& state) {
  Rng rng(1);
  const int n = static_cast<int>(state.range(0));
  const auto vars = static_cast<std::size_t>(n) + 1;
  SemialgebraicSystem sys(n, {random_poly(rng, vars, 3)}, {random_poly(rng, vars, 2), random_poly(rng, vars, 2)});
  const Vec x = rng.on_sphere(n + 1);
  for (auto _ : state) benchmark::DoNotOptimize(kappa_semi(sys, x));
}
BENCHMARK(BM_KappaSemi)->Arg(1)->Arg(2)->Arg(4);

void BM_BuildGrid(benchmark::State& state) {
  GridParams p;
  for (auto _ : state) benchmark::DoNotOptimize(build_grid(2, static_cast<int>(state.range(0)), p).size());
}
BENCHMARK(BM_BuildGrid)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_CoverBand(benchmark::State& state) {
  SphereFunction band = [](const Vec& x) { return std::min(1.0, 0.05 + std::abs(x[0])); };
  GridParams p;
  GridHierarchy grids(static_cast<int>(state.range(0)), p);
  for (auto _ : state) benchmark::DoNotOptimize(cover(band, 1.0, grids).balls.size());
}
BENCHMARK(BM_CoverBand)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Nerve(benchmark::State& state) {
  Rng rng(2);
  std::vector<Vec> centers;
  std::vector<double> radii;
  for (int i = 0; i < state.range(0); ++i) {
    centers.push_back(rng.on_sphere(3));
    radii.push_back(0.15);
  }
  for (auto _ : state) benchmark::DoNotOptimize(build_nerve(centers, radii, 3).total());
}
BENCHMARK(BM_Nerve)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_RationalRank(benchmark::State& state) {
  Rng rng(3);
  std::vector<Vec> centers;
  std::vector<double> radii;
  for (int i = 0; i < state.range(0); ++i) {
    centers.push_back(rng.on_sphere(3));
    radii.push_back(0.2);
  }
  const auto c = build_nerve(centers, radii, 2);
  const auto d = boundary_matrix(c, 2);
  for (auto _ : state) benchmark::DoNotOptimize(rational_rank(d));
}
BENCHMARK(BM_RationalRank)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_Betti(benchmark::State& state) {
  Rng rng(4);
  std::vector<Vec> centers;
  std::vector<double> radii;
  for (int i = 0; i < state.range(0); ++i) {
    centers.push_back(rng.on_sphere(3));
    radii.push_back(0.2);
  }
  const auto c = build_nerve(centers, radii, 3);
  for (auto _ : state) benchmark::DoNotOptimize(betti_numbers(c).betti);
}
BENCHMARK(BM_Betti)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
