// Microbenchmarks for the hot exact-arithmetic paths: LP solves, polar
// duality / representation completion, and type distance.
#include <benchmark/benchmark.h>

#include <random>

#include "pban/amalgam.hpp"
#include "pban/lp.hpp"
#include "pban/typespace.hpp"

using namespace pban;

namespace {

Scalar frac(long p, long q) {
  Scalar s(p, q);
  s.canonicalize();
  return s;
}

std::vector<LinCon> box_constraints(std::size_t dim, long radius) {
  std::vector<LinCon> cons;
  for (std::size_t i = 0; i < dim; ++i) {
    Vec a(dim, Scalar(0));
    a[i] = 1;
    cons.push_back({a, Scalar(radius), false});
    a[i] = -1;
    cons.push_back({a, Scalar(radius), false});
  }
  return cons;
}

void bm_lp_max(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(-4, 4);
  std::vector<LinCon> cons = box_constraints(dim, 2);
  for (int k = 0; k < 8; ++k) {
    Vec a(dim);
    for (auto& x : a) x = frac(num(rng), 2);
    cons.push_back({a, Scalar(3), false});
  }
  Vec obj(dim);
  for (auto& x : obj) x = frac(num(rng), 3);
  for (auto _ : state) {
    LpResult r = lp_max(obj, cons);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(bm_lp_max)->Arg(2)->Arg(4)->Arg(6);

PolyBall random_ball(std::mt19937& rng, std::size_t dim) {
  std::uniform_int_distribution<long> num(-3, 3);
  for (;;) {
    std::vector<Vec> verts;
    for (std::size_t i = 0; i < dim; ++i) {
      Vec v(dim, Scalar(0));
      v[i] = frac(num(rng) == 0 ? 2 : 2, 1 + (i % 2));
      verts.push_back(v);
      verts.push_back(neg(v));
    }
    for (int k = 0; k < 2; ++k) {
      Vec v(dim);
      for (auto& x : v) x = frac(num(rng), 2);
      if (is_zero(v)) continue;
      verts.push_back(v);
      verts.push_back(neg(v));
    }
    try {
      return PolyBall::from_vertices(dim, verts);
    } catch (const Error&) {
    }
  }
}

void bm_polar(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(11);
  PolyBall b = random_ball(rng, dim);
  for (auto _ : state) {
    PolyBall p = polar(b);
    benchmark::DoNotOptimize(p.facets.size());
  }
}
BENCHMARK(bm_polar)->Arg(2)->Arg(3)->Arg(4);

void bm_complete_reps(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(13);
  PolyBall b = complete_reps(random_ball(rng, dim));
  PolyBall facets_only;
  facets_only.dim = dim;
  facets_only.facets = b.facets;
  facets_only.has_facets = true;
  for (auto _ : state) {
    PolyBall full = complete_reps(facets_only);
    benchmark::DoNotOptimize(full.vertices.size());
  }
}
BENCHMARK(bm_complete_reps)->Arg(2)->Arg(3)->Arg(4);

void bm_type_distance(benchmark::State& state) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<long> num(-2, 2);
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  Space base = Space::make(random_ball(rng, dim));
  AmalgamOut ext = amalgamate(Space::trivial(), base, Space::sup_space(1),
                              LinMap::between(Space::trivial(), base, Mat(base.dim, 0)),
                              LinMap::between(Space::trivial(), Space::sup_space(1), Mat(1, 0)));
  Vec a(ext.result.dim), b(ext.result.dim);
  for (auto& x : a) x = frac(num(rng), 2);
  for (auto& x : b) x = frac(num(rng), 2);
  TypePres xi = tp(ext.g0, {a});
  TypePres zeta = tp(ext.g0, {b});
  for (auto _ : state) {
    DistanceBracket d = type_distance(xi, zeta);
    benchmark::DoNotOptimize(d.lo);
  }
}
BENCHMARK(bm_type_distance)->Arg(1)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
