#include <doctest.h>

#include "pban/fenchel.hpp"
#include "testutil.hpp"

using namespace pban;
using namespace testutil;

namespace {

KFn abs_fn(const Space& line) {  // |a|
  return KFn::make(line, {{{Scalar(1)}, Scalar(0)}, {{Scalar(-1)}, Scalar(0)}});
}
KFn abs_plus_one(const Space& line) {  // |a| + 1
  return KFn::make(line, {{{Scalar(1)}, Scalar(1)}, {{Scalar(-1)}, Scalar(1)}});
}
KFn max_abs_one(const Space& line) {  // max(|a|, 1)
  return KFn::make(line, {{{Scalar(1)}, Scalar(0)}, {{Scalar(-1)}, Scalar(0)}, {{Scalar(0)}, Scalar(1)}});
}

/// A random Katetov function: distance to a random point of a random
/// one-dimensional polyhedral extension of the base.
KFn random_katetov(Rng& rng, const Space& base) {
  AmalgamOut ext = amalgamate(Space::trivial(), base, Space::sup_space(1),
                              LinMap::between(Space::trivial(), base, Mat(base.dim, 0)),
                              LinMap::between(Space::trivial(), Space::sup_space(1), Mat(1, 0)));
  return to_katetov(tp(ext.g0, {rand_vec(rng, ext.result.dim, 2, 2)}));
}

/// Primal pairwise oracle on a rational grid: |f(x) - f(y)| <= ||x - y||
/// and ||x - y|| <= f(x) + f(y) for all sampled x, y. Necessary for the
/// Katetov property; decisive for violations at grid points.
bool primal_pairwise_ok(const KFn& f, long radius, long den) {
  const Space& E = f.space;
  std::vector<Vec> grid;
  std::vector<long> idx(E.dim, -radius * den);
  for (;;) {
    Vec p(E.dim);
    for (std::size_t i = 0; i < E.dim; ++i) p[i] = frac(idx[i], den);
    grid.push_back(std::move(p));
    std::size_t i = 0;
    while (i < E.dim && idx[i] == radius * den) idx[i++] = -radius * den;
    if (i == E.dim) break;
    ++idx[i];
  }
  for (const auto& x : grid)
    for (const auto& y : grid) {
      Scalar d = norm(E, sub(x, y));
      Scalar fx = kfn_eval(f, x), fy = kfn_eval(f, y);
      Scalar gap = fx - fy;
      if (gap < 0) gap = -gap;
      if (gap > d) return false;
      if (d > fx + fy) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("conjugate values of the worked line functions") {
  Space line = Space::sup_space(1);
  ConjFn c1 = conjugate(abs_fn(line));
  CHECK(*conj_eval(c1, {Scalar(0)}) == 0);
  CHECK(*conj_eval(c1, {Scalar(1)}) == 0);
  CHECK(!conj_eval(c1, {Scalar(2)}));  // outside dom f*
  ConjFn c2 = conjugate(abs_plus_one(line));
  CHECK(*conj_eval(c2, {frac(1, 2)}) == -1);
  ConjFn c3 = conjugate(max_abs_one(line));
  CHECK(*conj_eval(c3, {frac(1, 2)}) == frac(-1, 2));
  CHECK(*conj_eval(c3, {Scalar(1)}) == 0);
  CHECK(*conj_eval(c3, {Scalar(-1)}) == 0);
}

TEST_CASE("biconjugation restores the worked functions") {
  Space line = Space::sup_space(1);
  for (const KFn& f : {abs_fn(line), abs_plus_one(line), max_abs_one(line)})
    CHECK(biconjugate(conjugate(f)) == f);
}

TEST_CASE("biconjugation on random Katetov functions") {
  Rng rng(67);
  for (int it = 0; it < 30; ++it) {
    Space base = random_space(rng, static_cast<std::size_t>(rand_int(rng, 1, 2)));
    KFn f = random_katetov(rng, base);
    CHECK(biconjugate(conjugate(f)) == f);
  }
}

TEST_CASE("conjugation is an isometry for the sup distance") {
  Rng rng(71);
  for (int it = 0; it < 15; ++it) {
    Space base = random_space(rng, static_cast<std::size_t>(rand_int(rng, 1, 2)));
    KFn f = random_katetov(rng, base);
    KFn g = random_katetov(rng, base);
    auto d = kfn_distance(f, g);
    REQUIRE(d);
    // Independent evaluation of ||f* - g*|| over the dual ball: both
    // conjugates in max-affine form via the restricted conjugate (exact
    // beyond all breakpoints), compared at the joint subdivision
    // vertices of the dual ball.
    Space dual = dual_space(base);
    std::vector<LinCon> big_box;
    for (const auto& fac : base.ball.facets) big_box.push_back({fac, Scalar(64), false});
    PLMax fstar = pl_restricted_conjugate(f.pieces, big_box, base.dim);
    PLMax gstar = pl_restricted_conjugate(g.pieces, big_box, base.dim);
    std::vector<LinCon> dom;
    for (const auto& fac : dual.ball.facets) dom.push_back({fac, Scalar(1), false});
    PLMax joint(fstar);
    joint.insert(joint.end(), gstar.begin(), gstar.end());
    Scalar best(0);
    for (const auto& v : pl_cell_vertices(joint, dom, base.dim)) {
      Scalar gap = pl_eval(fstar, v) - pl_eval(gstar, v);
      if (gap < 0) gap = -gap;
      if (gap > best) best = gap;
    }
    CHECK(*d == best);
  }
}

TEST_CASE("katetov criterion: worked examples and scaling") {
  Space line = Space::sup_space(1);
  CHECK(is_katetov(abs_fn(line)).ok);
  CHECK(is_katetov(abs_plus_one(line)).ok);
  CHECK(is_katetov(max_abs_one(line)).ok);
  // Slope 1/2 fails the antipode condition (too flat to dominate the norm).
  KFn half = KFn::make(line, {{{frac(1, 2)}, Scalar(0)}, {{frac(-1, 2)}, Scalar(0)}});
  CHECK(!is_katetov(half).ok);
  // Slope 2 leaves the dual ball.
  KFn twice = KFn::make(line, {{{Scalar(2)}, Scalar(0)}, {{Scalar(-2)}, Scalar(0)}});
  CHECK(!is_katetov(twice).ok);
}

TEST_CASE("katetov criterion agrees with the primal pairwise oracle") {
  Rng rng(73);
  int positives = 0, negatives = 0;
  for (int it = 0; it < 60; ++it) {
    Space base = random_space(rng, 1);
    KFn f = random_katetov(rng, base);
    int mode = static_cast<int>(rand_int(rng, 0, 2));
    if (mode == 1) {
      // Engineered negative: double every slope (Lipschitz failure).
      PLMax pieces = f.pieces;
      for (auto& p : pieces)
        for (auto& s : p.slope) s *= 2;
      f = KFn::make(base, std::move(pieces));
    } else if (mode == 2) {
      // Engineered negative: sink the function (antipode failure at 0).
      PLMax pieces = f.pieces;
      Scalar drop = kfn_eval(f, Vec(base.dim, Scalar(0))) + 1;
      for (auto& p : pieces) p.intercept -= drop;
      f = KFn::make(base, std::move(pieces));
    }
    bool dual_ok = is_katetov(f).ok;
    bool primal_ok = primal_pairwise_ok(f, 6, 2);
    if (mode == 0) {
      // Genuine distance functions are Katetov; both views must agree.
      CHECK(dual_ok);
      CHECK(primal_ok);
      ++positives;
    } else {
      // The primal oracle is necessary-only, so dual_ok implies
      // primal_ok; the engineered failures are visible on the grid.
      CHECK(!dual_ok);
      CHECK(!primal_ok);
      ++negatives;
    }
  }
  CHECK(positives > 0);
  CHECK(negatives > 0);
}

TEST_CASE("katetov_extend and locality") {
  Space line = Space::sup_space(1);
  KFn fone = KFn::make(line, {{{Scalar(0)}, Scalar(1)}});
  std::vector<LinCon> unit = {{{Scalar(1)}, Scalar(1), false}, {{Scalar(-1)}, Scalar(1), false}};
  CHECK(katetov_extend(fone, unit) == max_abs_one(line));
  std::vector<LinCon> origin = {{{Scalar(1)}, Scalar(0), false}, {{Scalar(-1)}, Scalar(0), false}};
  CHECK(katetov_extend(max_abs_one(line), origin) == abs_plus_one(line));
  CHECK(locality_gap(max_abs_one(line), origin) == 1);
  CHECK(locality_gap(abs_fn(line), origin) == 0);
  std::vector<LinCon> wide = {{{Scalar(1)}, Scalar(2), false}, {{Scalar(-1)}, Scalar(2), false}};
  CHECK(locality_gap(max_abs_one(line), wide) == 0);
}

TEST_CASE("boundary max test on the worked functions") {
  Space line = Space::sup_space(1);
  MaxTestReport r1 = boundary_max_test(abs_fn(line), Scalar(0), 2);
  CHECK(r1.verdict == MaxTestReport::Verdict::NoViolationFound);
  CHECK(r1.certified);
  MaxTestReport r2 = boundary_max_test(abs_plus_one(line), Scalar(1), 2);
  CHECK(r2.verdict == MaxTestReport::Verdict::Violated);
  REQUIRE(r2.witness_g);
  REQUIRE(r2.witness_lambda);
  // Re-verify the violation witness: g <= f, g Katetov, and the gap on
  // the sphere functional exceeds r.
  const KFn& g = *r2.witness_g;
  CHECK(is_katetov(g).ok);
  for (long num = -8; num <= 8; ++num)
    CHECK(kfn_eval(g, {frac(num, 2)}) <= kfn_eval(abs_plus_one(line), {frac(num, 2)}));
  // max(|a|, 1): dominated functions like |a| only open a gap in the
  // interior of the dual ball, never on the dual sphere, so the
  // boundary test is clean.
  MaxTestReport r3 = boundary_max_test(max_abs_one(line), Scalar(0), 2);
  CHECK(r3.verdict == MaxTestReport::Verdict::NoViolationFound);
  CHECK(r3.certified);
}

TEST_CASE("type/Katetov round trip") {
  Space line = Space::sup_space(1);
  TypePres xi = sum_ext_type(line);
  KFn f = to_katetov(xi);
  CHECK(f.pieces == abs_plus_one(line).pieces);
  CHECK(from_katetov(f) == xi);
  Rng rng(79);
  for (int it = 0; it < 10; ++it) {
    Space base = random_space(rng, static_cast<std::size_t>(rand_int(rng, 1, 2)));
    KFn g = random_katetov(rng, base);
    CHECK(to_katetov(from_katetov(g)) == g);
  }
}

TEST_CASE("isolation worked verdicts") {
  Space line = Space::sup_space(1);
  CHECK(is_isolated(tp(line, {{frac(1, 2)}}), 2).verdict == IsolationVerdict::Isolated);
  IsolationReport ni = is_isolated(sum_ext_type(line), 2);
  CHECK(ni.verdict == IsolationVerdict::NotIsolated);
  CHECK(ni.gap > 0);
}

TEST_CASE("smoothness vs isolation crosscheck on the worked spaces") {
  Space linf2 = Space::sup_space(2), l1 = Space::sum_space(2);
  CrosscheckReport c1 = smooth_isolation_crosscheck(linf2, vec({1, 0}), vec({0, 1}), 2);
  CHECK(c1.smooth);
  CHECK(c1.isolation.verdict == IsolationVerdict::Isolated);
  CHECK(c1.agree);
  CrosscheckReport c2 = smooth_isolation_crosscheck(l1, vec({1, 0}), vec({0, 1}), 2);
  CHECK(!c2.smooth);
  CHECK(c2.isolation.verdict == IsolationVerdict::NotIsolated);
  CHECK(c2.isolation.gap == 2);
  CHECK(c2.agree);
  CrosscheckReport c3 = smooth_isolation_crosscheck(hexagon_space(), vec({1, 1}), vec({1, 0}), 2);
  CHECK(c3.agree);
}
