#include <doctest.h>

#include "pban/amalgam.hpp"
#include "pban/typespace.hpp"
#include "testutil.hpp"

using namespace pban;
using namespace testutil;

TEST_CASE("amalgamate over the trivial space is the l1 sum") {
  Space triv = Space::trivial(), line = Space::sup_space(1);
  AmalgamOut a = amalgamate(triv, line, line, LinMap::between(triv, line, Mat(1, 0)),
                            LinMap::between(triv, line, Mat(1, 0)));
  CHECK(a.result.dim == 2);
  CHECK(a.kernel_dim == 0);
  CHECK(a.result.ball == Space::sum_space(2).ball);
  CHECK(check_isometry(a.g0).isometry_checked == IsoState::Isometric);
  CHECK(check_isometry(a.g1).isometry_checked == IsoState::Isometric);
}

TEST_CASE("amalgamate with identity embeddings identifies the copies") {
  Space linf = Space::sup_space(2);
  AmalgamOut a = amalgamate(linf, linf, linf, LinMap::identity(linf), LinMap::identity(linf));
  CHECK(a.result.dim == 2);
  CHECK(a.kernel_dim == 2);
  CHECK(a.g0.matrix == a.g1.matrix);
  CHECK(check_isometry(a.g0).isometry_checked == IsoState::Isometric);
}

TEST_CASE("free amalgam of two planes over a line: copies of e2 at distance 2") {
  Space linf = Space::sup_space(2);
  LinMap incl = subspace_from_basis(linf, {vec({1, 0})});
  AmalgamOut a = amalgamate(incl.source, linf, linf, incl, incl);
  Vec e2 = vec({0, 1});
  Scalar d = norm(a.result, sub(a.g0.apply(e2), a.g1.apply(e2)));
  CHECK(d == 2);
  // Brute-force oracle: the distance is inf over w of
  // max(|w|,1) + max(|w|,1); sample a rational grid for an upper bound
  // certificate and confirm the amalgam value is <= every sample.
  for (long num = -8; num <= 8; ++num) {
    Vec w{frac(num, 4)};
    Scalar v = norm(linf, Vec{w[0], Scalar(1)}) + norm(linf, Vec{w[0], Scalar(-1)});
    CHECK(d <= v);
  }
}

TEST_CASE("condition_check examples") {
  Space line = Space::sup_space(1);
  CHECK(condition_check(line, line, {{Scalar(1)}}, {{Scalar(1)}}, {Scalar(0)}).ok);
  ConditionReport bad =
      condition_check(line, line, {{Scalar(1)}}, {Vec{frac(1, 4)}}, {frac(1, 2)});
  CHECK(!bad.ok);
  REQUIRE(bad.witness);
  // Witness r: |norm(r a) - norm(r b)| > |r| eps, exactly.
  const Vec& r = *bad.witness;
  Scalar lhs = norm(line, {r[0] * Scalar(1)}) - norm(line, {r[0] * frac(1, 4)});
  if (lhs < 0) lhs = -lhs;
  Scalar rhs = (r[0] < 0 ? -r[0] : r[0]) * frac(1, 2);
  CHECK(lhs > rhs);
}

TEST_CASE("approx_join: worked examples") {
  Space line = Space::sup_space(1);
  // Zero tolerance identifies the marked points.
  AmalgamOut j0 = approx_join(line, line, {{Scalar(1)}}, {{Scalar(1)}}, {Scalar(0)});
  CHECK(j0.result.dim == 1);
  CHECK(j0.g0.apply({Scalar(1)}) == j0.g1.apply({Scalar(1)}));

  // eps = 1/2 is attained exactly, not improved.
  AmalgamOut j = approx_join(line, line, {{Scalar(1)}}, {{Scalar(1)}}, {frac(1, 2)});
  Scalar d = norm(j.result, sub(j.g0.apply({Scalar(1)}), j.g1.apply({Scalar(1)})));
  CHECK(d == frac(1, 2));
  CHECK(!j.tolerance_capped);
  CHECK(check_isometry(j.g0).isometry_checked == IsoState::Isometric);
  CHECK(check_isometry(j.g1).isometry_checked == IsoState::Isometric);

  // Sub-floor tolerance is raised to the documented minimum.
  Scalar tiny = Scalar(1) / Scalar(mpz_class(1) << 30);
  AmalgamOut jc = approx_join(line, line, {{Scalar(1)}}, {{Scalar(1)}}, {tiny});
  CHECK(jc.tolerance_capped);
  Scalar dc = norm(jc.result, sub(jc.g0.apply({Scalar(1)}), jc.g1.apply({Scalar(1)})));
  CHECK(dc <= min_join_tolerance());

  // Violated condition throws with the witness.
  CHECK_THROWS_AS(approx_join(line, line, {{Scalar(1)}}, {Vec{frac(1, 4)}}, {frac(1, 2)}),
                  ConditionViolated);
}

TEST_CASE("empty marked tuples reduce to the plain amalgam") {
  Space line = Space::sup_space(1);
  AmalgamOut j = approx_join(line, line, {}, {}, {});
  CHECK(j.result.ball == Space::sum_space(2).ball);
}

TEST_CASE("random instances: condition_check is equivalent to join success") {
  Rng rng(37);
  int ok_count = 0, bad_count = 0;
  for (int it = 0; it < 40; ++it) {
    Space E = random_space(rng, static_cast<std::size_t>(rand_int(rng, 1, 2)));
    Space F = random_space(rng, static_cast<std::size_t>(rand_int(rng, 1, 2)));
    std::size_t k = static_cast<std::size_t>(rand_int(rng, 1, 2));
    std::vector<Vec> abar, bbar;
    std::vector<Scalar> eps;
    for (std::size_t i = 0; i < k; ++i) {
      abar.push_back(rand_vec(rng, E.dim, 2, 2));
      bbar.push_back(rand_vec(rng, F.dim, 2, 2));
      eps.push_back(frac(rand_int(rng, 0, 2), 2));
    }
    ConditionReport rep = condition_check(E, F, abar, bbar, eps);
    if (rep.ok) {
      ++ok_count;
      AmalgamOut j = approx_join(E, F, abar, bbar, eps);
      CHECK(check_isometry(j.g0).isometry_checked == IsoState::Isometric);
      CHECK(check_isometry(j.g1).isometry_checked == IsoState::Isometric);
      for (std::size_t i = 0; i < k; ++i) {
        Scalar cap = j.tolerance_capped && eps[i] < min_join_tolerance() && eps[i] > 0
                         ? min_join_tolerance()
                         : eps[i];
        CHECK(norm(j.result, sub(j.g0.apply(abar[i]), j.g1.apply(bbar[i]))) <= cap);
      }
    } else {
      ++bad_count;
      CHECK_THROWS_AS(approx_join(E, F, abar, bbar, eps), ConditionViolated);
    }
  }
  CHECK(ok_count > 0);
  CHECK(bad_count > 0);
}

TEST_CASE("amalgamate on random generated triples is exactly isometric") {
  Rng rng(41);
  for (int it = 0; it < 25; ++it) {
    std::size_t fdim = static_cast<std::size_t>(rand_int(rng, 1, 3));
    Space F0 = random_space(rng, fdim);
    std::size_t edim = static_cast<std::size_t>(rand_int(rng, 0, static_cast<long>(fdim) - 0));
    if (edim > 2) edim = 2;
    LinMap f0 = edim == 0 ? LinMap::between(Space::trivial(), F0, Mat(fdim, 0))
                          : random_subspace(rng, F0, edim);
    Space E = f0.source;
    TypePres xi = random_1type(rng, f0);
    GeneratedSpace gs = generated_space(xi);
    AmalgamOut a = amalgamate(E, F0, gs.space, f0, gs.base_incl);
    CHECK(check_isometry(a.g0).isometry_checked == IsoState::Isometric);
    CHECK(check_isometry(a.g1).isometry_checked == IsoState::Isometric);
    Mat lhs = a.g0.matrix.mul(f0.matrix);
    Mat rhs = a.g1.matrix.mul(gs.base_incl.matrix);
    CHECK(lhs == rhs);
  }
}
