#include <doctest.h>

#include <chrono>

#include "pban/census.hpp"
#include "testutil.hpp"

using namespace pban;
using namespace testutil;

namespace {

std::vector<Vec> worked_anchors() {
  std::vector<Vec> anchors;
  for (int n = 1; n <= 4; ++n) {
    double t = 0.7 * n;
    anchors.push_back(Vec{frac(std::llround(std::cos(t) * 1000), 100),
                          frac(std::llround(std::sin(t) * 1000), 100)});
  }
  return anchors;
}

}  // namespace

TEST_CASE("separated family on the 64-gon plane approximant") {
  Space gon = ngon(64, 4096);
  std::vector<Vec> anchors = worked_anchors();
  SeparatedFamily fam = lindenstrauss_family(gon, 4, anchors);
  REQUIRE(fam.types.size() == 16);
  REQUIRE(fam.sign_patterns.size() == 16);

  // Anchor inequalities hold exactly (re-verified independently).
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      Scalar bound = norm(gon, anchors[i]) + norm(gon, anchors[j]) - 1;
      CHECK(norm(gon, add(anchors[i], anchors[j])) <= bound);
      CHECK(norm(gon, sub(anchors[i], anchors[j])) <= bound);
    }

  // Ball memberships: type n sits within |v_n| - 1/2 of the signed anchor.
  for (std::size_t t = 0; t < 16; ++t)
    for (std::size_t n = 0; n < 4; ++n) {
      Vec z = scale(Scalar(-fam.sign_patterns[t][n]), anchors[n]);
      z.push_back(Scalar(1));
      CHECK(seminorm(fam.types[t], z) <= norm(gon, anchors[n]) - frac(1, 2));
    }

  // All 120 pairwise lower bounds certified >= 9/10.
  Scalar min_lo(1000);
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = i + 1; j < 16; ++j) {
      CHECK(fam.pairwise_lo[i][j] == fam.pairwise_lo[j][i]);
      if (fam.pairwise_lo[i][j] < min_lo) min_lo = fam.pairwise_lo[i][j];
    }
  CHECK(min_lo >= frac(9, 10));

  // The probe bounds never exceed the exact type distance.
  DistanceBracket d = type_distance(fam.types[0], fam.types[1]);
  CHECK(d.lo >= fam.pairwise_lo[0][1]);
}

TEST_CASE("single anchor gives an antipodal pair of separated types") {
  Space gon = ngon(64, 4096);
  SeparatedFamily f1 = lindenstrauss_family(gon, 1, {worked_anchors()[0]});
  REQUIRE(f1.types.size() == 2);
  CHECK(f1.pairwise_lo[0][1] >= frac(9, 10));
  CHECK(f1.pairwise_lo[0][0] == 0);
}

TEST_CASE("grid anchor search in the sup plane") {
  Space linf2 = Space::sup_space(2);
  SeparatedFamily f2 = lindenstrauss_family(linf2, 2, {}, Scalar(3), Scalar(1));
  CHECK(f2.types.size() == 4);
  // Three anchors cannot coexist in the sup plane: with only two
  // coordinates, two anchors peak on a shared coordinate and the signed
  // sum then violates the inequality.
  CHECK_THROWS_AS(lindenstrauss_family(linf2, 3, {}, Scalar(10), Scalar(1)), NoAnchorsFound);
}

TEST_CASE("invalid anchors are rejected") {
  Space linf2 = Space::sup_space(2);
  // Norm below one.
  CHECK_THROWS_AS(lindenstrauss_family(linf2, 1, {Vec{frac(1, 2), Scalar(0)}}), ValidationError);
  // A pair violating the separation inequality: ||a+b|| = 3 > 2.
  CHECK_THROWS_AS(lindenstrauss_family(linf2, 2, {vec({1, 0}), vec({2, 0})}), ValidationError);
  // Peak coordinates at the bound itself are fine: ||(1,1)|| = 1 + 1 - 1.
  CHECK(lindenstrauss_family(linf2, 2, {vec({1, 0}), vec({0, 1})}).types.size() == 4);
}

TEST_CASE("polyhedral net covers the worked sample") {
  Space line = Space::sup_space(1);
  KFn sample = KFn::make(line, {{{Scalar(1)}, Scalar(0)}, {{Scalar(-1)}, Scalar(0)}, {{Scalar(0)}, Scalar(1)}});
  NetReport rep = polyhedral_net(line, Scalar(2), frac(1, 2), {sample});
  CHECK(rep.covered);
  REQUIRE(rep.min_distances.size() == 1);
  CHECK(rep.min_distances[0] == 0);
  CHECK(!rep.net.empty());
  for (const auto& g : rep.net) CHECK(is_katetov(g).ok);
}

TEST_CASE("density probe tallies the verdicts") {
  Space line = Space::sup_space(1);
  TypePres realized = tp(line, {{frac(1, 2)}});
  DensityProbe p = isolated_density_probe(line, {realized, sum_ext_type(line)}, 2);
  REQUIRE(p.verdicts.size() == 2);
  CHECK(p.isolated == 1);
  CHECK(p.not_isolated == 1);
  CHECK(p.inconclusive == 0);
  REQUIRE(p.gaps.size() == 1);
  CHECK(p.gaps[0] > 0);
}

TEST_CASE("family build fits the desk-scale time budget") {
  auto t0 = std::chrono::steady_clock::now();
  Space gon = ngon(64, 4096);
  lindenstrauss_family(gon, 4, worked_anchors());
  auto secs =
      std::chrono::duration_cast<std::chrono::seconds>(std::chrono::steady_clock::now() - t0)
          .count();
  CHECK(secs < 120);
}
