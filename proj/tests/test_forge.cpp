#include <doctest.h>

#include "pban/forge.hpp"
#include "testutil.hpp"

using namespace pban;
using namespace testutil;

namespace {

NetParams half_net() {
  NetParams net;
  net.grid_step = frac(1, 2);
  return net;
}

}  // namespace

TEST_CASE("step: realizing the sup extension over the line gives the sup plane") {
  Space line = Space::sup_space(1);
  TypePres xi = sup_ext_type(line);
  ChainState cs = ChainState::start(line);
  ChainState cs1 = step(cs, LinMap::identity(line), 0, xi);
  REQUIRE(cs1.spaces.size() == 2);
  CHECK(cs1.top().dim == 2);
  CHECK(check_isometry(cs1.links[0]).isometry_checked == IsoState::Isometric);

  // Candidate isometry onto the sup plane: lifted base vector and witness.
  Vec e = cs1.lift(0).apply({Scalar(1)});
  Vec w = cs1.ledger[0].witness[0];
  Mat m(2, 2);
  m.at(0, 0) = e[0];
  m.at(1, 0) = e[1];
  m.at(0, 1) = w[0];
  m.at(1, 1) = w[1];
  CHECK(check_isometry(LinMap::between(Space::sup_space(2), cs1.top(), m)).isometry_checked ==
        IsoState::Isometric);

  // The ledger witness realizes the type exactly.
  DistanceBracket d = type_distance(tp(cs1.ledger[0].sub, cs1.ledger[0].witness), xi);
  CHECK(d.exact);
  CHECK(d.lo == 0);
  CHECK(d.hi == 0);
}

TEST_CASE("step with an already-realized type keeps the dimension") {
  Space line = Space::sup_space(1);
  ChainState cs1 = step(ChainState::start(line), LinMap::identity(line), 0, sup_ext_type(line));
  TypePres realized = tp(line, {{frac(1, 2)}});
  ChainState cs2 = step(cs1, LinMap::identity(line), 0, realized);
  CHECK(cs2.top().dim == cs1.top().dim);
}

TEST_CASE("step respects the dimension cap") {
  Space line = Space::sup_space(1);
  NetParams net;
  net.dim_cap = 1;
  CHECK_THROWS_AS(step(ChainState::start(line), LinMap::identity(line), 0, sup_ext_type(line), net),
                  DimensionTooLarge);
}

TEST_CASE("avoidance: forbidding the realized type throws with a zero bound") {
  Space line = Space::sup_space(1);
  ChainState cs = ChainState::start(line);
  cs.avoid_list.push_back({sup_ext_type(line), frac(1, 2)});
  bool threw = false;
  try {
    step(cs, LinMap::identity(line), 0, sup_ext_type(line));
  } catch (const AvoidanceViolation& v) {
    threw = true;
    CHECK(v.lo == 0);
    CHECK(v.radius == frac(1, 2));
  }
  CHECK(threw);
}

TEST_CASE("defect drops to zero once the sample type is realized") {
  Space line = Space::sup_space(1);
  NetParams net = half_net();
  TypePres xi = sum_ext_type(line);
  ChainState cs = ChainState::start(line);
  Scalar before = defect_report(cs, {xi}, net);
  CHECK(before >= frac(9, 10));
  ChainState cs1 = step(cs, LinMap::identity(line), 0, xi);
  CHECK(defect_report(cs1, {xi}, net) == 0);
  CHECK(defect_report(cs, {}, net) == 0);
}

TEST_CASE("schedule: single candidate, empty budget, avoided candidates") {
  Space line = Space::sup_space(1);
  NetParams net = half_net();
  TypePres xi = sup_ext_type(line);
  ChainState cs = ChainState::start(line);

  ChainState done = schedule(cs, 1, net, {xi}, {xi});
  REQUIRE(done.defect_history.size() == 1);
  CHECK(done.defect_history[0] <= net.grid_step);
  CHECK(done.defect_history[0] == defect_report(done, {xi}, net));

  ChainState none = schedule(cs, 0, net, {xi}, {xi});
  CHECK(none.spaces.size() == 1);
  CHECK(none.defect_history.empty());

  ChainState blocked = cs;
  blocked.avoid_list.push_back({xi, frac(1, 2)});
  ChainState out = schedule(blocked, 3, net, {xi}, {xi});
  CHECK(out.spaces.size() == 1);
  CHECK(out.defect_history.empty());
}

TEST_CASE("schedule history is nonincreasing and matches the defect report") {
  Space line = Space::sup_space(1);
  NetParams net = half_net();
  std::vector<TypePres> cands = {sup_ext_type(line), sum_ext_type(line)};
  ChainState out = schedule(ChainState::start(line), 4, net, cands, cands);
  REQUIRE(!out.defect_history.empty());
  for (std::size_t i = 1; i < out.defect_history.size(); ++i)
    CHECK(out.defect_history[i] <= out.defect_history[i - 1]);
  CHECK(out.defect_history.back() == defect_report(out, cands, net));
}

TEST_CASE("certify: empty catalog, exact copy, and an impossible problem") {
  Space line = Space::sup_space(1);
  NetParams net;
  ChainState cs1 = step(ChainState::start(line), LinMap::identity(line), 0, sup_ext_type(line));

  CHECK(certify_eps_gurarij(cs1, Catalog{}, frac(1, 4), net).all_certified);

  Catalog cat;
  cat.problems.push_back({subspace_from_basis(Space::sup_space(2), {vec({1, 0})}), {}});
  CertifyReport r1 = certify_eps_gurarij(cs1, cat, Scalar(0), net);
  REQUIRE(r1.outcomes.size() == 1);
  CHECK(r1.outcomes[0].certified);
  REQUIRE(r1.outcomes[0].best_distortion);
  CHECK(*r1.outcomes[0].best_distortion == 0);
  REQUIRE(r1.outcomes[0].psi);
  CHECK(check_isometry(*r1.outcomes[0].psi).isometry_checked == IsoState::Isometric);

  // The sup plane contains no isometric copy of the l1 plane through the
  // base: certification fails, with a positive distortion record.
  Catalog cat2;
  cat2.problems.push_back({subspace_from_basis(Space::sum_space(2), {vec({1, 0})}), {}});
  CertifyReport r2 = certify_eps_gurarij(cs1, cat2, frac(1, 10), net);
  CHECK(!r2.outcomes[0].certified);
  CHECK(!r2.all_certified);
  REQUIRE(r2.outcomes[0].best_distortion);
  CHECK(*r2.outcomes[0].best_distortion == frac(1, 2));
}

TEST_CASE("candidate enumeration contains the worked types") {
  Space line = Space::sup_space(1);
  auto cands = enumerate_candidate_types(line, Scalar(2), Scalar(1), Scalar(3));
  CHECK(!cands.empty());
  bool has_sup = false, has_sum = false;
  for (const auto& c : cands) {
    if (type_distance(c, sup_ext_type(line)).hi == 0) has_sup = true;
    if (type_distance(c, sum_ext_type(line)).hi == 0) has_sum = true;
  }
  CHECK(has_sup);
  CHECK(has_sum);
  // Every enumerated candidate is a valid Katetov presentation.
  for (const auto& c : cands) CHECK(is_katetov(to_katetov(c)).ok);
  CHECK(enumerate_candidate_types(line, Scalar(2), Scalar(1), Scalar(3)) == cands);
}
