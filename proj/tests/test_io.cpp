#include <doctest.h>

#include "pban/forge.hpp"
#include "pban/io.hpp"
#include "testutil.hpp"

using namespace pban;
using namespace testutil;

TEST_CASE("scalars serialize as reduced p/q strings") {
  CHECK(to_json(frac(1, 2)).get<std::string>() == "1/2");
  CHECK(to_json(frac(2, 2)).get<std::string>() == "1");
  CHECK(to_json(frac(-3, 6)).get<std::string>() == "-1/2");
  CHECK(scalar_from_json(parse_json("\"7/3\"")) == frac(7, 3));
  CHECK(scalar_from_json(parse_json("\"-4\"")) == Scalar(-4));
  CHECK_THROWS_AS(scalar_from_json(parse_json("\"1/0\"")), ParseError);
  CHECK_THROWS_AS(scalar_from_json(parse_json("\"x\"")), ParseError);
}

TEST_CASE("round trips for the structured objects") {
  Rng rng(83);
  Space E = random_space(rng, 2);
  CHECK(space_from_json(to_json(E)) == E);

  LinMap incl = random_subspace(rng, E, 1);
  LinMap back = linmap_from_json(to_json(incl));
  CHECK(back.source == incl.source);
  CHECK(back.target == incl.target);
  CHECK(back.matrix == incl.matrix);

  TypePres xi = tp(incl, {rand_vec(rng, 2, 2, 2)});
  CHECK(typepres_from_json(to_json(xi)) == xi);

  KFn f = to_katetov(xi);
  KFn g = kfn_from_json(to_json(f));
  CHECK(g == f);

  ChainState cs = step(ChainState::start(Space::sup_space(1)), LinMap::identity(Space::sup_space(1)),
                       0, sup_ext_type(Space::sup_space(1)));
  ChainState cs2 = chain_from_json(to_json(cs));
  CHECK(cs2.spaces.size() == cs.spaces.size());
  CHECK(cs2.top() == cs.top());
  REQUIRE(cs2.ledger.size() == 1);
  CHECK(cs2.ledger[0].xi == cs.ledger[0].xi);
  CHECK(cs2.ledger[0].witness == cs.ledger[0].witness);
}

TEST_CASE("ball json with both representations is cross-validated") {
  Json j = parse_json(R"({"dim":2,
    "facets":[["1","0"],["-1","0"],["0","1"],["0","-1"]],
    "vertices":[["1","1"],["1","-1"],["-1","1"],["-1","-1"]]})");
  PolyBall b = ball_from_json(j);
  CHECK(b.has_facets);
  CHECK(b.has_vertices);
  // A vertex escaping the facets is rejected.
  Json bad = j;
  bad["vertices"][0] = Json::array({"2", "0"});
  CHECK_THROWS_AS(ball_from_json(bad), Error);
}

TEST_CASE("malformed json raises ParseError") {
  CHECK_THROWS_AS(parse_json("{oops"), ParseError);
  CHECK_THROWS_AS(space_from_json(parse_json("{\"dim\": 2}")), ParseError);
}

TEST_CASE("csv helpers") {
  CHECK(csv_row({frac(1, 2), Scalar(3)}) == "1/2,3");
  CHECK(csv_matrix({{Scalar(1), Scalar(2)}, {Scalar(3), Scalar(4)}}) == "1,2\n3,4\n");
}

TEST_CASE("serialization is deterministic") {
  Space hex = hexagon_space();
  CHECK(to_json(hex).dump() == to_json(hexagon_space()).dump());
}
