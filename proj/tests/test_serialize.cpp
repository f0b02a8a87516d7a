#include <doctest.h>

#include "rectcolor/arithmetic.hpp"
#include "rectcolor/construction.hpp"
#include "rectcolor/errors.hpp"
#include "rectcolor/geometry.hpp"
#include "rectcolor/serialize.hpp"

using namespace rectcolor;

TEST_CASE("hypergraph and coloring schema") {
  const OrderedHypergraph h(3, {{0, 2}, {1}});
  CHECK(dump(to_json(h)) == "{\"edges\":[[0,2],[1]],\"n\":3}\n");
  CHECK(hypergraph_from_json(to_json(h)) == h);
  const Coloring c{2, {0, 1, 1}};
  CHECK(dump(to_json(c)) == "{\"c\":2,\"colors\":[0,1,1]}\n");
  CHECK(coloring_from_json(to_json(c)).colors == c.colors);
}

TEST_CASE("readers reject malformed input") {
  CHECK_THROWS_AS(parse_json("{\"n\": 3,"), DomainError);
  CHECK_THROWS_AS(hypergraph_from_json(parse_json("{\"n\": 2, \"edges\": [[1, 0]]}")), DomainError);
  CHECK_THROWS_AS(hypergraph_from_json(parse_json("{\"edges\": []}")), DomainError);
  CHECK_THROWS_AS(coloring_from_json(parse_json("{\"c\": 2, \"colors\": [0, 2]}")), DomainError);
  CHECK_THROWS_AS(realization_from_json(parse_json("{\"points\": [[\"1/0\", \"0\"]]}")), DomainError);
}

TEST_CASE("girth reports") {
  const OrderedHypergraph tree(3, {{0, 1}, {1, 2}});
  CHECK(to_json(hypergraph_girth(tree))["girth"] == "infinite");
  const OrderedHypergraph tri(3, {{0, 1}, {1, 2}, {0, 2}});
  const Json j = to_json(hypergraph_girth(tri));
  CHECK(j["girth"] == 3);
  CHECK(j["witness"].size() == 3);
}

TEST_CASE("staged hypergraphs round trip") {
  const StagedHypergraph s = build_hkc(2, 2);
  const Json j = to_json(s);
  CHECK(j["n"] == 12);
  CHECK(j["stages"].size() == 5);
  CHECK(j["path_edges"].size() == 8);
  CHECK(j["transversal_edges"].size() == 6);
  CHECK(j["parents"][0].is_number());
  const StagedHypergraph back = staged_from_json(j);
  CHECK(back.base == s.base);
  CHECK(back.parent == s.parent);
  CHECK(dump(to_json(back)) == dump(j));

  const StagedHypergraph g = build_gcg(2, 5, odd_cycle_auxiliary());
  const StagedHypergraph gback = staged_from_json(to_json(g));
  CHECK(gback.kind == StagedKind::gcg);
  CHECK(dump(to_json(gback)) == dump(to_json(g)));

  Json broken = j;
  broken["parents"][0] = 11;
  CHECK_THROWS(staged_from_json(broken));
}

TEST_CASE("realizations keep exact rationals") {
  const StagedHypergraph s = build_hkc(2, 2);
  const Realization r = realize_hkc_nested(s);
  const Json j = to_json(r);
  CHECK(j["points"][0][0].get<std::string>().find('/') != std::string::npos);
  CHECK(j["rects"].size() == 14);
  const Realization back = realization_from_json(j);
  CHECK(back.points == r.points);
  CHECK(back.rects == r.rects);
  CHECK(back.hypergraph == r.hypergraph);
}

TEST_CASE("progressions serialize big integers as strings") {
  const FiniteAP a{BigInt("123456789012345678901234567890"), 7, 3};
  const Json j = to_json(a);
  CHECK(j["start"].is_string());
  CHECK(j["length"] == 3);
  CHECK(ap_from_json(j) == a);
  const FiniteAP huge{1, 1, BigInt("99999999999999999999999")};
  CHECK(ap_from_json(to_json(huge)) == huge);

  const StagedHypergraph s = build_hkc(2, 2);
  const Realization r = realize_hkc_nested(s);
  const APRealization ap = rects_to_D_aps(r.points, r.rects, *primes()).ap;
  const Json aj = to_json(ap);
  CHECK(aj["V"][0].is_string());
  const APRealization back = ap_realization_from_json(aj);
  CHECK(back.v == ap.v);
  CHECK(back.aps == ap.aps);
  CHECK(dump(to_json(back)) == dump(aj));
}

TEST_CASE("auxiliary hypergraphs round trip") {
  const AuxiliaryHypergraph a = odd_cycle_provider(5);
  const AuxiliaryHypergraph b = auxiliary_from_json(to_json(a));
  CHECK(b.base == a.base);
  CHECK(b.claimed_girth == a.claimed_girth);
  CHECK(b.certificate == a.certificate);
}
