#include <doctest.h>

#include <random>

#include "blockunits/io.hpp"
#include "blockunits/psl2.hpp"

using namespace blockunits;
using cyclo::CycNumber;

TEST_CASE("cyclotomic values survive a serialization round trip") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    long long N = 1 + rng() % 60;
    CycNumber x;
    for (int i = 0; i < 4; ++i) {
      Rational c = rat((long long)(rng() % 9) - 4, 1 + rng() % 3);
      x += c * CycNumber::root(N, rng() % N);
    }
    CycNumber back = io::cyc_from_json(io::to_json(x));
    CHECK(back == x);
  }
  // the root-of-unity abbreviation reads back as the same value
  CHECK(io::cyc_from_json(io::json{{"zeta", {15, 7}}}) == CycNumber::root(15, 7));
  CHECK(io::cyc_from_json(io::json(3)) == CycNumber::from_int(3));
  CHECK(io::cyc_from_json(io::json("-5/2")) ==
        CycNumber::from_rational(rat(-5, 2)));
}

TEST_CASE("table, unit and tree documents round trip") {
  grouprep::CharacterTable t = psl2::character_table(7);
  grouprep::CharacterTable t2 = io::table_from_json(io::to_json(t));
  CHECK(t2.validate().ok());
  CHECK(t2.order == t.order);
  CHECK(t2.exponent == t.exponent);
  REQUIRE(t2.characters.size() == t.characters.size());
  for (size_t c = 0; c < t.characters.size(); ++c)
    for (size_t k = 0; k < t.classes.size(); ++k)
      CHECK(t2.value((int)c, (int)k) == t.value((int)c, (int)k));

  grouprep::UnitCandidate u;
  u.order = 15;
  u.pa[1] = {{"15c", -1}, {"15d", 2}};
  u.pa[3] = {{"5a", 1}};
  u.pa[5] = {{"3a", 1}};
  grouprep::UnitCandidate u2 = io::unit_from_json(io::to_json(u));
  CHECK(u2.order == u.order);
  CHECK(u2.pa == u.pa);

  brauer::BrauerTree tree = psl2::brauer_trees(16, 5).principal;
  brauer::BrauerTree tree2 = io::tree_from_json(io::to_json(tree));
  CHECK(io::to_json(tree2) == io::to_json(tree));
}

TEST_CASE("partition parsing accepts canonical text and rejects disorder") {
  CHECK(io::parse_partition("3,2") == Partition({3, 2}));
  CHECK(io::parse_partition("") == Partition{});
  CHECK_THROWS_AS(io::parse_partition("3,5"), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_partition("2,x"), std::exception);
}
