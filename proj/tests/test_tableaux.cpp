#include <doctest.h>

#include "blockunits/tableaux.hpp"
#include "oracles.hpp"

using namespace blockunits;
using namespace blockunits::tableaux;

namespace {

Partition P(std::vector<int> v) { return Partition(std::move(v)); }

SkewTableau make_tab(Partition outer, Partition inner, std::vector<int> entries) {
  SkewTableau t;
  t.shape = {std::move(outer), std::move(inner)};
  t.entries = std::move(entries);
  return t;
}

std::vector<Partition> all_partitions_up_to(int maxn, int maxpart) {
  std::vector<Partition> out;
  for (int n = 0; n <= maxn; ++n)
    for (const Partition& p : partitions_of(n, maxpart)) out.push_back(p);
  return out;
}

}  // namespace

TEST_CASE("semistandard predicate") {
  CHECK(is_semistandard(make_tab(P({2}), P({}), {1, 1})));
  CHECK_FALSE(is_semistandard(make_tab(P({1, 1}), P({}), {1, 1})));
  CHECK(is_semistandard(make_tab(P({2, 1}), P({1}), {1, 2})));
  CHECK_FALSE(is_semistandard(make_tab(P({2}), P({}), {2, 1})));
}

TEST_CASE("lattice property") {
  CHECK_FALSE(has_lattice_property(make_tab(P({2}), P({}), {1, 2})));
  CHECK(has_lattice_property(make_tab(P({2, 1}), P({1}), {1, 2})));
  CHECK(has_lattice_property(make_tab(P({3, 2}), P({}), {1, 1, 1, 1, 1})));
}

TEST_CASE("content") {
  CHECK(content(make_tab(P({4}), P({}), {1, 1, 1, 1})) == P({4}));
  CHECK(content(make_tab(P({3, 2}), P({1}), {1, 1, 1, 2})) == P({3, 1}));
  CHECK(content(make_tab(P({}), P({}), {})) == P({}));
  CHECK_THROWS_AS(content(make_tab(P({2}), P({}), {1, 2})),
                  std::invalid_argument);
}

TEST_CASE("lr existence examples") {
  CHECK(lr_exists(P({3, 2}), P({1}), P({3, 1})));
  CHECK(lr_exists(P({3, 2}), P({3, 2}), P({})));
  CHECK(lr_exists(P({4, 1}), P({4, 1}), P({})));
  CHECK_FALSE(lr_exists(P({2}), P({}), P({1, 1})));
  CHECK_FALSE(lr_exists(P({1, 1, 1}), P({}), P({3})));
}

TEST_CASE("filling enumeration examples") {
  CHECK(enumerate_fillings({P({2, 1}), P({1})}, P({1, 1})).size() == 1);
  CHECK(enumerate_fillings({P({2}), P({})}, P({2})).size() == 1);
  CHECK(enumerate_fillings({P({2}), P({})}, P({1, 1})).empty());
  for (const SkewTableau& t : enumerate_fillings({P({4, 3, 1}), P({2})}, P({3, 2, 1}))) {
    CHECK(is_semistandard(t));
    CHECK(has_lattice_property(t));
    CHECK(content(t) == P({3, 2, 1}));
  }
}

TEST_CASE("filtration examples") {
  CHECK(filtration_exists(P({3, 2}), {P({1}), P({3, 1})}));
  CHECK(filtration_exists(P({3}), {P({1}), P({1}), P({1})}));
  CHECK_FALSE(filtration_exists(P({1, 1, 1}), {P({3})}));
  CHECK_FALSE(filtration_exists(P({2}), {P({1}), P({2})}));
  // factors of size zero change nothing
  CHECK(filtration_exists(P({3, 2}), {P({}), P({1}), P({3, 1})}));
}

TEST_CASE("gamma statistic") {
  CHECK(gamma(P({3, 2, 2, 1}), 2) == 3);
  CHECK(gamma(P({3, 2, 2, 1}), 4) == 0);
  CHECK(gamma(P({3, 2, 2, 1}), 1) == 4);
}

TEST_CASE("lr agrees with the brute-force oracle on small shapes") {
  for (const Partition& outer : all_partitions_up_to(6, 6)) {
    for (const Partition& inner : oracle::subpartitions(outer, 0)) (void)inner;
    for (int isz = 0; isz <= outer.boxes(); ++isz) {
      for (const Partition& inner : oracle::subpartitions(outer, isz)) {
        for (const Partition& nu :
             partitions_of(outer.boxes() - inner.boxes(), 8)) {
          bool mine = lr_exists(outer, inner, nu);
          bool ref = oracle::lr_exists(outer, inner, nu);
          CAPTURE(outer.to_string());
          CAPTURE(inner.to_string());
          CAPTURE(nu.to_string());
          CHECK(mine == ref);
          CHECK(mine == !enumerate_fillings({outer, inner}, nu).empty());
        }
      }
    }
  }
}

TEST_CASE("enumeration count matches the oracle") {
  for (const Partition& outer : all_partitions_up_to(6, 6))
    for (int isz = 0; isz <= outer.boxes(); ++isz)
      for (const Partition& inner : oracle::subpartitions(outer, isz))
        for (const Partition& nu :
             partitions_of(outer.boxes() - inner.boxes(), 8))
          CHECK((long long)enumerate_fillings({outer, inner}, nu).size() ==
                oracle::count_fillings(outer, inner, nu));
}

TEST_CASE("lr symmetry in inner and content") {
  for (const Partition& lam : all_partitions_up_to(7, 7))
    for (int isz = 0; isz <= lam.boxes(); ++isz)
      for (const Partition& mu : oracle::subpartitions(lam, isz))
        for (const Partition& nu : partitions_of(lam.boxes() - mu.boxes(), 7))
          CHECK(lr_exists(lam, mu, nu) == lr_exists(lam, nu, mu));
}

TEST_CASE("filtration is invariant under factor permutation") {
  std::vector<std::vector<Partition>> factor_lists = {
      {P({2}), P({1, 1}), P({1})},
      {P({3, 1}), P({2})},
      {P({2, 2}), P({2}), P({1})},
      {P({1}), P({1}), P({4})},
      {P({3}), P({3})},
  };
  for (const auto& factors : factor_lists) {
    int total = 0;
    for (const Partition& f : factors) total += f.boxes();
    for (const Partition& tot : partitions_of(total, 5)) {
      bool base = filtration_exists(tot, factors);
      std::vector<Partition> perm = factors;
      std::sort(perm.begin(), perm.end());
      do {
        CHECK(filtration_exists(tot, perm) == base);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
}

TEST_CASE("filtration agrees with the ordered brute-force chain oracle") {
  std::vector<std::vector<Partition>> factor_lists = {
      {P({2, 1}), P({2})},
      {P({1, 1}), P({2}), P({1})},
      {P({4}), P({2, 1})},
  };
  for (const auto& factors : factor_lists) {
    int total = 0;
    for (const Partition& f : factors) total += f.boxes();
    for (const Partition& tot : partitions_of(total, 5))
      CHECK(filtration_exists(tot, factors) ==
            oracle::filtration_exists(tot, factors));
  }
}

TEST_CASE("partition canonical form and order") {
  CHECK(Partition({0, 2, 3}) == P({3, 2}));
  CHECK_THROWS_AS(Partition({-1}), std::invalid_argument);
  CHECK(Partition::rectangle(3, 2) == P({2, 2, 2}));
  CHECK(Partition::rectangle(0, 5) == P({}));
  CHECK(P({2, 1}) < P({3, 1}));   // descending-lex within equal size
  CHECK(P({3}) < P({2, 2}));
  CHECK(P({1}) < P({3}));         // fewer boxes first
}
