#include <catch_amalgamated.hpp>

#include "signet/perm_group.hpp"

using namespace signet;

namespace {
Permutation perm(std::vector<int> im) { return Permutation(std::move(im)); }
}  // namespace

TEST_CASE("word action follows the left convention") {
  CHECK(apply_perm_word(Permutation::identity(2), {"p", "q"}) == Word{"p", "q"});
  CHECK(apply_perm_word(perm({1, 0}), {"p", "q"}) == Word{"q", "p"});
  // 0 -> 1 -> 2 -> 0
  CHECK(apply_perm_word(perm({1, 2, 0}), {"a", "b", "c"}) == Word{"c", "a", "b"});
  CHECK_THROWS_AS(apply_perm_word(perm({1, 0}), {"a"}), Error);
}

TEST_CASE("action is compatible with composition for all of S_4") {
  const Word w{"a", "b", "c", "d"};
  const auto all = all_permutations(4);
  for (const auto& s : all)
    for (const auto& t : all) REQUIRE(apply_perm_word(s.compose(t), w) == apply_perm_word(s, apply_perm_word(t, w)));
}

TEST_CASE("permutation ranks are lexicographic and invertible") {
  const auto all = all_permutations(5);
  for (std::size_t i = 0; i < all.size(); ++i) {
    REQUIRE(all[i].rank() == i);
    REQUIRE(Permutation::unrank(5, i) == all[i]);
  }
  const auto& table = SymmetricPairTable::get(3, 2);
  for (std::size_t r = 0; r < table.order(); ++r) {
    REQUIRE(table.elements()[r].rank() == r);
    if (r) REQUIRE(table.elements()[r - 1] < table.elements()[r]);
  }
}

TEST_CASE("group closure") {
  CHECK(group_closure({}, 2, 0).order() == 1);
  const PermPair swap{perm({1, 0}), Permutation::identity(0)};
  CHECK(group_closure({swap}, 2, 0).order() == 2);
  const PermPair a{perm({1, 0, 2}), Permutation::identity(0)};
  const PermPair b{perm({0, 2, 1}), Permutation::identity(0)};
  const auto s3 = group_closure({a, b}, 3, 0);
  CHECK(s3.order() == 6);
  CHECK(std::is_sorted(s3.elements().begin(), s3.elements().end()));
  for (const auto& g : s3.elements()) CHECK(s3.contains(g.inverse()));
  CHECK_THROWS_AS(group_closure({swap}, 3, 0), Error);
}

TEST_CASE("stabilizers and coset representatives") {
  CHECK(stabilizer({"p", "q"}, {}).order() == 1);
  const auto pp = stabilizer({"p", "p"}, {});
  CHECK(pp.order() == 2);
  CHECK(coset_reps(pp).size() == 1);
  CHECK(coset_reps(PermGroup(2, 0)).size() == 2);

  const Word a{"a", "a", "a", "b", "b"}, b{"c", "c", "c", "c"};
  const auto big = stabilizer(a, b);
  CHECK(big.order() == 288);
  for (const auto& g : big.elements()) REQUIRE(apply_pair(g, a, b) == std::pair{a, b});
  const auto reps = coset_reps(big);
  CHECK(reps.size() == 10);
  CHECK(reps.size() * big.order() == factorial(5) * factorial(4));
  for (const auto& r : reps) CHECK(big.coset_min(r) == r);

  CHECK_THROWS_AS(stabilizer(Word(7, "x"), {}), Error);
}

TEST_CASE("coset translates partition the symmetric group") {
  const PermPair g{perm({1, 0, 2}), perm({1, 0})};
  const auto grp = group_closure({g}, 3, 2);
  std::set<PermPair> seen;
  for (const auto& r : coset_reps(grp))
    for (const auto& h : grp.elements()) REQUIRE(seen.insert(r.compose(h)).second);
  CHECK(seen.size() == 12);
}

TEST_CASE("canonical generators regenerate the group") {
  const auto grp = stabilizer({"a", "a", "b", "b"}, {"c", "c"});
  const auto gens = grp.canonical_generators();
  CHECK(gens.size() <= 3);
  CHECK(group_closure(gens, 4, 2) == grp);
}

TEST_CASE("extending place maps") {
  const PlaceMap merge{{"A", "Z"}, {"B", "Z"}};
  CHECK(extend_place_map(merge, Multiset{{"A", 1}, {"B", 1}}) == Multiset{{"Z", 2}});
  const PlaceMap id{{"A", "A"}, {"B", "B"}};
  CHECK(extend_place_map(id, Word{"A", "B", "A"}) == Word{"A", "B", "A"});
  const PlaceMap f{{"A", "B"}, {"B", "B"}, {"C", "C"}};
  CHECK(extend_place_map(f, Word{"A", "B", "A"}) == Word{"B", "B", "B"});
  CHECK_THROWS_AS(extend_place_map(f, Word{"D"}), Error);

  const Word u{"A", "C"}, v{"B"};
  CHECK(extend_place_map(f, concat(u, v)) == concat(extend_place_map(f, u), extend_place_map(f, v)));
  const auto x = Multiset::from_word(u), y = Multiset::from_word(v);
  CHECK(extend_place_map(f, x + y) == extend_place_map(f, x) + extend_place_map(f, y));
}

TEST_CASE("multiset arithmetic") {
  Multiset m{{"a", 2}, {"b", 1}};
  CHECK(m.size() == 3);
  CHECK((m - Multiset{{"a", 2}}) == Multiset{{"b", 1}});
  CHECK_THROWS_AS((m - Multiset{{"c", 1}}), Error);
  CHECK(Multiset{{"a", 1}}.le(m));
  CHECK(m.sorted_word() == Word{"a", "a", "b"});
}
