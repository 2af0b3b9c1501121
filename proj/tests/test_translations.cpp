#include <catch_amalgamated.hpp>

#include "signet/random.hpp"
#include "signet/translations.hpp"
#include "support.hpp"

using namespace signet;
using testing_support::fixture;

namespace {
std::set<std::string> identity_values(const HPreFamilies& h, const SigmaNet& n) {
  std::set<std::string> out;
  for (const auto& c : n.classes) out.insert(h.families.at(c.id).front());
  return out;
}
}  // namespace

TEST_CASE("f_pre") {
  const auto dup = fixture<PreNet>("fix-dup.json");
  const auto s = f_pre(dup);
  REQUIRE(s.classes.size() == 1);
  CHECK(s.classes[0].src == Word{"A", "A"});
  CHECK(s.classes[0].isotropy.order() == 1);
  CHECK(f_pre(PreNet{}).classes.empty());
  CHECK(to_presheaf(s).transitions.size() == 2);
}

TEST_CASE("g_pre") {
  CHECK(g_pre(fixture<SigmaNet>("fix-pp-full.json")).transitions.size() == 1);
  const auto dup = g_pre(f_pre(fixture<PreNet>("fix-dup.json")));
  CHECK(dup.transitions.size() == 2);
  const auto pq = g_pre(fixture<SigmaNet>("fix-pq.json"));
  std::set<std::pair<Word, Word>> types;
  for (const auto& t : pq.transitions) types.insert({t.src, t.tgt});
  CHECK(types == std::set<std::pair<Word, Word>>{{{"p", "q"}, {}}, {{"q", "p"}, {}}});
}

TEST_CASE("h_pre on the XYZ, LONE and DUP nets") {
  const auto xyz = fixture<PreNet>("fix-xyz.json");
  const auto hx = h_pre_families(xyz);
  CHECK(hx.presheaf.transitions.size() == 4);
  const auto gx = h_pre(xyz);
  REQUIRE(gx.classes.size() == 2);
  for (const auto& c : gx.classes) CHECK(c.isotropy.is_trivial());
  std::set<std::set<std::string>> pairs;
  for (const auto& c : gx.classes) {
    const auto& v = hx.families.at(c.id);
    pairs.insert({v.begin(), v.end()});
  }
  CHECK(pairs == std::set<std::set<std::string>>{{"x", "y"}, {"x", "z"}});

  CHECK(h_pre(fixture<PreNet>("fix-lone.json")).classes.empty());

  const auto dup = h_pre(fixture<PreNet>("fix-dup.json"));
  REQUIRE(dup.classes.size() == 1);
  CHECK(dup.classes[0].isotropy.order() == 2);
}

TEST_CASE("h_pre conventions give isomorphic nets") {
  for (std::uint64_t i = 0; i < 40; ++i) {
    auto rng = trial_rng(23, i);
    const auto q = random_prenet(rng);
    const auto d = h_pre(q, FamilyConvention::direct);
    const auto inv = h_pre(q, FamilyConvention::inverse);
    REQUIRE(net_isomorphic(d, inv));
    // Every family sits over the translated words of its identity value.
    const auto fam = h_pre_families(q);
    for (const auto& t : fam.presheaf.transitions) {
      const auto& table = SymmetricPairTable::get(t.src.size(), t.tgt.size());
      const auto& vals = fam.families.at(t.id);
      for (std::size_t r = 0; r < table.order(); ++r) {
        const auto* u = find_by_id(q.transitions, vals[r]);
        REQUIRE(std::pair{u->src, u->tgt} == apply_pair(table.elements()[r], t.src, t.tgt));
      }
    }
  }
}

TEST_CASE("f_pet and g_pet") {
  const auto mixed = f_pet(fixture<SigmaNet>("fix-mixed.json"));
  REQUIRE(mixed.transitions.size() == 2);
  for (const auto& t : mixed.transitions) CHECK(t.src == Multiset{{"p", 2}});
  CHECK(f_pet(SigmaNet{}).transitions.empty());

  const auto g = g_pet(fixture<PetriNet>("fix-32.json"));
  REQUIRE(g.classes.size() == 1);
  CHECK(g.classes[0].src == Word{"a", "a", "a", "b", "b"});
  CHECK(g.classes[0].isotropy.order() == 288);
  CHECK(to_presheaf(g).transitions.size() == 10);

  PetriNet pq{{"p", "q"}, {{"t", Multiset{{"p", 1}}, Multiset{{"q", 1}}}}};
  CHECK(g_pet(pq).classes[0].isotropy.is_trivial());
}

TEST_CASE("erase and saturate") {
  const auto v1 = erase_ordering(fixture<PreNet>("v1.json"));
  const auto v2 = erase_ordering(fixture<PreNet>("v2.json"));
  CHECK(v1 == v2);
  CHECK(v1.transitions[0].src == Multiset{{"A", 2}, {"B", 1}});
  CHECK(saturate_orderings(fixture<PetriNet>("fix-32.json")).transitions.size() == 10);
  for (std::uint64_t i = 0; i < 30; ++i) {
    auto rng = trial_rng(29, i);
    const auto q = random_prenet(rng);
    REQUIRE(erase_ordering(q) == f_pet(f_pre(q)));
    const auto p = random_petri(rng);
    REQUIRE(net_isomorphic(saturate_orderings(p), g_pre(g_pet(p))));
    const auto twice = erase_ordering(saturate_orderings(p));
    std::size_t expected = 0;
    for (const auto& t : p.transitions)
      expected += coset_reps(stabilizer(t.src.sorted_word(), t.tgt.sorted_word())).size();
    REQUIRE(twice.transitions.size() == expected);
  }
}

TEST_CASE("z1 and z2") {
  const auto xyz = z1(fixture<PreNet>("fix-xyz.json"));
  CHECK(xyz.inputs.size() == 6);
  CHECK(xyz.outputs.size() == 3);
  const auto dup = z1(fixture<PreNet>("fix-dup.json"));
  for (const auto& p : dup.inputs) CHECK(p.place == "A");
  CHECK(z1(PreNet{}).transitions.empty());

  CHECK(net_isomorphic(z2(dup), f_pre(fixture<PreNet>("fix-dup.json"))));
  WholeGrainNet one{{"A"}, {"t"}, {{"i0", "A", "t"}, {"i1", "A", "t"}}, {}};
  const auto p = detail::z2_presheaf(one, default_limits());
  REQUIRE(p.transitions.size() == 2);
  CHECK(p.transitions[0].src_swaps[0] == p.transitions[1].id);
  CHECK(z2(WholeGrainNet{}).classes.empty());
}

TEST_CASE("translations preserve identities and composites") {
  for (std::uint64_t i = 0; i < 40; ++i) {
    auto rng = trial_rng(31, i);
    RandomNetOptions o;
    o.max_word = 2;
    const auto q1 = random_prenet(rng, o);
    const auto q2 = push_forward(rng, q1, random_place_merge(rng, q1.places), o);
    const auto q3 = push_forward(rng, q2, random_place_merge(rng, q2.places), o);
    const auto h12 = hom_set(q1, q2), h23 = hom_set(q2, q3);
    REQUIRE_FALSE(h12.empty());
    REQUIRE_FALSE(h23.empty());
    const auto& a = h12.front();
    const auto& b = h23.back();
    const auto ab = compose(b, a);

    REQUIRE(f_pre(identity_morphism(q1), q1, q1) == identity_morphism(f_pre(q1)));
    REQUIRE(f_pre(ab, q1, q3) == compose(f_pre(b, q2, q3), f_pre(a, q1, q2), f_pre(q3)));

    const auto h1 = h_pre(q1), h2 = h_pre(q2), h3 = h_pre(q3);
    REQUIRE(h_pre(identity_morphism(q1), q1, q1) == identity_morphism(h1));
    const auto hab = h_pre(ab, q1, q3);
    REQUIRE(validate_morphism(hab, h1, h3).empty());
    REQUIRE(hab == compose(h_pre(b, q2, q3), h_pre(a, q1, q2), h3));

    const auto w1 = z1(q1), w2 = z1(q2), w3 = z1(q3);
    REQUIRE(validate_morphism(z1(a, q1, q2), w1, w2).empty());
    REQUIRE(z1(ab, q1, q3) == compose(z1(b, q2, q3), z1(a, q1, q2)));
    const auto za = z2(z1(a, q1, q2), w1, w2);
    REQUIRE(validate_morphism(za, z2(w1), z2(w2)).empty());
    REQUIRE(z2(identity_morphism(w1), w1, w1) == identity_morphism(z2(w1)));
    REQUIRE(z2(z1(ab, q1, q3), w1, w3) == compose(z2(z1(b, q2, q3), w2, w3), za, z2(w3)));

    // Σ-side functors.
    const auto s1 = random_sigma(rng, o);
    const auto s2 = push_forward(rng, s1, random_place_merge(rng, s1.places), o);
    const auto s3 = push_forward(rng, s2, random_place_merge(rng, s2.places), o);
    const auto k12 = hom_set(s1, s2), k23 = hom_set(s2, s3);
    REQUIRE_FALSE(k12.empty());
    REQUIRE_FALSE(k23.empty());
    const auto& c = k12.back();
    const auto& d = k23.front();
    const auto cd = compose(d, c, s3);
    REQUIRE(g_pre(identity_morphism(s1), s1, s1) == identity_morphism(g_pre(s1)));
    REQUIRE(validate_morphism(g_pre(c, s1, s2), g_pre(s1), g_pre(s2)).empty());
    REQUIRE(g_pre(cd, s1, s3) == compose(g_pre(d, s2, s3), g_pre(c, s1, s2)));
    REQUIRE(validate_morphism(f_pet(c, s1, s2), f_pet(s1), f_pet(s2)).empty());
    REQUIRE(f_pet(cd, s1, s3) == compose(f_pet(d, s2, s3), f_pet(c, s1, s2)));

    const auto p1 = random_petri(rng, o);
    const auto p2 = push_forward(rng, p1, random_place_merge(rng, p1.places), o);
    const auto p3 = push_forward(rng, p2, random_place_merge(rng, p2.places), o);
    const auto m12 = hom_set(p1, p2), m23 = hom_set(p2, p3);
    const auto& e = m12.front();
    const auto& f = m23.back();
    REQUIRE(g_pet(identity_morphism(p1), p1, p1) == identity_morphism(g_pet(p1)));
    REQUIRE(validate_morphism(g_pet(e, p1, p2), g_pet(p1), g_pet(p2)).empty());
    REQUIRE(g_pet(compose(f, e), p1, p3) == compose(g_pet(f, p2, p3), g_pet(e, p1, p2), g_pet(p3)));
  }
}

TEST_CASE("no repeated places means trivial isotropy after g_pet") {
  for (std::uint64_t i = 0; i < 40; ++i) {
    auto rng = trial_rng(37, i);
    const auto q = random_prenet(rng);
    bool repeats = false;
    for (const auto& t : q.transitions) {
      repeats |= std::set<PlaceId>(t.src.begin(), t.src.end()).size() != t.src.size();
      repeats |= std::set<PlaceId>(t.tgt.begin(), t.tgt.end()).size() != t.tgt.size();
    }
    if (repeats) continue;
    for (const auto& c : g_pet(erase_ordering(q)).classes) REQUIRE(c.isotropy.is_trivial());
    REQUIRE(net_isomorphic(g_pet(erase_ordering(q)), f_pre(q)));
  }
}
