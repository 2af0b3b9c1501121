#include <catch_amalgamated.hpp>

#include "signet/freecat.hpp"
#include "signet/random.hpp"
#include "signet/translations.hpp"
#include "support.hpp"

using namespace signet;
using testing_support::fixture;
using testing_support::fixture_path;

namespace {

Term gen(const std::string& g) { return Term::generator(g); }
Term id(Word w) { return Term::identity(std::move(w)); }
Term comp(Term a, Term b) { return Term::comp(std::move(a), std::move(b)); }
Term tensor(Term a, Term b) { return Term::tensor(std::move(a), std::move(b)); }
Term swap2(Word w) { return Term::symmetry(Permutation({1, 0}), std::move(w)); }

PreNet endo_net() {
  return canonical(PreNet{{"p"}, {{"w", {"p"}, {"p"}}}});
}

PetriNet endo_petri() { return erase_ordering(endo_net()); }

// Random term starting at word w, built from whiskered generator steps,
// symmetries, identities and tensor splits.
Term random_from(Rng& rng, const Presentation& p, const Word& w, int depth) {
  const auto choice = rng() % 5;
  if (depth > 0 && choice == 0 && w.size() >= 2) {
    const auto k = 1 + rng() % (w.size() - 1);
    return tensor(random_from(rng, p, Word(w.begin(), w.begin() + static_cast<long>(k)), depth - 1),
                  random_from(rng, p, Word(w.begin() + static_cast<long>(k), w.end()), depth - 1));
  }
  if (depth > 0 && choice == 1) {
    auto first = random_from(rng, p, w, depth - 1);
    const auto mid = typecheck(first, p).tgt;
    return comp(std::move(first), random_from(rng, p, mid, depth - 1));
  }
  if (choice == 2 && p.flavor == Flavor::ssmc && w.size() >= 2) {
    auto perms = all_permutations(w.size());
    return Term::symmetry(perms[rng() % perms.size()], w);
  }
  const auto steps = p.flavor == Flavor::ssmc ? detail::steps_ssmc(p, w) : detail::steps_strmc(p, w);
  if (choice <= 3 && !steps.empty()) return steps[rng() % steps.size()].first;
  return id(w);
}

Presentation small_ssmc(Rng& rng) {
  RandomNetOptions o;
  o.max_word = 2;
  auto q = random_prenet(rng, o);
  q.transitions.push_back({"e", {q.places.front()}, {q.places.front()}});
  return present_free(canonical(q), Flavor::ssmc);
}

Word random_word_over(Rng& rng, const Presentation& p, std::size_t max_len) {
  return random_word(rng, p.places, max_len);
}

}  // namespace

TEST_CASE("present_free") {
  const auto intro = present_free(fixture<PetriNet>("fix-intro.json"), Flavor::cmc);
  CHECK(intro.generators.size() == 2);
  CHECK(intro.relations.empty());

  const auto pp = present_free(fixture<SigmaNet>("fix-pp-full.json"), Flavor::ssmc);
  REQUIRE(pp.generators.size() == 1);
  CHECK(pp.generators[0].src == Word{"p", "p"});
  CHECK(pp.generators[0].tgt.empty());
  REQUIRE(pp.relations.size() == 1);
  CHECK(equiv(pp.relations[0].lhs, gen("t"), pp).verdict == Verdict::equal);
  CHECK(equiv(pp.relations[0].rhs, comp(swap2({"p", "p"}), gen("t")), pp).verdict == Verdict::equal);

  const auto dup = fixture<PreNet>("fix-dup.json");
  CHECK(present_free(f_pre(dup), Flavor::ssmc) == present_free(dup, Flavor::ssmc));

  CHECK_THROWS_AS(present_free(dup, Flavor::cmc), Error);
  CHECK_THROWS_AS(present_free(fixture<PetriNet>("fix-intro.json"), Flavor::ssmc), Error);
  CHECK_THROWS_AS(present_free(fixture<SigmaNet>("fix-pq.json"), Flavor::strmc), Error);
}

TEST_CASE("typecheck") {
  const auto p = present_free(fixture<PetriNet>("fix-intro.json"), Flavor::cmc);
  const auto t1 = typecheck(gen("tau1"), p);
  CHECK(as_marking(t1.src) == Multiset{{"a", 1}, {"b", 1}});
  CHECK(as_marking(t1.tgt) == Multiset{{"c", 1}});
  const auto t12 = typecheck(comp(gen("tau1"), gen("tau2")), p);
  CHECK(as_marking(t12.src) == Multiset{{"a", 1}, {"b", 1}});
  CHECK(as_marking(t12.tgt) == Multiset{{"b", 2}});
  CHECK_THROWS_AS(typecheck(comp(gen("tau2"), gen("tau1")), p), Error);
  CHECK_THROWS_AS(typecheck(gen("nope"), p), Error);
  CHECK_THROWS_AS(typecheck(swap2({"a", "b"}), p), Error);
  // Multiset equality of objects in CMC.
  CHECK_NOTHROW(typecheck(comp(id({"b", "a"}), gen("tau1")), p));
  const auto s = present_free(fixture<PreNet>("fix-xyz.json"), Flavor::strmc);
  CHECK_THROWS_AS(typecheck(comp(id({"B", "A"}), gen("x")), s), Error);
}

TEST_CASE("diagrams") {
  const auto pq = fixture<SigmaNet>("fix-pq.json");
  const auto p = present_free(pq, Flavor::ssmc);
  const auto d = to_diagram(id({"p", "q"}), p);
  CHECK(d.nodes.empty());
  CHECK(d.outputs.size() == 2);

  // The other element of the class, (q,p) → ε, is t1 behind a swap.
  const auto u = comp(swap2({"q", "p"}), gen("t1"));
  CHECK(equiv(comp(swap2({"p", "q"}), u), gen("t1"), p).verdict == Verdict::equal);

  // Crossed versus uncrossed pairing of a creator and a consumer.
  const auto net = canonical(PreNet{{"A"}, {{"u", {}, {"A", "A"}}, {"h", {"A", "A"}, {}}}});
  const auto s = present_free(net, Flavor::ssmc);
  CHECK(equiv(comp(gen("u"), gen("h")), comp(gen("u"), comp(swap2({"A", "A"}), gen("h"))), s).verdict ==
        Verdict::distinct);
  CHECK(equiv(comp(gen("u"), gen("h")), comp(gen("u"), gen("h")), s).verdict == Verdict::equal);
  CHECK_THROWS_AS(to_diagram(gen("tau1"), present_free(fixture<PetriNet>("fix-intro.json"), Flavor::cmc)), Error);
}

TEST_CASE("equiv: the collapse law") {
  const auto f = gen("w");
  const auto lhs = tensor(f, f);
  const auto rhs = tensor(id({"p"}), comp(f, f));
  const auto c = present_free(endo_petri(), Flavor::cmc);
  CHECK(equiv(lhs, rhs, c).verdict == Verdict::equal);
  const auto s = present_free(f_pre(endo_net()), Flavor::ssmc);
  CHECK(equiv(lhs, rhs, s).verdict == Verdict::distinct);
  // Types differ: reported as Distinct with a reason.
  const auto r = equiv(f, tensor(f, f), c);
  CHECK(r.verdict == Verdict::distinct);
  CHECK_FALSE(r.reason.empty());
  CHECK(equiv(gen("nope"), f, c).verdict == Verdict::distinct);
}

TEST_CASE("equiv: isotropy") {
  const auto full = present_free(fixture<SigmaNet>("fix-pp-full.json"), Flavor::ssmc);
  CHECK(equiv(gen("t"), comp(swap2({"p", "p"}), gen("t")), full).verdict == Verdict::equal);
  const auto free = present_free(f_pre(fixture<PreNet>("fix-dup.json")), Flavor::ssmc);
  CHECK(equiv(gen("d"), comp(swap2({"A", "A"}), gen("d")), free).verdict == Verdict::distinct);
  const auto mixed = present_free(fixture<SigmaNet>("fix-mixed.json"), Flavor::ssmc);
  CHECK(equiv(gen("t1"), comp(swap2({"p", "p"}), gen("t1")), mixed).verdict == Verdict::distinct);
  CHECK(equiv(gen("u"), comp(swap2({"p", "p"}), gen("u")), mixed).verdict == Verdict::equal);
}

TEST_CASE("enumerate_homs") {
  const auto intro = present_free(fixture<PetriNet>("fix-intro.json"), Flavor::cmc);
  const auto w1 = enumerate_homs(intro, {"a", "b"}, {"c"}, 1);
  REQUIRE(w1.classes.size() == 1);
  CHECK(w1.classes[0].representative == gen("tau1"));
  CHECK(w1.decided());
  const auto w2 = enumerate_homs(intro, {"a", "b"}, {"b", "b"}, 2);
  CHECK(w2.classes.size() == 1);
  const auto w0 = enumerate_homs(intro, {"a", "b"}, {"a", "b"}, 0);
  REQUIRE(w0.classes.size() == 1);
  CHECK(w0.classes[0].representative == id({"a", "b"}));

  const auto pq = present_free(fixture<SigmaNet>("fix-pq.json"), Flavor::ssmc);
  const auto id_pq = enumerate_homs(pq, {"p", "q"}, {"p", "q"}, 0);
  REQUIRE(id_pq.classes.size() == 1);
  CHECK(id_pq.classes[0].representative == id({"p", "q"}));

  const auto full = present_free(fixture<SigmaNet>("fix-pp-full.json"), Flavor::ssmc);
  CHECK(enumerate_homs(full, {"p", "p"}, {}, 1).classes.size() == 1);
  const auto free = present_free(f_pre(fixture<PreNet>("fix-dup.json")), Flavor::ssmc);
  CHECK(enumerate_homs(free, {"A", "A"}, {"C"}, 1).classes.size() == 2);

  const auto strmc = present_free(fixture<PreNet>("fix-xyz.json"), Flavor::strmc);
  CHECK(enumerate_homs(strmc, {"A", "B"}, {"C"}, 1).classes.size() == 1);
  CHECK(enumerate_homs(strmc, {"B", "A"}, {"C"}, 1).classes.size() == 2);
}

TEST_CASE("reachable") {
  const auto intro = fixture<PetriNet>("fix-intro.json");
  const auto s1 = reachable(intro, {{"a", 1}, {"b", 1}, {"c", 1}}, {{"c", 2}}, 5);
  REQUIRE(s1);
  CHECK(*s1 == std::vector<TransitionId>{"tau1"});
  const auto s2 = reachable(intro, {{"c", 2}}, {{"b", 2}, {"c", 1}}, 5);
  REQUIRE(s2);
  CHECK(*s2 == std::vector<TransitionId>{"tau2"});
  const auto s12 = reachable(intro, {{"a", 1}, {"b", 1}, {"c", 1}}, {{"b", 2}, {"c", 1}}, 5);
  REQUIRE(s12);
  CHECK(*s12 == std::vector<TransitionId>{"tau1", "tau2"});
  CHECK_FALSE(reachable(intro, {{"a", 1}}, {{"c", 1}}, 50));
  CHECK(reachable(intro, {{"a", 1}}, {{"a", 1}}, 0));
}

TEST_CASE("finite commutative monoidal targets") {
  const auto z2 = parse_fincmc(read_json_file(fixture_path("fincmc-z2-discrete.json")));
  const auto z3 = parse_fincmc(read_json_file(fixture_path("fincmc-z3.json")));
  CHECK(verify_fincmc(z2).empty());
  CHECK(verify_fincmc(z3).empty());
  CHECK(parse_fincmc(to_json(z2)).objects == z2.objects);

  const auto intro = fixture<PetriNet>("fix-intro.json");
  // a,b,c ↦ 1,0,0: τ1 needs hom(1,0), which is empty.
  const auto bad = eval_into_fincmc(intro, z2, {{"a", "1"}, {"b", "0"}, {"c", "0"}}, {{"tau1", "id0"}, {"tau2", "id0"}});
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].find("tau1") != std::string::npos);
  // a,b,c ↦ 1,1,0 lands both transitions in hom(0,0).
  CHECK(eval_into_fincmc(intro, z2, {{"a", "1"}, {"b", "1"}, {"c", "0"}}, {{"tau1", "id0"}, {"tau2", "id0"}}).empty());
  CHECK(eval_into_fincmc(intro, z2, {{"a", "0"}, {"b", "0"}, {"c", "0"}}, {{"tau1", "id0"}, {"tau2", "id0"}}).empty());
  CHECK(eval_into_fincmc(PetriNet{}, z2, {}, {}).empty());
  CHECK(eval_into_fincmc(intro, z3, {{"a", "*"}, {"b", "*"}, {"c", "*"}}, {{"tau1", "g"}, {"tau2", "gg"}}).empty());
  CHECK(first_assignment(intro, z2, {{"a", "1"}, {"b", "0"}, {"c", "0"}}).count("tau1") == 0);

  auto broken = z3;
  broken.compose["g"]["g"] = "e";
  CHECK_FALSE(verify_fincmc(broken).empty());
}

TEST_CASE("term JSON round trip") {
  const auto t = comp(tensor(swap2({"a", "b"}), id({"c"})), tensor(gen("x"), gen("y")));
  CHECK(parse_term(to_json(t)) == t);
  CHECK(parse_term(json::parse(R"(["comp", ["gen","a"], ["gen","b"], ["gen","c"]])")) ==
        comp(comp(gen("a"), gen("b")), gen("c")));
  CHECK_THROWS_AS(parse_term(json::parse(R"(["bogus"])")), Error);
  CHECK_THROWS_AS(parse_term(json::parse(R"(["sym", [0,0], ["a","b"]])")), Error);
}

TEST_CASE("diagram equality is invariant under the monoidal axioms", "[property]") {
  for (std::uint64_t i = 0; i < 60; ++i) {
    auto rng = trial_rng(23, i);
    const auto p = small_ssmc(rng);
    const auto a = random_word_over(rng, p, 3);
    const auto f = random_from(rng, p, a, 2);
    const auto b = typecheck(f, p).tgt;
    const auto g = random_from(rng, p, b, 2);
    const auto c = typecheck(g, p).tgt;
    const auto h = random_from(rng, p, c, 2);
    const auto a2 = random_word_over(rng, p, 2);
    const auto f2 = random_from(rng, p, a2, 2);
    const auto b2 = typecheck(f2, p).tgt;
    const auto g2 = random_from(rng, p, b2, 2);
    auto eq = [&](const Term& x, const Term& y) { return equiv(x, y, p).verdict == Verdict::equal; };
    INFO(to_string(f) << " / " << to_string(g) << " / " << to_string(f2));

    CHECK(eq(comp(id(a), f), f));
    CHECK(eq(comp(f, id(b)), f));
    CHECK(eq(tensor(f, id({})), f));
    CHECK(eq(comp(comp(f, g), h), comp(f, comp(g, h))));
    CHECK(eq(tensor(tensor(f, g2), h), tensor(f, tensor(g2, h))));
    CHECK(eq(tensor(comp(f, g), comp(f2, g2)), comp(tensor(f, f2), tensor(g, g2))));
    CHECK(eq(tensor(id(a), id(a2)), id(concat(a, a2))));

    // Naturality of the block swap and its involutivity.
    auto block_swap = [](const Word& x, const Word& y) {
      std::vector<int> im(x.size() + y.size());
      for (std::size_t k = 0; k < x.size(); ++k) im[k] = static_cast<int>(y.size() + k);
      for (std::size_t k = 0; k < y.size(); ++k) im[x.size() + k] = static_cast<int>(k);
      return Term::symmetry(Permutation(im), concat(x, y));
    };
    const auto c2 = typecheck(f2, p).tgt;
    CHECK(eq(comp(tensor(f, f2), block_swap(b, c2)), comp(block_swap(a, a2), tensor(f2, f))));
    CHECK(eq(comp(block_swap(a, a2), block_swap(a2, a)), id(concat(a, a2))));

    // Congruence: equal terms stay equal in a context.
    const auto ctx = random_from(rng, p, typecheck(h, p).tgt, 1);
    CHECK(eq(comp(comp(comp(f, g), h), ctx), comp(comp(f, comp(g, h)), ctx)));
    CHECK(eq(tensor(f2, comp(id(a), f)), tensor(f2, f)));
  }
}

TEST_CASE("CMC closure finds axiom instances", "[property]") {
  std::size_t decided = 0, total = 0;
  for (std::uint64_t i = 0; i < 40; ++i) {
    auto rng = trial_rng(31, i);
    const auto ssmc = small_ssmc(rng);
    const auto p = collapse_to_cmc(ssmc);
    const auto a = random_word_over(rng, ssmc, 2);
    const auto f = random_from(rng, ssmc, a, 1);
    const auto b = typecheck(f, ssmc).tgt;
    const auto g = random_from(rng, ssmc, b, 1);
    const auto a2 = random_word_over(rng, ssmc, 2);
    const auto f2 = random_from(rng, ssmc, a2, 1);
    const auto b2 = typecheck(f2, ssmc).tgt;
    const auto g2 = random_from(rng, ssmc, b2, 1);
    // Strip symmetries by collapsing through the CMC normal form.
    auto cm = [&](const Term& t) { return cmc::to_term(cmc::normalize(t, p)); };
    const auto lhs = tensor(comp(cm(f), cm(g)), comp(cm(f2), cm(g2)));
    const auto rhs = comp(tensor(cm(f), cm(f2)), tensor(cm(g), cm(g2)));
    const auto v = equiv(lhs, rhs, p).verdict;
    CHECK(v != Verdict::distinct);
    ++total;
    if (v == Verdict::equal) ++decided;
    CHECK(equiv(tensor(cm(f), cm(f2)), tensor(cm(f2), cm(f)), p).verdict == Verdict::equal);
  }
  CHECK(decided == total);
}

TEST_CASE("free CMC hom nonemptiness matches reachability", "[property]") {
  for (std::uint64_t i = 0; i < 60; ++i) {
    auto rng = trial_rng(41, i);
    RandomNetOptions o;
    o.max_word = 2;
    const auto n = random_petri(rng, o);
    const auto p = present_free(n, Flavor::cmc);
    const auto x = random_word(rng, n.places, 3);
    const auto y = random_word(rng, n.places, 3);
    const std::size_t bound = rng() % 4 + 1;
    const auto w = enumerate_homs(p, x, y, bound);
    const auto r = reachable(n, Multiset::from_word(x), Multiset::from_word(y), bound);
    CHECK(w.classes.empty() == !r.has_value());
  }
}
