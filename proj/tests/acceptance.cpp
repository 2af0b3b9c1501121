// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "signet/adjunction.hpp"
#include "signet/freecat.hpp"
#include "signet/open.hpp"
#include "signet/squares.hpp"

using namespace signet;

namespace {

// Sample sizes and thresholds.
constexpr std::size_t kCountingNets = 200;
constexpr std::size_t kAdjunctionTrials = 100;
constexpr std::size_t kReflectionNets = 100;
constexpr std::size_t kWholeGrainPrenets = 100;
constexpr std::size_t kWholeGrainPairs = 50;
constexpr std::size_t kWholeGrainNets = 50;
constexpr std::size_t kEndoInstances = 20;
constexpr std::size_t kOpenFamilies = 50;
constexpr std::size_t kOpenMapTrials = 50;
constexpr std::size_t kSquarePrenets = 100;
constexpr std::size_t kSquarePetri = 20;
constexpr std::size_t kSquareMaxGens = 2;
constexpr double kMinDecidedFraction = 0.90;
constexpr double kMinAgreementFraction = 1.0;
constexpr std::size_t kReachInstances = 100;
constexpr std::size_t kReachMaxBound = 4;
constexpr std::size_t kRoundTripNets = 200;

const std::string kFixtures = SIGNET_FIXTURE_DIR;

template <class Net>
Net fixture(const std::string& name) {
  return load_net_as<Net>(kFixtures + "/" + name);
}

template <class Net>
OpenNet<Net> open_fixture(const std::string& name) {
  return open_from_json<Net>(read_json_file(kFixtures + "/" + name));
}

struct Result {
  bool pass = true;
  std::string detail;
};

// Records the first failure message and keeps going.
struct Check {
  Result r;
  void expect(bool ok, const std::string& what) {
    if (!ok && r.pass) {
      r.pass = false;
      r.detail = what;
    }
  }
};

Term gen(const std::string& g) { return Term::generator(g); }

// ---------------------------------------------------------------------------

Result c1_counting() {
  Check c;
  std::size_t classes = 0;
  for (std::size_t i = 0; i < kCountingNets; ++i) {
    auto rng = trial_rng(101, i);
    const auto n = random_sigma(rng);
    const auto pre = to_presheaf(n);
    std::map<std::string, std::size_t> per_class;
    for (const auto& t : pre.transitions) ++per_class[t.id.substr(0, t.id.find('#'))];
    for (const auto& cl : n.classes) {
      ++classes;
      c.expect(per_class[cl.id] * cl.isotropy.order() == factorial(cl.src.size()) * factorial(cl.tgt.size()),
               "net " + std::to_string(i) + " class " + cl.id);
    }
  }
  if (c.r.pass) c.r.detail = std::to_string(kCountingNets) + " nets, " + std::to_string(classes) + " classes";
  return c.r;
}

Result c2_h_pre() {
  Check c;
  const auto xyz = fixture<PreNet>("fix-xyz.json");
  const auto fam = h_pre_families(xyz);
  const auto hx = h_pre(xyz);
  c.expect(hx.classes.size() == 2, "h_pre(FIX-XYZ) class count");
  std::set<std::set<std::string>> evals;
  for (const auto& cl : hx.classes) {
    c.expect(cl.isotropy.is_trivial(), "h_pre(FIX-XYZ) isotropy");
    const auto& v = fam.families.at(cl.id);
    evals.insert({v.begin(), v.end()});
  }
  c.expect(evals == std::set<std::set<std::string>>{{"x", "y"}, {"x", "z"}}, "h_pre(FIX-XYZ) evaluations");
  c.expect(h_pre(fixture<PreNet>("fix-lone.json")).classes.empty(), "h_pre(FIX-LONE)");
  const auto dup = h_pre(fixture<PreNet>("fix-dup.json"));
  c.expect(dup.classes.size() == 1 && dup.classes[0].isotropy.order() == 2, "h_pre(FIX-DUP)");
  if (c.r.pass) c.r.detail = "XYZ: 2 classes {x,y},{x,z}; LONE: 0; DUP: 1 class, |G|=2";
  return c.r;
}

Result c3_g_pre() {
  Check c;
  c.expect(g_pre(fixture<SigmaNet>("fix-pp-full.json")).transitions.size() == 1, "g_pre(FIX-PP-FULL)");
  c.expect(g_pre(f_pre(fixture<PreNet>("fix-dup.json"))).transitions.size() == 2, "g_pre(f_pre(FIX-DUP))");
  std::multiset<std::pair<Word, Word>> types;
  for (const auto& t : g_pre(fixture<SigmaNet>("fix-pq.json")).transitions) types.insert({t.src, t.tgt});
  c.expect(types == std::multiset<std::pair<Word, Word>>{{{"p", "q"}, {}}, {{"q", "p"}, {}}}, "g_pre(FIX-PQ)");
  if (c.r.pass) c.r.detail = "1, 2, {(p,q)->e, (q,p)->e}";
  return c.r;
}

Result c4_adjunctions() {
  Check c;
  std::ostringstream d;
  for (auto pair : {AdjunctionPair::f_pre_g_pre, AdjunctionPair::g_pre_h_pre, AdjunctionPair::f_pet_g_pet}) {
    const auto s = run_adjunction_trials(pair, kAdjunctionTrials, 2024);
    c.expect(s.ok(), to_string(pair) + " trial " + (s.ok() ? "" : std::to_string(s.failures.front().index) + ": " +
                                                                   s.failures.front().reason));
    d << to_string(pair) << " " << s.trials << " trials (" << s.nonempty << " nonempty), " << s.failures.size()
      << " failures; ";
  }
  if (c.r.pass) {
    c.r.detail = d.str();
    c.r.detail.resize(c.r.detail.size() - 2);
  }
  return c.r;
}

Result c5_reflection() {
  Check c;
  std::size_t homs = 0;
  for (std::size_t i = 0; i < kReflectionNets; ++i) {
    auto rng = trial_rng(505, i);
    const auto p = random_petri(rng);
    const auto eps = FPetGPet::counit(p);
    c.expect(validate_morphism(eps, f_pet(g_pet(p)), p).empty() &&
                 is_isomorphism(eps, p.places.size(), p.transitions.size()),
             "counit not an isomorphism on net " + std::to_string(i));
    const auto p2 = push_forward(rng, p, random_place_merge(rng, p.places));
    const auto ff = fullfaith_g_pet(p, p2);
    homs += ff.source_homs;
    c.expect(ff.ok(), "G_pet hom map not bijective on pair " + std::to_string(i));
  }
  if (c.r.pass)
    c.r.detail = std::to_string(kReflectionNets) + " counits invertible; " + std::to_string(kReflectionNets) +
                 " hom pairs bijective (" + std::to_string(homs) + " morphisms)";
  return c.r;
}

Result c6_whole_grain() {
  Check c;
  for (const auto* name : {"fix-xyz.json", "fix-dup.json", "fix-lone.json", "v1.json", "v2.json"}) {
    const auto q = fixture<PreNet>(name);
    c.expect(net_isomorphic(z2(z1(q)), f_pre(q)).has_value(), std::string("z2 z1 on ") + name);
  }
  for (std::size_t i = 0; i < kWholeGrainPrenets; ++i) {
    auto rng = trial_rng(606, i);
    const auto q = random_prenet(rng);
    c.expect(net_isomorphic(z2(z1(q)), f_pre(q)).has_value(), "z2 z1 on random pre-net " + std::to_string(i));
  }
  for (std::size_t i = 0; i < kWholeGrainPairs; ++i) {
    auto rng = trial_rng(607, i);
    const auto w1 = random_wholegrain(rng);
    const auto w2 = push_forward(rng, w1, random_place_merge(rng, w1.places));
    c.expect(fullfaith_z2(w1, w2).ok(), "Z2 hom bijection on pair " + std::to_string(i));
  }
  for (std::size_t i = 0; i < kWholeGrainNets; ++i) {
    auto rng = trial_rng(608, i);
    const auto w = random_wholegrain(rng);
    c.expect(net_isomorphic(z1(z1_preimage(w)), w).has_value(), "Z1 preimage on net " + std::to_string(i));
  }
  if (c.r.pass) c.r.detail = "5 fixtures + 100 random pre-nets; 50 Z2 pairs; 50 Z1 preimages";
  return c.r;
}

Result c7_ordering() {
  Check c;
  const auto v1 = fixture<PreNet>("v1.json"), v2 = fixture<PreNet>("v2.json");
  const auto pre = hom_set(v1, v2).size();
  const auto pet = hom_set(erase_ordering(v1), erase_ordering(v2)).size();
  c.expect(pre == 0 && pet == 1, "counts " + std::to_string(pre) + ", " + std::to_string(pet));
  c.r.detail = "|Hom_PreNet(V1,V2)| = " + std::to_string(pre) + ", |Hom_Petri| = " + std::to_string(pet);
  return c.r;
}

// A random pre-net with two endo-generators f, g on one place (possibly
// the same generator) among other random transitions.
struct EndoInstance {
  PreNet net;
  std::string f, g;
  PlaceId p;
};

EndoInstance endo_instance(std::uint64_t i) {
  auto rng = trial_rng(808, i);
  RandomNetOptions o;
  o.max_word = 2;
  auto q = random_prenet(rng, o);
  const auto p = q.places[rng() % q.places.size()];
  q.transitions.push_back({"f", {p}, {p}});
  const bool same = rng() % 2;
  if (!same) q.transitions.push_back({"g", {p}, {p}});
  return {canonical(std::move(q)), "f", same ? "f" : "g", p};
}

Result c8_collapse() {
  Check c;
  auto run = [&](const PreNet& q, const std::string& f, const std::string& g, const PlaceId& p, const std::string& tag) {
    const auto lhs = Term::tensor(gen(f), gen(g));
    const auto rhs = Term::tensor(Term::identity({p}), Term::comp(gen(g), gen(f)));
    const auto cmc = equiv(lhs, rhs, present_free(erase_ordering(q), Flavor::cmc));
    c.expect(cmc.verdict == Verdict::equal, tag + " CMC gave " + to_string(cmc.verdict));
    const auto ssmc = equiv(lhs, rhs, present_free(f_pre(q), Flavor::ssmc));
    c.expect(ssmc.verdict == Verdict::distinct, tag + " SSMC gave " + to_string(ssmc.verdict));
  };
  run(canonical(PreNet{{"p"}, {{"w", {"p"}, {"p"}}}}), "w", "w", "p", "w:p->p");
  for (std::size_t i = 0; i < kEndoInstances; ++i) {
    const auto e = endo_instance(i);
    run(e.net, e.f, e.g, e.p, "instance " + std::to_string(i));
  }
  if (c.r.pass) c.r.detail = "CMC Equal, SSMC Distinct on w and " + std::to_string(kEndoInstances) + " random instances";
  return c.r;
}

Result c9_isotropy() {
  Check c;
  const auto swap = [](Word w) { return Term::symmetry(Permutation({1, 0}), std::move(w)); };
  const auto full = present_free(fixture<SigmaNet>("fix-pp-full.json"), Flavor::ssmc);
  const auto dup = present_free(f_pre(fixture<PreNet>("fix-dup.json")), Flavor::ssmc);
  const auto a = equiv(gen("t"), Term::comp(swap({"p", "p"}), gen("t")), full).verdict;
  const auto b = equiv(gen("d"), Term::comp(swap({"A", "A"}), gen("d")), dup).verdict;
  const auto wa = enumerate_homs(full, {"p", "p"}, {}, 1);
  const auto wb = enumerate_homs(dup, {"A", "A"}, {"C"}, 1);
  c.expect(a == Verdict::equal, "FIX-PP-FULL gave " + to_string(a));
  c.expect(b == Verdict::distinct, "f_pre(FIX-DUP) gave " + to_string(b));
  c.expect(wa.classes.size() == 1 && wa.decided(), "FIX-PP-FULL window");
  c.expect(wb.classes.size() == 2 && wb.decided(), "f_pre(FIX-DUP) window");
  c.r.detail = to_string(a) + " / " + to_string(b) + "; windows " + std::to_string(wa.classes.size()) + " vs " +
               std::to_string(wb.classes.size());
  return c.r;
}

Result c10_open_composite() {
  Check c;
  const auto qp = compose_open(open_fixture<PetriNet>("fix-open-p.json"), open_fixture<PetriNet>("fix-open-q.json"));
  const auto expected = open_fixture<PetriNet>("fix-open-qp-expected.json");
  c.expect(qp.body.places.size() == 4 && qp.body.transitions.size() == 3, "composite size");
  c.expect(open_iso(qp, expected).has_value(), "no open isomorphism to the expected composite");
  if (c.r.pass) c.r.detail = "4 places, 3 transitions, open-isomorphic to the expected net";
  return c.r;
}

template <class Net>
void open_family(Check& c, std::uint64_t i) {
  RandomNetOptions o;
  o.max_transitions = 2;
  o.max_word = 2;
  auto rng = trial_rng(1111, i);
  const auto x = random_boundary(rng, "x", 2), y = random_boundary(rng, "y", 2);
  const auto z = random_boundary(rng, "z", 2), w = random_boundary(rng, "w", 2);
  const auto a = random_open<Net>(rng, x, y, o);
  const auto b = random_open<Net>(rng, y, z, o);
  const auto d = random_open<Net>(rng, z, w, o);
  const auto e = random_open<Net>(rng, w, x, o);
  const auto tag = " on family " + std::to_string(i);
  c.expect(open_iso(compose_open(compose_open(a, b), d), compose_open(a, compose_open(b, d))).has_value(),
           "associativity" + tag);
  c.expect(open_iso(compose_open(identity_open<Net>(x), a), a).has_value(), "left unit" + tag);
  c.expect(open_iso(compose_open(a, identity_open<Net>(y)), a).has_value(), "right unit" + tag);
  c.expect(open_iso(compose_open(tensor_open(a, d), tensor_open(b, e)), tensor_open(compose_open(a, b), compose_open(d, e)))
               .has_value(),
           "interchange" + tag);
}

Result c11_open_laws() {
  Check c;
  for (std::uint64_t i = 0; i < kOpenFamilies; ++i) {
    switch (i % 3) {
      case 0: open_family<PetriNet>(c, i); break;
      case 1: open_family<PreNet>(c, i); break;
      default: open_family<SigmaNet>(c, i); break;
    }
  }
  for (std::uint64_t i = 0; i < kOpenMapTrials; ++i) {
    auto rng = trial_rng(1112, i);
    RandomNetOptions o;
    o.max_transitions = 2;
    const auto x = random_boundary(rng, "x", 2), y = random_boundary(rng, "y", 2), z = random_boundary(rng, "z", 2);
    const auto a = random_open<SigmaNet>(rng, x, y, o);
    const auto b = random_open<SigmaNet>(rng, y, z, o);
    c.expect(open_iso(open_f_pet(compose_open(a, b)), compose_open(open_f_pet(a), open_f_pet(b))).has_value(),
             "f_pet vs composition on trial " + std::to_string(i));
  }
  if (c.r.pass)
    c.r.detail = std::to_string(kOpenFamilies) + " families (Petri/pre-net/Σ), " + std::to_string(kOpenMapTrials) +
                 " f_pet trials";
  return c.r;
}

Result c12_squares() {
  Check c;
  std::vector<PreNet> qs;
  for (std::size_t i = 0; i < kSquarePrenets; ++i) {
    auto rng = trial_rng(1212, i);
    qs.push_back(random_prenet(rng));
  }
  const auto pres = check_squares(qs, {}, kSquareMaxGens);
  c.expect(pres.presentations_equal == pres.presentations, "presentation square");

  // "Tiny": at most two places, two transitions and words of length two.
  RandomNetOptions tiny;
  tiny.max_places = tiny.max_transitions = tiny.max_word = 2;
  std::size_t decided = 0, agreeing = 0, windows = 0;
  for (std::size_t i = 0; i < kSquarePetri; ++i) {
    auto rng = trial_rng(1213, i);
    const auto r = check_squares({}, {random_petri(rng, tiny)}, kSquareMaxGens);
    windows += r.windows.size();
    if (r.decided() == r.windows.size()) {
      ++decided;
      agreeing += r.agreeing() == r.windows.size();
    }
  }
  const double decided_frac = double(decided) / double(kSquarePetri);
  const double agree_frac = decided ? double(agreeing) / double(decided) : 1.0;
  c.expect(decided_frac >= kMinDecidedFraction, "only " + std::to_string(decided) + " nets decided");
  c.expect(agree_frac >= kMinAgreementFraction, "disagreement among decided nets");
  std::ostringstream d;
  d << pres.presentations_equal << "/" << pres.presentations << " presentations equal; " << decided << "/" << kSquarePetri
    << " nets decided (" << windows << " windows), " << agreeing << "/" << decided << " agree";
  c.r.detail = d.str();
  return c.r;
}

Result c13_execution() {
  Check c;
  const auto intro = fixture<PetriNet>("fix-intro.json");
  const auto s1 = reachable(intro, {{"a", 1}, {"b", 1}, {"c", 1}}, {{"c", 2}}, 1);
  const auto s2 = reachable(intro, {{"c", 2}}, {{"b", 2}, {"c", 1}}, 1);
  c.expect(s1 && *s1 == std::vector<TransitionId>{"tau1"}, "first firing step");
  c.expect(s2 && *s2 == std::vector<TransitionId>{"tau2"}, "second firing step");
  std::size_t reachable_count = 0;
  for (std::size_t i = 0; i < kReachInstances; ++i) {
    auto rng = trial_rng(1313, i);
    RandomNetOptions o;
    o.max_word = 2;
    const auto n = random_petri(rng, o);
    const auto x = random_word(rng, n.places, 3), y = random_word(rng, n.places, 3);
    const std::size_t bound = 1 + rng() % kReachMaxBound;
    const auto w = enumerate_homs(present_free(n, Flavor::cmc), x, y, bound);
    const auto r = reachable(n, Multiset::from_word(x), Multiset::from_word(y), bound);
    reachable_count += r.has_value();
    c.expect(w.classes.empty() == !r.has_value(), "instance " + std::to_string(i));
  }
  if (c.r.pass)
    c.r.detail = "tau1 then tau2; " + std::to_string(kReachInstances) + " instances (" +
                 std::to_string(reachable_count) + " reachable)";
  return c.r;
}

Result c14_round_trips() {
  Check c;
  for (std::size_t i = 0; i < kRoundTripNets; ++i) {
    auto rng = trial_rng(1414, i);
    const auto n = random_sigma(rng);
    c.expect(net_isomorphic(to_groupoid(to_presheaf(n)), n).has_value(), "groupoid round trip on " + std::to_string(i));
  }
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(kFixtures)) {
    if (entry.path().extension() != ".json") continue;
    ++files;
    const auto j = read_json_file(entry.path().string());
    const auto kind = j.at("kind").get<std::string>();
    json back;
    if (kind == "open")
      back = to_json(parse_open(j));
    else if (kind == "fincmc")
      back = to_json(parse_fincmc(j));
    else
      back = to_json(parse_net(j));
    c.expect(back == j, "serialization round trip on " + entry.path().filename().string());
  }
  if (c.r.pass) c.r.detail = std::to_string(kRoundTripNets) + " Σ-nets; " + std::to_string(files) + " fixture files";
  return c.r;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"counting law", c1_counting},
      {"H_pre fixtures", c2_h_pre},
      {"G_pre fixtures", c3_g_pre},
      {"adjunction bijections", c4_adjunctions},
      {"reflection and full faithfulness", c5_reflection},
      {"whole-grain equivalence", c6_whole_grain},
      {"ordering obstruction", c7_ordering},
      {"collapse law", c8_collapse},
      {"isotropy semantics", c9_isotropy},
      {"open composition", c10_open_composite},
      {"open laws", c11_open_laws},
      {"square propositions", c12_squares},
      {"execution semantics", c13_execution},
      {"round trips", c14_round_trips},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    failed += !r.pass;
    std::printf("[%s] %2zu %-34s %6lld ms  %s\n", r.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                static_cast<long long>(ms), r.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed;
}
