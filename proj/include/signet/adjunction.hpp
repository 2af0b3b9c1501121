#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "signet/hom.hpp"
#include "signet/io.hpp"
#include "signet/random.hpp"
#include "signet/translations.hpp"

namespace signet {

enum class AdjunctionPair { f_pre_g_pre, g_pre_h_pre, f_pet_g_pet };

inline std::string to_string(AdjunctionPair p) {
  switch (p) {
    case AdjunctionPair::f_pre_g_pre: return "f_pre-g_pre";
    case AdjunctionPair::g_pre_h_pre: return "g_pre-h_pre";
    case AdjunctionPair::f_pet_g_pet: return "f_pet-g_pet";
  }
  return "?";
}

inline std::optional<AdjunctionPair> parse_adjunction_pair(const std::string& s) {
  for (auto p : {AdjunctionPair::f_pre_g_pre, AdjunctionPair::g_pre_h_pre, AdjunctionPair::f_pet_g_pet})
    if (to_string(p) == s) return p;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Each adjunction F ⊣ G : C ⇄ D is described by a traits struct giving both
// functors on objects and morphisms, the unit η_N : N → GFN, the counit
// ε_M : FGM → M, and composition in both categories.

struct FPreGPre {
  using C = PreNet;
  using D = SigmaNet;
  using MorC = NetMorphism;
  using MorD = SigmaMorphism;

  static D F(const C& n) { return f_pre(n); }
  static C G(const D& m) { return g_pre(m); }
  static MorD F(const MorC& h, const C& a, const C& b) { return f_pre(h, a, b); }
  static MorC G(const MorD& h, const D& a, const D& b) { return g_pre(h, a, b); }
  static MorC compose_c(const MorC& s, const MorC& f, const C&) { return compose(s, f); }
  static MorD compose_d(const MorD& s, const MorD& f, const D& target) { return compose(s, f, target); }

  /// t ↦ its copy ordered by the identity coset.
  static MorC unit(const C& n) {
    const auto gf = G(F(n));
    NetMorphism m{detail::identity_places(n.places), {}};
    const SigmaView v(F(n));
    for (const auto& e : v.elements())
      if (e.rep.is_identity()) m.transitions[v.net().classes[e.cls].id] = e.id;
    return m;
  }

  /// Each exploded transition goes to its own class with its coset witness.
  static MorD counit(const D& m) {
    const SigmaView v(m);
    SigmaMorphism out{detail::identity_places(m.places), {}};
    for (const auto& e : v.elements()) out.classes[e.id] = {m.classes[e.cls].id, e.rep};
    return out;
  }
};

struct GPreHPre {
  using C = SigmaNet;
  using D = PreNet;
  using MorC = SigmaMorphism;
  using MorD = NetMorphism;

  static D F(const C& m) { return g_pre(m); }
  static C G(const D& n) { return h_pre(n); }
  static MorD F(const MorC& h, const C& a, const C& b) { return g_pre(h, a, b); }
  static MorC G(const MorD& h, const D& a, const D& b) { return h_pre(h, a, b); }
  static MorC compose_c(const MorC& s, const MorC& f, const C& target) { return compose(s, f, target); }
  static MorD compose_d(const MorD& s, const MorD& f, const D&) { return compose(s, f); }

  /// Class c goes to the family g ↦ g · rep(c), read in g_pre(M).
  static MorC unit(const C& m) {
    const SigmaView v(m);
    const auto gm = g_pre(m);
    const auto fam = h_pre_families(gm);
    const auto located = to_groupoid_located(fam.presheaf);
    SigmaMorphism out{detail::identity_places(m.places), {}};
    for (std::size_t c = 0; c < m.classes.size(); ++c) {
      const auto& table = SymmetricPairTable::get(m.classes[c].src.size(), m.classes[c].tgt.size());
      std::vector<TransitionId> values;
      for (const auto& g : table.elements()) values.push_back(v.elements()[v.locate(c, g)].id);
      out.classes[m.classes[c].id] = located.location.at(detail::family_id(values));
    }
    return out;
  }

  /// Element k of the class of φ is rep_k · φ, whose value at the identity
  /// is φ(rep_k).
  static MorD counit(const D& n) {
    const auto fam = h_pre_families(n);
    const auto hn = to_groupoid(fam.presheaf);
    const SigmaView v(hn);
    NetMorphism out{detail::identity_places(n.places), {}};
    for (const auto& e : v.elements())
      out.transitions[e.id] = fam.families.at(hn.classes[e.cls].id).at(e.rep.rank());
    return out;
  }

  /// G(ε_N) ∘ η_{GN} = id, checked one class at a time. Materializing
  /// H_pre(G_pre(H_pre N)) is infeasible even for tiny N, but each component
  /// only needs one family of it: g ↦ ε_N(g · c).
  static bool counit_triangle(const D& n) {
    const auto fam = h_pre_families(n);
    const auto located = to_groupoid_located(fam.presheaf);
    const SigmaView v(located.net);
    const auto eps = counit(n);
    for (std::size_t c = 0; c < located.net.classes.size(); ++c) {
      const auto& cls = located.net.classes[c];
      const auto& table = SymmetricPairTable::get(cls.src.size(), cls.tgt.size());
      std::vector<TransitionId> values;
      for (const auto& g : table.elements()) values.push_back(eps.transitions.at(v.elements()[v.locate(c, g)].id));
      const auto it = located.location.find(detail::family_id(values));
      if (it == located.location.end()) return false;
      if (!(it->second == ClassImage{cls.id, PermPair::identity(cls.src.size(), cls.tgt.size())})) return false;
    }
    return true;
  }
};

struct FPetGPet {
  using C = SigmaNet;
  using D = PetriNet;
  using MorC = SigmaMorphism;
  using MorD = NetMorphism;

  static D F(const C& m) { return f_pet(m); }
  static C G(const D& p) { return g_pet(p); }
  static MorD F(const MorC& h, const C& a, const C& b) { return f_pet(h, a, b); }
  static MorC G(const MorD& h, const D& a, const D& b) { return g_pet(h, a, b); }
  static MorC compose_c(const MorC& s, const MorC& f, const C& target) { return compose(s, f, target); }
  static MorD compose_d(const MorD& s, const MorD& f, const D&) { return compose(s, f); }

  /// Class c goes to its deflated-and-resorted copy; the witness reorders the
  /// sorted words back into the words of c.
  static MorC unit(const C& m) {
    const auto gf = g_pet(f_pet(m));
    SigmaMorphism out{detail::identity_places(m.places), {}};
    for (const auto& c : m.classes) {
      const auto& target = *find_by_id(gf.classes, c.id);
      const auto rs = permutation_between(target.src, c.src);
      const auto rt = permutation_between(target.tgt, c.tgt);
      out.classes[c.id] = {c.id, target.isotropy.coset_min(PermPair{*rs, *rt})};
    }
    return out;
  }

  static MorD counit(const D& p) { return identity_morphism(p); }
};

template <AdjunctionPair P>
struct AdjunctionTraits;
template <>
struct AdjunctionTraits<AdjunctionPair::f_pre_g_pre> {
  using type = FPreGPre;
};
template <>
struct AdjunctionTraits<AdjunctionPair::g_pre_h_pre> {
  using type = GPreHPre;
};
template <>
struct AdjunctionTraits<AdjunctionPair::f_pet_g_pet> {
  using type = FPetGPet;
};

struct AdjunctionReport {
  std::size_t hom_left = 0;   // |Hom_D(F N, M)|
  std::size_t hom_right = 0;  // |Hom_C(N, G M)|
  bool bijection = true;
  bool triangle_unit_side = true;    // ε_{FN} ∘ F(η_N) = id
  bool triangle_counit_side = true;  // G(ε_M) ∘ η_{GM} = id
  std::vector<std::string> failures;
  bool ok() const { return bijection && triangle_unit_side && triangle_counit_side && failures.empty(); }
};

namespace detail {
template <class Mor>
bool contains(const std::vector<Mor>& xs, const Mor& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}
}  // namespace detail

/// Enumerates Hom_D(F N, M) and Hom_C(N, G M), transposes in both
/// directions, and checks that the transposes are mutually inverse and land
/// in the enumerated sets. Also checks both triangle identities at N and M.
template <class A>
AdjunctionReport check_adjunction_with(const typename A::C& n, const typename A::D& m,
                                       const Limits& limits = default_limits()) {
  AdjunctionReport r;
  const auto fn = A::F(n);
  const auto gm = A::G(m);
  const auto left = hom_set(fn, m, limits);
  const auto right = hom_set(n, gm, limits);
  r.hom_left = left.size();
  r.hom_right = right.size();

  const auto eta_n = A::unit(n);
  const auto eps_m = A::counit(m);
  if (!validate_morphism(eta_n, n, A::G(fn)).empty()) r.failures.push_back("unit is not a morphism");
  if (!validate_morphism(eps_m, A::F(gm), m).empty()) r.failures.push_back("counit is not a morphism");
  if (!r.failures.empty()) {
    r.bijection = false;
    return r;
  }

  // φ(β) = G(β) ∘ η_N and ψ(α) = ε_M ∘ F(α).
  auto phi = [&](const typename A::MorD& beta) { return A::compose_c(A::G(beta, fn, m), eta_n, gm); };
  auto psi = [&](const typename A::MorC& alpha) { return A::compose_d(eps_m, A::F(alpha, n, gm), m); };

  for (const auto& beta : left) {
    const auto a = phi(beta);
    if (!detail::contains(right, a)) {
      r.bijection = false;
      r.failures.push_back("transpose of a morphism F N -> M is not in Hom(N, G M)");
      break;
    }
    if (!(psi(a) == beta)) {
      r.bijection = false;
      r.failures.push_back("psi(phi(beta)) != beta");
      break;
    }
  }
  for (const auto& alpha : right) {
    const auto b = psi(alpha);
    if (!detail::contains(left, b)) {
      r.bijection = false;
      r.failures.push_back("transpose of a morphism N -> G M is not in Hom(F N, M)");
      break;
    }
    if (!(phi(b) == alpha)) {
      r.bijection = false;
      r.failures.push_back("phi(psi(alpha)) != alpha");
      break;
    }
  }
  if (left.size() != right.size()) r.bijection = false;

  const auto eps_fn = A::counit(fn);
  const auto t1 = A::compose_d(eps_fn, A::F(eta_n, n, A::G(fn)), fn);
  if (!(t1 == identity_morphism(fn))) r.triangle_unit_side = false;
  if constexpr (requires { A::counit_triangle(m); }) {
    r.triangle_counit_side = A::counit_triangle(m);
  } else {
    const auto eta_gm = A::unit(gm);
    const auto t2 = A::compose_c(A::G(eps_m, A::F(gm), m), eta_gm, gm);
    r.triangle_counit_side = t2 == identity_morphism(gm);
  }
  return r;
}

/// Naturality of the unit along h : N → N'.
template <class A>
bool unit_natural(const typename A::MorC& h, const typename A::C& n, const typename A::C& n2) {
  const auto lhs = A::compose_c(A::G(A::F(h, n, n2), A::F(n), A::F(n2)), A::unit(n), A::G(A::F(n2)));
  const auto rhs = A::compose_c(A::unit(n2), h, A::G(A::F(n2)));
  return lhs == rhs;
}

/// Naturality of the counit along k : M → M'.
template <class A>
bool counit_natural(const typename A::MorD& k, const typename A::D& m, const typename A::D& m2) {
  const auto lhs = A::compose_d(k, A::counit(m), m2);
  const auto rhs = A::compose_d(A::counit(m2), A::F(A::G(k, m, m2), A::G(m), A::G(m2)), m2);
  return lhs == rhs;
}

// ---------------------------------------------------------------------------
// Seeded trials.

struct TrialFailure {
  std::uint64_t index;
  std::string reason;
  json left;   // the C-side object N
  json right;  // the D-side object M
};

struct TrialSummary {
  std::size_t trials = 0;
  std::size_t nonempty = 0;  // trials whose hom-sets were nonempty
  std::vector<TrialFailure> failures;
  bool ok() const { return failures.empty(); }
};

namespace detail {

inline RandomNetOptions options_for(AdjunctionPair p) {
  RandomNetOptions o;
  // Families for H_pre range over all of S_m × S_n; shorter words keep the
  // family sets small enough for exhaustive hom enumeration.
  if (p == AdjunctionPair::g_pre_h_pre) {
    o.max_word = 2;
    o.max_transitions = 2;
  }
  return o;
}

template <class Net>
struct Pushed {
  Net net;
  MorphismOf_t<Net> morphism;
};

template <class Net>
Pushed<Net> push_with_morphism(Rng& rng, const Net& n, const RandomNetOptions& o) {
  const auto f = random_place_merge(rng, n.places);
  return {push_forward(rng, n, f, o), pushed_morphism(n, f)};
}

template <class A>
void run_trial(std::uint64_t seed, std::uint64_t index, const RandomNetOptions& o, TrialSummary& out,
               const std::function<typename A::C(Rng&)>& gen_c) {
  auto rng = trial_rng(seed, index);
  const auto n = gen_c(rng);
  const auto m = push_with_morphism(rng, A::F(n), o).net;
  auto fail_with = [&](const std::string& why) { out.failures.push_back({index, why, to_json(n), to_json(m)}); };
  try {
    const auto rep = check_adjunction_with<A>(n, m);
    if (rep.hom_left) ++out.nonempty;
    for (const auto& f : rep.failures) fail_with(f);
    if (rep.failures.empty() && !rep.ok()) fail_with("bijection or triangle identity failed");
    // Naturality along the canonical morphisms out of N and out of M.
    const auto n2 = push_with_morphism(rng, n, o);
    if (!unit_natural<A>(n2.morphism, n, n2.net)) fail_with("unit not natural");
    const auto m2 = push_with_morphism(rng, m, o);
    if (!counit_natural<A>(m2.morphism, m, m2.net)) fail_with("counit not natural");
  } catch (const Error& e) {
    fail_with(std::string(to_string(e.code())) + ": " + e.what());
  }
}

}  // namespace detail

/// Runs `trials` seeded trials of one adjunction. Trial i depends only on
/// (seed, i).
inline TrialSummary run_adjunction_trials(AdjunctionPair pair, std::size_t trials, std::uint64_t seed) {
  TrialSummary s;
  s.trials = trials;
  const auto o = detail::options_for(pair);
  for (std::uint64_t i = 0; i < trials; ++i) {
    switch (pair) {
      case AdjunctionPair::f_pre_g_pre:
        detail::run_trial<FPreGPre>(seed, i, o, s, [&](Rng& r) { return random_prenet(r, o); });
        break;
      case AdjunctionPair::g_pre_h_pre:
        detail::run_trial<GPreHPre>(seed, i, o, s, [&](Rng& r) { return random_sigma(r, o); });
        break;
      case AdjunctionPair::f_pet_g_pet:
        detail::run_trial<FPetGPet>(seed, i, o, s, [&](Rng& r) { return random_sigma(r, o); });
        break;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Full faithfulness and essential surjectivity probes.

struct FullFaithReport {
  std::size_t source_homs = 0;
  std::size_t image_homs = 0;
  bool injective = true;
  bool lands_in_image = true;
  bool ok() const { return injective && lands_in_image && source_homs == image_homs; }
};

/// Hom_Petri(P1, P2) → Hom_Σ(G_pet P1, G_pet P2).
inline FullFaithReport fullfaith_g_pet(const PetriNet& p1, const PetriNet& p2, const Limits& limits = default_limits()) {
  FullFaithReport r;
  const auto src = hom_set(p1, p2, limits);
  const auto g1 = g_pet(p1, limits), g2 = g_pet(p2, limits);
  const auto img = hom_set(g1, g2, limits);
  r.source_homs = src.size();
  r.image_homs = img.size();
  std::vector<SigmaMorphism> seen;
  for (const auto& h : src) {
    auto gh = g_pet(h, p1, p2, limits);
    if (!detail::contains(img, gh)) r.lands_in_image = false;
    if (detail::contains(seen, gh)) r.injective = false;
    seen.push_back(std::move(gh));
  }
  return r;
}

/// Hom_WG(W1, W2) → Hom_Σ(Z2 W1, Z2 W2).
inline FullFaithReport fullfaith_z2(const WholeGrainNet& w1, const WholeGrainNet& w2,
                                    const Limits& limits = default_limits()) {
  FullFaithReport r;
  const auto src = hom_set(w1, w2, limits);
  const auto img = hom_set(z2(w1, limits), z2(w2, limits), limits);
  r.source_homs = src.size();
  r.image_homs = img.size();
  std::vector<SigmaMorphism> seen;
  for (const auto& h : src) {
    auto zh = z2(h, w1, w2, limits);
    if (!detail::contains(img, zh)) r.lands_in_image = false;
    if (detail::contains(seen, zh)) r.injective = false;
    seen.push_back(std::move(zh));
  }
  return r;
}

/// A pre-net whose Z1 image is isomorphic to `w`: each fiber is ordered by
/// port id.
inline PreNet z1_preimage(const WholeGrainNet& w) {
  PreNet q{w.places, {}};
  for (const auto& t : w.transitions)
    q.transitions.push_back({t, fiber_places(fiber(w.inputs, t)), fiber_places(fiber(w.outputs, t))});
  return canonical(std::move(q));
}

}  // namespace signet
