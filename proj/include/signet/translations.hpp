#pragma once

#include <map>
#include <string>
#include <vector>

#include "signet/hom.hpp"
#include "signet/morphisms.hpp"
#include "signet/sigma_view.hpp"

namespace signet {

// Functors between the net categories. Each has an object part taking a net
// and a morphism part taking a morphism together with its endpoints.

// ---------------------------------------------------------------------------
// F_pre : PreNet → ΣNet. Every transition becomes a class with trivial isotropy.

inline SigmaNet f_pre(const PreNet& q) {
  SigmaNet out{q.places, {}};
  for (const auto& t : q.transitions)
    out.classes.push_back({t.id, t.src, t.tgt, PermGroup(t.src.size(), t.tgt.size())});
  return canonical(std::move(out));
}

inline SigmaMorphism f_pre(const NetMorphism& m, const PreNet& src, const PreNet& /*dst*/) {
  SigmaMorphism out{m.places, {}};
  for (const auto& t : src.transitions)
    out.classes[t.id] = {m.transitions.at(t.id), PermPair::identity(t.src.size(), t.tgt.size())};
  return out;
}

// ---------------------------------------------------------------------------
// G_pre : ΣNet → PreNet. One pre-net transition per exploded transition.

inline PreNet g_pre(const SigmaNet& n, const Limits& limits = default_limits()) {
  const SigmaView view(n, limits);
  PreNet out{n.places, {}};
  for (const auto& e : view.elements()) out.transitions.push_back({e.id, e.src, e.tgt});
  return canonical(std::move(out));
}

inline NetMorphism g_pre(const SigmaMorphism& m, const SigmaNet& src, const SigmaNet& dst,
                         const Limits& limits = default_limits()) {
  const SigmaView va(src, limits), vb(dst, limits);
  const auto alpha = sigma_components(m, va, vb);
  NetMorphism out{m.places, {}};
  for (std::size_t u = 0; u < alpha.size(); ++u) out.transitions[va.elements()[u].id] = vb.elements()[alpha[u]].id;
  return out;
}

// ---------------------------------------------------------------------------
// H_pre : PreNet → ΣNet, the right adjoint of G_pre. A transition over (a, b)
// is a family φ indexed by S_m × S_n with φ(g) a pre-net transition over g·(a, b);
// S_m × S_n acts by translating the argument.

/// Which way the indexing group acts on a family. Direct: φ(g) lies over
/// g·(a,b) and h·φ = φ(− ∘ h). Inverse: φ(g) lies over g⁻¹·(a,b) and
/// h·φ = φ(h⁻¹ ∘ −). Both give isomorphic Σ-nets.
enum class FamilyConvention { direct, inverse };

struct HPreFamilies {
  SigmaNetPresheaf presheaf;
  /// Family values in rank order of S_m × S_n, keyed by family id.
  std::map<TransitionId, std::vector<TransitionId>> families;
};

namespace detail {
inline std::string family_id(const std::vector<TransitionId>& values) { return "<" + join(values, ",") + ">"; }
}  // namespace detail

inline HPreFamilies h_pre_families(const PreNet& q, FamilyConvention conv = FamilyConvention::direct,
                                   const Limits& limits = default_limits()) {
  std::map<std::pair<Word, Word>, std::vector<TransitionId>> cells;
  for (const auto& t : q.transitions) cells[{t.src, t.tgt}].push_back(t.id);

  HPreFamilies out;
  out.presheaf.places = q.places;
  detail::Budget budget(limits);
  struct Raw {
    std::vector<TransitionId> values;
    Word src, tgt;
  };
  std::vector<Raw> raws;
  for (const auto& t0 : q.transitions) {
    check_degree(t0.src.size(), t0.tgt.size(), limits);
    const auto& table = SymmetricPairTable::get(t0.src.size(), t0.tgt.size());
    std::vector<std::vector<TransitionId>> slots;
    for (std::size_t r = 0; r < table.order(); ++r) {
      if (r == 0) {
        slots.push_back({t0.id});
        continue;
      }
      const auto& g = table.elements()[r];
      const auto key = apply_pair(conv == FamilyConvention::direct ? g : g.inverse(), t0.src, t0.tgt);
      auto it = cells.find(key);
      if (it == cells.end()) {
        slots.clear();
        break;
      }
      slots.push_back(it->second);
    }
    if (slots.empty()) continue;
    detail::for_each_choice(slots, budget, [&](const std::vector<std::size_t>& idx) {
      Raw raw{{}, t0.src, t0.tgt};
      for (std::size_t r = 0; r < idx.size(); ++r) raw.values.push_back(slots[r][idx[r]]);
      raws.push_back(std::move(raw));
    });
  }

  // A family is determined by its values; φ(id) fixes its cell.
  std::map<std::vector<TransitionId>, std::size_t> index;
  for (std::size_t i = 0; i < raws.size(); ++i) index[raws[i].values] = i;
  for (const auto& raw : raws) {
    const auto& table = SymmetricPairTable::get(raw.src.size(), raw.tgt.size());
    PresheafTransition t{detail::family_id(raw.values), raw.src, raw.tgt, {}, {}};
    const std::size_t src_gens = raw.src.empty() ? 0 : raw.src.size() - 1;
    for (std::size_t k = 0; k < table.generators().size(); ++k) {
      const auto& s = table.generators()[k];
      std::vector<TransitionId> moved(raw.values.size());
      for (std::size_t r = 0; r < table.order(); ++r) {
        const auto& g = table.elements()[r];
        // direct: (s·φ)(g) = φ(g∘s); inverse: (s·φ)(g) = φ(s⁻¹∘g).
        const auto src_rank = conv == FamilyConvention::direct ? g.compose(s).rank() : s.inverse().compose(g).rank();
        moved[r] = raw.values[src_rank];
      }
      if (!index.count(moved)) fail(ErrorCode::validation, "h_pre: family translate missing (internal)");
      (k < src_gens ? t.src_swaps : t.tgt_swaps).push_back(detail::family_id(moved));
    }
    out.families[t.id] = raw.values;
    out.presheaf.transitions.push_back(std::move(t));
  }
  out.presheaf = canonical(std::move(out.presheaf));
  return out;
}

inline SigmaNet h_pre(const PreNet& q, FamilyConvention conv = FamilyConvention::direct,
                      const Limits& limits = default_limits()) {
  return to_groupoid(h_pre_families(q, conv, limits).presheaf, limits);
}

/// H_pre on morphisms: families are pushed forward pointwise.
inline SigmaMorphism h_pre(const NetMorphism& m, const PreNet& src, const PreNet& dst,
                           FamilyConvention conv = FamilyConvention::direct, const Limits& limits = default_limits()) {
  const auto fa = h_pre_families(src, conv, limits);
  const auto fb = h_pre_families(dst, conv, limits);
  const auto ga = to_groupoid(fa.presheaf, limits);
  const auto gb = to_groupoid_located(fb.presheaf, limits);
  SigmaMorphism out{m.places, {}};
  for (const auto& c : ga.classes) {
    std::vector<TransitionId> pushed;
    for (const auto& v : fa.families.at(c.id)) pushed.push_back(m.transitions.at(v));
    out.classes[c.id] = gb.location.at(detail::family_id(pushed));
  }
  return out;
}

// ---------------------------------------------------------------------------
// F_pet : ΣNet → Petri (deflate each class) and G_pet : Petri → ΣNet (sorted
// words, full stabilizer isotropy).

inline PetriNet f_pet(const SigmaNet& n) {
  PetriNet out{n.places, {}};
  for (const auto& c : n.classes) out.transitions.push_back({c.id, Multiset::from_word(c.src), Multiset::from_word(c.tgt)});
  return canonical(std::move(out));
}

inline NetMorphism f_pet(const SigmaMorphism& m, const SigmaNet& /*src*/, const SigmaNet& /*dst*/) {
  NetMorphism out{m.places, {}};
  for (const auto& [c, img] : m.classes) out.transitions[c] = img.cls;
  return out;
}

inline SigmaNet g_pet(const PetriNet& p, const Limits& limits = default_limits()) {
  SigmaNet out{p.places, {}};
  for (const auto& t : p.transitions) {
    auto a = t.src.sorted_word();
    auto b = t.tgt.sorted_word();
    auto grp = stabilizer(a, b, limits);
    out.classes.push_back({t.id, std::move(a), std::move(b), std::move(grp)});
  }
  return canonical(std::move(out));
}

/// The witness re-sorts the target class words into the image of the source
/// class words.
inline SigmaMorphism g_pet(const NetMorphism& m, const PetriNet& src, const PetriNet& dst,
                           const Limits& limits = default_limits()) {
  const auto gd = g_pet(dst, limits);
  SigmaMorphism out{m.places, {}};
  for (const auto& t : src.transitions) {
    const auto& target = *find_by_id(gd.classes, m.transitions.at(t.id));
    const auto fa = extend_place_map(m.places, t.src.sorted_word());
    const auto fb = extend_place_map(m.places, t.tgt.sorted_word());
    auto rs = permutation_between(target.src, fa);
    auto rt = permutation_between(target.tgt, fb);
    if (!rs || !rt) fail(ErrorCode::validation, "g_pet: " + t.id + " is not sent to a transition of matching type");
    out.classes[t.id] = {target.id, target.isotropy.coset_min(PermPair{*rs, *rt})};
  }
  return out;
}

// ---------------------------------------------------------------------------
// Composites of the above, computed directly.

/// f_pet ∘ f_pre: forget the order of every word.
inline PetriNet erase_ordering(const PreNet& q) {
  PetriNet out{q.places, {}};
  for (const auto& t : q.transitions) out.transitions.push_back({t.id, Multiset::from_word(t.src), Multiset::from_word(t.tgt)});
  return out;
}

inline NetMorphism erase_ordering(const NetMorphism& m) { return m; }

/// g_pre ∘ g_pet: every distinct ordering of the inputs and outputs.
inline PreNet saturate_orderings(const PetriNet& p, const Limits& limits = default_limits()) {
  PreNet out{p.places, {}};
  for (const auto& t : p.transitions) {
    const auto a = t.src.sorted_word();
    const auto b = t.tgt.sorted_word();
    const auto reps = coset_reps(stabilizer(a, b, limits), limits);
    for (std::size_t k = 0; k < reps.size(); ++k) {
      auto [s, g] = apply_pair(reps[k], a, b);
      out.transitions.push_back({t.id + "#" + std::to_string(k), std::move(s), std::move(g)});
    }
  }
  return canonical(std::move(out));
}

// ---------------------------------------------------------------------------
// Z1 : PreNet → whole-grain and Z2 : whole-grain → ΣNet.

namespace detail {
inline std::string port_id(const TransitionId& t, char side, std::size_t k) {
  return t + "#" + side + std::to_string(k);
}
}  // namespace detail

inline WholeGrainNet z1(const PreNet& q) {
  WholeGrainNet out{q.places, {}, {}, {}};
  for (const auto& t : q.transitions) {
    out.transitions.push_back(t.id);
    for (std::size_t k = 0; k < t.src.size(); ++k) out.inputs.push_back({detail::port_id(t.id, 'i', k), t.src[k], t.id});
    for (std::size_t k = 0; k < t.tgt.size(); ++k) out.outputs.push_back({detail::port_id(t.id, 'o', k), t.tgt[k], t.id});
  }
  return canonical(std::move(out));
}

inline WholeGrainMorphism z1(const NetMorphism& m, const PreNet& src, const PreNet& /*dst*/) {
  WholeGrainMorphism out{m.places, m.transitions, {}, {}};
  for (const auto& t : src.transitions) {
    const auto& u = m.transitions.at(t.id);
    for (std::size_t k = 0; k < t.src.size(); ++k) out.inputs[detail::port_id(t.id, 'i', k)] = detail::port_id(u, 'i', k);
    for (std::size_t k = 0; k < t.tgt.size(); ++k) out.outputs[detail::port_id(t.id, 'o', k)] = detail::port_id(u, 'o', k);
  }
  return out;
}

namespace detail {
inline std::string ordering_id(const TransitionId& t, std::uint64_t rank) { return t + "#" + std::to_string(rank); }

/// Presheaf of Z2: element (t, g) orders the fibers of t as g applied to the
/// fibers sorted by port id.
inline SigmaNetPresheaf z2_presheaf(const WholeGrainNet& w, const Limits& limits) {
  SigmaNetPresheaf out{w.places, {}};
  for (const auto& t : w.transitions) {
    const auto fi = fiber_places(fiber(w.inputs, t));
    const auto fo = fiber_places(fiber(w.outputs, t));
    check_degree(fi.size(), fo.size(), limits);
    const auto& table = SymmetricPairTable::get(fi.size(), fo.size());
    const std::size_t src_gens = fi.empty() ? 0 : fi.size() - 1;
    for (std::size_t r = 0; r < table.order(); ++r) {
      const auto& g = table.elements()[r];
      auto [a, b] = apply_pair(g, fi, fo);
      PresheafTransition pt{ordering_id(t, r), std::move(a), std::move(b), {}, {}};
      for (std::size_t k = 0; k < table.generators().size(); ++k)
        (k < src_gens ? pt.src_swaps : pt.tgt_swaps).push_back(ordering_id(t, table.generators()[k].compose(g).rank()));
      out.transitions.push_back(std::move(pt));
    }
  }
  return canonical(std::move(out));
}
}  // namespace detail

inline SigmaNet z2(const WholeGrainNet& w, const Limits& limits = default_limits()) {
  return to_groupoid(detail::z2_presheaf(w, limits), limits);
}

/// Z2 on étale maps: an ordering of the fibers of t is carried by the fiber
/// bijections to an ordering of the fibers of the image transition.
inline SigmaMorphism z2(const WholeGrainMorphism& m, const WholeGrainNet& src, const WholeGrainNet& dst,
                        const Limits& limits = default_limits()) {
  const auto ga = to_groupoid_located(detail::z2_presheaf(src, limits), limits);
  const auto gb = to_groupoid_located(detail::z2_presheaf(dst, limits), limits);
  auto carried = [&](const std::vector<Port>& pa, const std::vector<Port>& pb, const std::map<std::string, std::string>& g,
                     const TransitionId& t) {
    std::vector<std::string> image, target;
    for (const auto* p : fiber(pa, t)) image.push_back(g.at(p->id));
    for (const auto* p : fiber(pb, m.transitions.at(t))) target.push_back(p->id);
    auto pi = permutation_between(target, image);
    if (!pi) fail(ErrorCode::validation, "z2: port map is not a fiber bijection at " + t);
    return *pi;
  };
  SigmaMorphism out{m.places, {}};
  for (const auto& c : ga.net.classes) {
    // Class ids are ordering ids "<t>#<rank>" of the representative element.
    const auto hash = c.id.rfind('#');
    const TransitionId t = c.id.substr(0, hash);
    const auto rank = std::stoull(c.id.substr(hash + 1));
    const auto g = PermPair::unrank(c.src.size(), c.tgt.size(), rank);
    const PermPair pi{carried(src.inputs, dst.inputs, m.inputs, t), carried(src.outputs, dst.outputs, m.outputs, t)};
    out.classes[c.id] = gb.location.at(detail::ordering_id(m.transitions.at(t), g.compose(pi).rank()));
  }
  return out;
}

}  // namespace signet
