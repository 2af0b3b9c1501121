#pragma once

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "signet/nets.hpp"
#include "signet/sigma_view.hpp"

namespace signet {

/// Morphism of Petri nets or of pre-nets: a place map and a transition map.
struct NetMorphism {
  PlaceMap places;
  std::map<TransitionId, TransitionId> transitions;
  friend bool operator==(const NetMorphism&, const NetMorphism&) = default;
  friend auto operator<=>(const NetMorphism&, const NetMorphism&) = default;
};

/// Morphism of skeletal Σ-nets. Class c goes to class c' with a witness r, a
/// canonical left-coset representative of the isotropy of c', meaning the
/// representative of c is sent to r · representative(c').
struct SigmaMorphism {
  PlaceMap places;
  std::map<TransitionId, ClassImage> classes;
  friend bool operator==(const SigmaMorphism&, const SigmaMorphism&) = default;
};

struct WholeGrainMorphism {
  PlaceMap places;
  std::map<TransitionId, TransitionId> transitions;
  std::map<std::string, std::string> inputs;
  std::map<std::string, std::string> outputs;
  friend bool operator==(const WholeGrainMorphism&, const WholeGrainMorphism&) = default;
  friend auto operator<=>(const WholeGrainMorphism&, const WholeGrainMorphism&) = default;
};

inline bool operator<(const ClassImage& a, const ClassImage& b) {
  return std::tie(a.cls, a.witness) < std::tie(b.cls, b.witness);
}
inline bool operator<(const SigmaMorphism& a, const SigmaMorphism& b) {
  return std::tie(a.places, a.classes) < std::tie(b.places, b.classes);
}

template <class Net>
struct MorphismOf;
template <>
struct MorphismOf<PetriNet> {
  using type = NetMorphism;
};
template <>
struct MorphismOf<PreNet> {
  using type = NetMorphism;
};
template <>
struct MorphismOf<SigmaNet> {
  using type = SigmaMorphism;
};
template <>
struct MorphismOf<WholeGrainNet> {
  using type = WholeGrainMorphism;
};
template <class Net>
using MorphismOf_t = typename MorphismOf<Net>::type;

// ---------------------------------------------------------------------------
// Identities and composition.

namespace detail {
inline PlaceMap identity_places(const std::vector<PlaceId>& places) {
  PlaceMap f;
  for (const auto& p : places) f[p] = p;
  return f;
}
template <class K>
std::map<K, K> compose_maps(const std::map<K, K>& second, const std::map<K, K>& first) {
  std::map<K, K> out;
  for (const auto& [k, v] : first) {
    auto it = second.find(v);
    if (it == second.end()) fail(ErrorCode::validation, "composition: map undefined on " + v);
    out[k] = it->second;
  }
  return out;
}
}  // namespace detail

inline NetMorphism identity_morphism(const PetriNet& n) {
  NetMorphism m{detail::identity_places(n.places), {}};
  for (const auto& t : n.transitions) m.transitions[t.id] = t.id;
  return m;
}
inline NetMorphism identity_morphism(const PreNet& n) {
  NetMorphism m{detail::identity_places(n.places), {}};
  for (const auto& t : n.transitions) m.transitions[t.id] = t.id;
  return m;
}
inline SigmaMorphism identity_morphism(const SigmaNet& n) {
  SigmaMorphism m{detail::identity_places(n.places), {}};
  for (const auto& c : n.classes) m.classes[c.id] = {c.id, PermPair::identity(c.src.size(), c.tgt.size())};
  return m;
}
inline WholeGrainMorphism identity_morphism(const WholeGrainNet& n) {
  WholeGrainMorphism m{detail::identity_places(n.places), {}, {}, {}};
  for (const auto& t : n.transitions) m.transitions[t] = t;
  for (const auto& p : n.inputs) m.inputs[p.id] = p.id;
  for (const auto& p : n.outputs) m.outputs[p.id] = p.id;
  return m;
}

/// second ∘ first.
inline NetMorphism compose(const NetMorphism& second, const NetMorphism& first) {
  return {detail::compose_maps(second.places, first.places),
          detail::compose_maps(second.transitions, first.transitions)};
}

inline WholeGrainMorphism compose(const WholeGrainMorphism& second, const WholeGrainMorphism& first) {
  return {detail::compose_maps(second.places, first.places),
          detail::compose_maps(second.transitions, first.transitions),
          detail::compose_maps(second.inputs, first.inputs),
          detail::compose_maps(second.outputs, first.outputs)};
}

/// second ∘ first; `target` is the codomain of `second` and is used to bring
/// the composite witnesses back to canonical coset representatives.
inline SigmaMorphism compose(const SigmaMorphism& second, const SigmaMorphism& first, const SigmaNet& target) {
  SigmaMorphism out{detail::compose_maps(second.places, first.places), {}};
  for (const auto& [c, img] : first.classes) {
    auto it = second.classes.find(img.cls);
    if (it == second.classes.end()) fail(ErrorCode::validation, "composition: class map undefined on " + img.cls);
    const auto* cls = find_by_id(target.classes, it->second.cls);
    if (!cls) fail(ErrorCode::validation, "composition: unknown target class " + it->second.cls);
    out.classes[c] = {cls->id, cls->isotropy.coset_min(img.witness.compose(it->second.witness))};
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation.

namespace detail {
inline void check_place_map(const PlaceMap& f, const std::vector<PlaceId>& src, const std::vector<PlaceId>& dst,
                            std::vector<std::string>& errs) {
  for (const auto& p : src) {
    auto it = f.find(p);
    if (it == f.end())
      errs.push_back("place map undefined on " + p);
    else if (!has_place(dst, it->second))
      errs.push_back("place " + p + " mapped to unknown place " + it->second);
  }
  for (const auto& [p, q] : f)
    if (!has_place(src, p)) errs.push_back("place map mentions unknown place " + p);
}

template <class V, class T>
void check_total(const std::map<std::string, V>& g, const std::vector<T>& dom, const char* what,
                 std::vector<std::string>& errs) {
  for (const auto& x : dom)
    if (!g.count(x.id)) errs.push_back(std::string(what) + " map undefined on " + x.id);
  if (g.size() != dom.size()) {
    for (const auto& [k, v] : g)
      if (!find_by_id(dom, k)) errs.push_back(std::string(what) + " map mentions unknown " + k);
  }
}

template <class Net, class Ext>
std::vector<std::string> validate_plain(const NetMorphism& m, const Net& a, const Net& b, Ext extend) {
  std::vector<std::string> errs;
  check_place_map(m.places, a.places, b.places, errs);
  check_total(m.transitions, a.transitions, "transition", errs);
  if (!errs.empty()) return errs;
  for (const auto& t : a.transitions) {
    const auto& img = m.transitions.at(t.id);
    const auto* u = find_by_id(b.transitions, img);
    if (!u) {
      errs.push_back("transition " + t.id + " mapped to unknown transition " + img);
      continue;
    }
    if (extend(m.places, t.src) != u->src)
      errs.push_back("source square fails at " + t.id + " -> " + img);
    if (extend(m.places, t.tgt) != u->tgt)
      errs.push_back("target square fails at " + t.id + " -> " + img);
  }
  return errs;
}
}  // namespace detail

inline std::vector<std::string> validate_morphism(const NetMorphism& m, const PetriNet& a, const PetriNet& b) {
  return detail::validate_plain(m, a, b, [](const PlaceMap& f, const Multiset& x) { return extend_place_map(f, x); });
}

inline std::vector<std::string> validate_morphism(const NetMorphism& m, const PreNet& a, const PreNet& b) {
  return detail::validate_plain(m, a, b, [](const PlaceMap& f, const Word& x) { return extend_place_map(f, x); });
}

/// Component of a Σ-morphism on exploded transitions: element u of `va` goes
/// to result[u] in `vb`. Assumes the class map is total with known targets.
inline std::vector<std::size_t> sigma_components(const SigmaMorphism& m, const SigmaView& va, const SigmaView& vb) {
  std::vector<std::size_t> out(va.elements().size());
  for (std::size_t u = 0; u < out.size(); ++u) {
    const auto& e = va.elements()[u];
    const auto& img = m.classes.at(va.net().classes[e.cls].id);
    const auto c2 = index_by_id(vb.net().classes, img.cls);
    out[u] = vb.locate(c2, e.rep.compose(img.witness));
  }
  return out;
}

/// Checked in the presheaf view: the induced map on exploded transitions must
/// respect cells and commute with every adjacent transposition.
inline std::vector<std::string> validate_morphism(const SigmaMorphism& m, const SigmaNet& a, const SigmaNet& b,
                                                  const Limits& limits = default_limits()) {
  std::vector<std::string> errs;
  detail::check_place_map(m.places, a.places, b.places, errs);
  detail::check_total(m.classes, a.classes, "class", errs);
  for (const auto& c : a.classes) {
    auto it = m.classes.find(c.id);
    if (it == m.classes.end()) continue;
    const auto* d = find_by_id(b.classes, it->second.cls);
    if (!d) {
      errs.push_back("class " + c.id + " mapped to unknown class " + it->second.cls);
      continue;
    }
    if (d->src.size() != c.src.size() || d->tgt.size() != c.tgt.size() ||
        it->second.witness.m() != c.src.size() || it->second.witness.n() != c.tgt.size())
      errs.push_back("class " + c.id + " -> " + d->id + ": arity or witness degree mismatch");
  }
  if (!errs.empty()) return errs;

  SigmaView va(a, limits), vb(b, limits);
  const auto alpha = sigma_components(m, va, vb);
  for (std::size_t u = 0; u < alpha.size(); ++u) {
    const auto& e = va.elements()[u];
    const auto& f = vb.elements()[alpha[u]];
    if (extend_place_map(m.places, e.src) != f.src || extend_place_map(m.places, e.tgt) != f.tgt) {
      errs.push_back("cell condition fails at " + e.id + " -> " + f.id);
      continue;
    }
    const auto& table = SymmetricPairTable::get(e.src.size(), e.tgt.size());
    for (const auto& s : table.generators())
      if (alpha[va.act(s, u)] != vb.act(s, alpha[u])) {
        errs.push_back("naturality fails at " + e.id + " under " + to_string(s));
        break;
      }
  }
  return errs;
}

inline std::vector<std::string> validate_morphism(const WholeGrainMorphism& m, const WholeGrainNet& a,
                                                  const WholeGrainNet& b) {
  std::vector<std::string> errs;
  detail::check_place_map(m.places, a.places, b.places, errs);
  for (const auto& t : a.transitions) {
    auto it = m.transitions.find(t);
    if (it == m.transitions.end())
      errs.push_back("transition map undefined on " + t);
    else if (!std::binary_search(b.transitions.begin(), b.transitions.end(), it->second))
      errs.push_back("transition " + t + " mapped to unknown transition " + it->second);
  }
  if (m.transitions.size() != a.transitions.size()) errs.push_back("transition map has extra entries");
  detail::check_total(m.inputs, a.inputs, "input", errs);
  detail::check_total(m.outputs, a.outputs, "output", errs);
  if (!errs.empty()) return errs;

  auto check_side = [&](const std::vector<Port>& pa, const std::vector<Port>& pb,
                        const std::map<std::string, std::string>& g, const char* what) {
    for (const auto& p : pa) {
      const auto* q = find_by_id(pb, g.at(p.id));
      if (!q) {
        errs.push_back(std::string(what) + " port " + p.id + " mapped to unknown port " + g.at(p.id));
        continue;
      }
      if (q->place != m.places.at(p.place))
        errs.push_back(std::string(what) + " place square fails at " + p.id);
      if (q->transition != m.transitions.at(p.transition))
        errs.push_back(std::string(what) + " transition square fails at " + p.id);
    }
    if (!errs.empty()) return;
    // Pullback: over each transition the port map is a bijection of fibers.
    for (const auto& t : a.transitions) {
      const auto fa = fiber(pa, t);
      const auto fb = fiber(pb, m.transitions.at(t));
      std::set<std::string> hit;
      for (const auto* p : fa) hit.insert(g.at(p->id));
      if (hit.size() != fa.size() || fa.size() != fb.size())
        errs.push_back(std::string(what) + " square is not a pullback at transition " + t);
    }
  };
  check_side(a.inputs, b.inputs, m.inputs, "input");
  check_side(a.outputs, b.outputs, m.outputs, "output");
  return errs;
}

// ---------------------------------------------------------------------------
// Isomorphisms.

inline bool is_injective(const std::map<std::string, std::string>& g) {
  std::set<std::string> seen;
  for (const auto& [k, v] : g)
    if (!seen.insert(v).second) return false;
  return true;
}

/// A valid morphism is an isomorphism iff it is bijective on every component
/// (for Σ-nets: on places and on exploded transitions).
inline bool is_isomorphism(const NetMorphism& m, std::size_t dst_places, std::size_t dst_transitions) {
  return is_injective(m.places) && m.places.size() == dst_places && is_injective(m.transitions) &&
         m.transitions.size() == dst_transitions;
}

inline bool is_isomorphism(const SigmaMorphism& m, const SigmaNet& a, const SigmaNet& b) {
  if (!is_injective(m.places) || m.places.size() != b.places.size()) return false;
  if (m.classes.size() != b.classes.size()) return false;
  std::set<std::string> seen;
  for (const auto& c : a.classes) {
    const auto& img = m.classes.at(c.id);
    if (!seen.insert(img.cls).second) return false;
    if (find_by_id(b.classes, img.cls)->isotropy.order() != c.isotropy.order()) return false;
  }
  return true;
}

}  // namespace signet
