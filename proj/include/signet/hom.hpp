#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <type_traits>
#include <vector>

#include "signet/morphisms.hpp"

namespace signet {

namespace detail {

class Budget {
 public:
  explicit Budget(const Limits& limits) : max_(limits.max_candidates) {}
  void spend(double n, const char* what) {
    used_ += n;
    if (used_ > static_cast<double>(max_))
      fail(ErrorCode::capacity, std::string(what) + ": search space exceeds " + std::to_string(max_) + " candidates");
  }

 private:
  std::size_t max_;
  double used_ = 0;
};

/// Every function a → b, as place maps, in lexicographic order of images.
template <class Visit>
void for_each_place_map(const std::vector<PlaceId>& a, const std::vector<PlaceId>& b, Budget& budget, Visit visit) {
  budget.spend(std::pow(static_cast<double>(b.size()), static_cast<double>(a.size())), "place maps");
  if (!a.empty() && b.empty()) return;
  std::vector<std::size_t> idx(a.size(), 0);
  while (true) {
    PlaceMap f;
    for (std::size_t i = 0; i < a.size(); ++i) f[a[i]] = b[idx[i]];
    visit(f);
    std::size_t k = a.size();
    while (k > 0 && ++idx[k - 1] == b.size()) idx[--k] = 0;
    if (k == 0) return;
  }
}

/// Every choice of one candidate per slot, in lexicographic order.
template <class C, class Visit>
void for_each_choice(const std::vector<std::vector<C>>& slots, Budget& budget, Visit visit) {
  double total = 1;
  for (const auto& s : slots) total *= static_cast<double>(s.size());
  if (total == 0) return;
  budget.spend(total, "transition assignments");
  std::vector<std::size_t> idx(slots.size(), 0);
  while (true) {
    visit(idx);
    std::size_t k = slots.size();
    while (k > 0 && ++idx[k - 1] == slots[k - 1].size()) idx[--k] = 0;
    if (k == 0) return;
  }
}

template <class Net, class Ext>
std::vector<NetMorphism> hom_plain(const Net& a, const Net& b, const Limits& limits, Ext extend) {
  std::vector<NetMorphism> out;
  Budget budget(limits);
  for_each_place_map(a.places, b.places, budget, [&](const PlaceMap& f) {
    std::vector<std::vector<const TransitionId*>> slots;
    for (const auto& t : a.transitions) {
      const auto s = extend(f, t.src);
      const auto g = extend(f, t.tgt);
      std::vector<const TransitionId*> cands;
      for (const auto& u : b.transitions)
        if (u.src == s && u.tgt == g) cands.push_back(&u.id);
      if (cands.empty()) return;
      slots.push_back(std::move(cands));
    }
    for_each_choice(slots, budget, [&](const std::vector<std::size_t>& idx) {
      NetMorphism m{f, {}};
      for (std::size_t i = 0; i < idx.size(); ++i) m.transitions[a.transitions[i].id] = *slots[i][idx[i]];
      out.push_back(std::move(m));
    });
  });
  return out;
}

}  // namespace detail

/// All morphisms a → b, by exhaustive search over place maps and transition
/// assignments.
inline std::vector<NetMorphism> hom_set(const PetriNet& a, const PetriNet& b, const Limits& limits = default_limits()) {
  return detail::hom_plain(a, b, limits, [](const PlaceMap& f, const Multiset& x) { return extend_place_map(f, x); });
}

inline std::vector<NetMorphism> hom_set(const PreNet& a, const PreNet& b, const Limits& limits = default_limits()) {
  return detail::hom_plain(a, b, limits, [](const PlaceMap& f, const Word& x) { return extend_place_map(f, x); });
}

/// Each class of `a` goes to an exploded transition of `b` in the right cell
/// whose stabilizer contains the isotropy of the class.
inline std::vector<SigmaMorphism> hom_set(const SigmaNet& a, const SigmaNet& b, const Limits& limits = default_limits()) {
  const SigmaView vb(b, limits);
  std::map<std::pair<Word, Word>, std::vector<std::size_t>> cells;
  for (std::size_t v = 0; v < vb.elements().size(); ++v)
    cells[{vb.elements()[v].src, vb.elements()[v].tgt}].push_back(v);

  std::vector<SigmaMorphism> out;
  detail::Budget budget(limits);
  detail::for_each_place_map(a.places, b.places, budget, [&](const PlaceMap& f) {
    std::vector<std::vector<ClassImage>> slots;
    for (const auto& c : a.classes) {
      auto it = cells.find({extend_place_map(f, c.src), extend_place_map(f, c.tgt)});
      if (it == cells.end()) return;
      std::vector<ClassImage> cands;
      for (auto v : it->second) {
        const auto& e = vb.elements()[v];
        const auto& target = b.classes[e.cls];
        if (target.isotropy.conjugate_contains(e.rep, c.isotropy)) cands.push_back({target.id, e.rep});
      }
      if (cands.empty()) return;
      slots.push_back(std::move(cands));
    }
    detail::for_each_choice(slots, budget, [&](const std::vector<std::size_t>& idx) {
      SigmaMorphism m{f, {}};
      for (std::size_t i = 0; i < idx.size(); ++i) m.classes[a.classes[i].id] = slots[i][idx[i]];
      out.push_back(std::move(m));
    });
  });
  return out;
}

namespace detail {
struct FiberChoice {
  TransitionId target;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<std::pair<std::string, std::string>> outputs;
};

/// Bijections from fiber `from` onto fiber `to` covering the place map.
inline std::vector<std::vector<std::pair<std::string, std::string>>> fiber_bijections(
    const std::vector<const Port*>& from, const std::vector<const Port*>& to, const PlaceMap& f) {
  std::vector<std::vector<std::pair<std::string, std::string>>> out;
  if (from.size() != to.size()) return out;
  for (const auto& p : all_permutations(from.size())) {
    std::vector<std::pair<std::string, std::string>> m;
    bool ok = true;
    for (std::size_t i = 0; i < from.size() && ok; ++i) {
      const auto* q = to[static_cast<std::size_t>(p(i))];
      ok = f.at(from[i]->place) == q->place;
      m.emplace_back(from[i]->id, q->id);
    }
    if (ok) out.push_back(std::move(m));
  }
  return out;
}
}  // namespace detail

/// Étale maps: transitions are sent to transitions with the input and output
/// fibers carried bijectively and compatibly with the place map.
inline std::vector<WholeGrainMorphism> hom_set(const WholeGrainNet& a, const WholeGrainNet& b,
                                               const Limits& limits = default_limits()) {
  std::map<TransitionId, std::pair<std::vector<const Port*>, std::vector<const Port*>>> fa, fb;
  for (const auto& t : a.transitions) {
    fa[t] = {fiber(a.inputs, t), fiber(a.outputs, t)};
    check_degree(fa[t].first.size(), fa[t].second.size(), limits);
  }
  for (const auto& t : b.transitions) fb[t] = {fiber(b.inputs, t), fiber(b.outputs, t)};

  std::vector<WholeGrainMorphism> out;
  detail::Budget budget(limits);
  detail::for_each_place_map(a.places, b.places, budget, [&](const PlaceMap& f) {
    std::vector<std::vector<detail::FiberChoice>> slots;
    for (const auto& t : a.transitions) {
      std::vector<detail::FiberChoice> cands;
      for (const auto& u : b.transitions) {
        const auto ins = detail::fiber_bijections(fa[t].first, fb[u].first, f);
        if (ins.empty()) continue;
        const auto outs = detail::fiber_bijections(fa[t].second, fb[u].second, f);
        for (const auto& i : ins)
          for (const auto& o : outs) cands.push_back({u, i, o});
      }
      if (cands.empty()) return;
      slots.push_back(std::move(cands));
    }
    detail::for_each_choice(slots, budget, [&](const std::vector<std::size_t>& idx) {
      WholeGrainMorphism m{f, {}, {}, {}};
      for (std::size_t i = 0; i < idx.size(); ++i) {
        const auto& ch = slots[i][idx[i]];
        m.transitions[a.transitions[i]] = ch.target;
        for (const auto& [x, y] : ch.inputs) m.inputs[x] = y;
        for (const auto& [x, y] : ch.outputs) m.outputs[x] = y;
      }
      out.push_back(std::move(m));
    });
  });
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism search.

namespace detail {

/// Backtracking over place bijections a → b that respect per-place signature
/// strings and the pinned assignments. Stops at the first bijection for
/// which `leaf` returns true.
template <class Leaf>
bool search_place_bijections(const std::vector<PlaceId>& a, const std::vector<PlaceId>& b,
                             const std::vector<std::string>& sig_a, const std::vector<std::string>& sig_b,
                             const PlaceMap& pins, const Limits& limits, Leaf leaf) {
  if (a.size() != b.size()) return false;
  if (std::multiset<std::string>(sig_a.begin(), sig_a.end()) != std::multiset<std::string>(sig_b.begin(), sig_b.end()))
    return false;
  std::vector<bool> used(b.size(), false);
  PlaceMap f;
  std::size_t visited = 0;
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (++visited > limits.max_candidates) fail(ErrorCode::capacity, "isomorphism search exceeds the candidate bound");
    if (i == a.size()) return leaf(f);
    auto pin = pins.find(a[i]);
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j] || sig_a[i] != sig_b[j]) continue;
      if (pin != pins.end() && pin->second != b[j]) continue;
      used[j] = true;
      f[a[i]] = b[j];
      if (self(self, i + 1)) return true;
      used[j] = false;
    }
    f.erase(a[i]);
    return false;
  };
  return rec(rec, 0);
}

template <class T>
std::string place_signature(const PlaceId& p, const std::vector<T>& transitions) {
  std::vector<std::string> parts;
  for (const auto& t : transitions) {
    std::string s, g;
    if constexpr (std::is_same_v<decltype(t.src), Multiset>) {
      s = std::to_string(t.src.count(p));
      g = std::to_string(t.tgt.count(p));
    } else {
      for (std::size_t i = 0; i < t.src.size(); ++i)
        if (t.src[i] == p) s += std::to_string(i) + ".";
      for (std::size_t i = 0; i < t.tgt.size(); ++i)
        if (t.tgt[i] == p) g += std::to_string(i) + ".";
    }
    if (s.empty() || s == "0") {
      if (g.empty() || g == "0") continue;
    }
    parts.push_back(s + "/" + g + "/" + std::to_string(t.src.size()) + "/" + std::to_string(t.tgt.size()));
  }
  std::sort(parts.begin(), parts.end());
  return join(parts, ";");
}

template <class Net>
std::vector<std::string> place_signatures(const Net& n) {
  std::vector<std::string> out;
  for (const auto& p : n.places) out.push_back(place_signature(p, n.transitions));
  return out;
}

template <class Net, class Ext>
std::optional<NetMorphism> iso_plain(const Net& a, const Net& b, const PlaceMap& pins, const Limits& limits,
                                     Ext extend) {
  if (a.transitions.size() != b.transitions.size()) return std::nullopt;
  using Type = std::pair<decltype(a.transitions[0].src), decltype(a.transitions[0].src)>;
  std::map<Type, std::vector<TransitionId>> by_type;
  for (const auto& u : b.transitions) by_type[{u.src, u.tgt}].push_back(u.id);
  std::optional<NetMorphism> found;
  search_place_bijections(a.places, b.places, place_signatures(a), place_signatures(b), pins, limits,
                          [&](const PlaceMap& f) {
                            std::map<Type, std::vector<TransitionId>> mine;
                            for (const auto& t : a.transitions) mine[{extend(f, t.src), extend(f, t.tgt)}].push_back(t.id);
                            if (mine.size() != by_type.size()) return false;
                            NetMorphism m{f, {}};
                            for (const auto& [ty, ids] : mine) {
                              auto it = by_type.find(ty);
                              if (it == by_type.end() || it->second.size() != ids.size()) return false;
                              for (std::size_t i = 0; i < ids.size(); ++i) m.transitions[ids[i]] = it->second[i];
                            }
                            found = std::move(m);
                            return true;
                          });
  return found;
}

}  // namespace detail

/// An isomorphism a → b sending each pinned place to its pinned image, if any.
inline std::optional<NetMorphism> net_isomorphic(const PetriNet& a, const PetriNet& b, const PlaceMap& pins = {},
                                                 const Limits& limits = default_limits()) {
  return detail::iso_plain(a, b, pins, limits,
                           [](const PlaceMap& f, const Multiset& x) { return extend_place_map(f, x); });
}

inline std::optional<NetMorphism> net_isomorphic(const PreNet& a, const PreNet& b, const PlaceMap& pins = {},
                                                 const Limits& limits = default_limits()) {
  return detail::iso_plain(a, b, pins, limits, [](const PlaceMap& f, const Word& x) { return extend_place_map(f, x); });
}

inline std::optional<SigmaMorphism> net_isomorphic(const SigmaNet& a, const SigmaNet& b, const PlaceMap& pins = {},
                                                   const Limits& limits = default_limits()) {
  if (a.classes.size() != b.classes.size()) return std::nullopt;
  // Place signatures ignore ordering inside words: classes are only defined
  // up to the permutation action.
  auto sigs = [](const SigmaNet& n) {
    std::vector<std::string> out;
    for (const auto& p : n.places) {
      std::vector<std::string> parts;
      for (const auto& c : n.classes) {
        const auto s = std::count(c.src.begin(), c.src.end(), p);
        const auto t = std::count(c.tgt.begin(), c.tgt.end(), p);
        if (s || t)
          parts.push_back(std::to_string(s) + "/" + std::to_string(t) + "/" + std::to_string(c.src.size()) + "/" +
                          std::to_string(c.tgt.size()) + "/" + std::to_string(c.isotropy.order()));
      }
      std::sort(parts.begin(), parts.end());
      out.push_back(join(parts, ";"));
    }
    return out;
  };
  const SigmaView vb(b, limits);
  std::map<std::pair<Word, Word>, std::vector<std::size_t>> cells;
  for (std::size_t v = 0; v < vb.elements().size(); ++v)
    cells[{vb.elements()[v].src, vb.elements()[v].tgt}].push_back(v);

  std::optional<SigmaMorphism> found;
  detail::search_place_bijections(a.places, b.places, sigs(a), sigs(b), pins, limits, [&](const PlaceMap& f) {
    std::vector<std::vector<ClassImage>> cands;
    for (const auto& c : a.classes) {
      std::vector<ClassImage> cs;
      auto it = cells.find({extend_place_map(f, c.src), extend_place_map(f, c.tgt)});
      if (it != cells.end())
        for (auto v : it->second) {
          const auto& e = vb.elements()[v];
          const auto& d = b.classes[e.cls];
          if (d.isotropy.order() == c.isotropy.order() && d.isotropy.conjugate_contains(e.rep, c.isotropy))
            cs.push_back({d.id, e.rep});
        }
      if (cs.empty()) return false;
      cands.push_back(std::move(cs));
    }
    // Perfect matching of classes onto distinct target classes.
    std::set<TransitionId> used;
    SigmaMorphism m{f, {}};
    auto match = [&](auto&& self, std::size_t i) -> bool {
      if (i == a.classes.size()) return true;
      for (const auto& ci : cands[i]) {
        if (used.count(ci.cls)) continue;
        used.insert(ci.cls);
        m.classes[a.classes[i].id] = ci;
        if (self(self, i + 1)) return true;
        used.erase(ci.cls);
      }
      return false;
    };
    if (!match(match, 0)) return false;
    found = std::move(m);
    return true;
  });
  return found;
}

/// Forgets port identities: each transition becomes a Petri transition on the
/// multisets of its fiber places.
inline PetriNet erase_ports(const WholeGrainNet& n) {
  PetriNet p{n.places, {}};
  for (const auto& t : n.transitions)
    p.transitions.push_back({t, Multiset::from_word(fiber_places(fiber(n.inputs, t))),
                             Multiset::from_word(fiber_places(fiber(n.outputs, t)))});
  return p;
}

/// Whole-grain nets are isomorphic iff their port erasures are: the fiber
/// bijections can then be chosen freely among ports over matching places.
inline std::optional<WholeGrainMorphism> net_isomorphic(const WholeGrainNet& a, const WholeGrainNet& b,
                                                        const PlaceMap& pins = {},
                                                        const Limits& limits = default_limits()) {
  if (a.inputs.size() != b.inputs.size() || a.outputs.size() != b.outputs.size()) return std::nullopt;
  const auto base = net_isomorphic(erase_ports(a), erase_ports(b), pins, limits);
  if (!base) return std::nullopt;
  WholeGrainMorphism m{base->places, base->transitions, {}, {}};
  auto zip = [&](const std::vector<Port>& pa, const std::vector<Port>& pb, std::map<std::string, std::string>& out) {
    for (const auto& t : a.transitions) {
      auto fa = fiber(pa, t);
      auto fb = fiber(pb, m.transitions.at(t));
      std::stable_sort(fa.begin(), fa.end(), [&](const Port* x, const Port* y) {
        return m.places.at(x->place) < m.places.at(y->place);
      });
      std::stable_sort(fb.begin(), fb.end(), [](const Port* x, const Port* y) { return x->place < y->place; });
      for (std::size_t i = 0; i < fa.size(); ++i) out[fa[i]->id] = fb[i]->id;
    }
  };
  zip(a.inputs, b.inputs, m.inputs);
  zip(a.outputs, b.outputs, m.outputs);
  return m;
}

/// Presheaf-form Σ-nets are compared through their skeletal forms.
inline bool presheaf_isomorphic(const SigmaNetPresheaf& a, const SigmaNetPresheaf& b,
                                const Limits& limits = default_limits()) {
  return net_isomorphic(to_groupoid(a, limits), to_groupoid(b, limits), {}, limits).has_value();
}

}  // namespace signet
