#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "signet/algebra.hpp"
#include "signet/perm_group.hpp"

namespace signet {

using TransitionId = std::string;

struct PetriTransition {
  TransitionId id;
  Multiset src;
  Multiset tgt;
  friend bool operator==(const PetriTransition&, const PetriTransition&) = default;
};

/// Transitions typed by multisets of places.
struct PetriNet {
  std::vector<PlaceId> places;
  std::vector<PetriTransition> transitions;
  friend bool operator==(const PetriNet&, const PetriNet&) = default;
};

struct PreTransition {
  TransitionId id;
  Word src;
  Word tgt;
  friend bool operator==(const PreTransition&, const PreTransition&) = default;
};

/// Transitions typed by words of places.
struct PreNet {
  std::vector<PlaceId> places;
  std::vector<PreTransition> transitions;
  friend bool operator==(const PreNet&, const PreNet&) = default;
};

/// One transition class of a Σ-net: a representative word pair together with
/// the subgroup of S_m × S_n acting trivially on the representative.
struct TransitionClass {
  TransitionId id;
  Word src;
  Word tgt;
  PermGroup isotropy;
  friend bool operator==(const TransitionClass&, const TransitionClass&) = default;
};

/// Σ-net in skeletal groupoid form.
struct SigmaNet {
  std::vector<PlaceId> places;
  std::vector<TransitionClass> classes;
  friend bool operator==(const SigmaNet&, const SigmaNet&) = default;
};

/// A transition of a Σ-net in presheaf form. The permutation action is given
/// on the adjacent transpositions: src_swaps[i] is the image of this
/// transition under swapping source positions i and i+1 (likewise tgt_swaps).
struct PresheafTransition {
  TransitionId id;
  Word src;
  Word tgt;
  std::vector<TransitionId> src_swaps;
  std::vector<TransitionId> tgt_swaps;
  friend bool operator==(const PresheafTransition&, const PresheafTransition&) = default;
};

struct SigmaNetPresheaf {
  std::vector<PlaceId> places;
  std::vector<PresheafTransition> transitions;
  friend bool operator==(const SigmaNetPresheaf&, const SigmaNetPresheaf&) = default;
};

struct Port {
  std::string id;
  PlaceId place;
  TransitionId transition;
  friend bool operator==(const Port&, const Port&) = default;
};

/// Span diagram S ← I → T ← O → S.
struct WholeGrainNet {
  std::vector<PlaceId> places;
  std::vector<TransitionId> transitions;
  std::vector<Port> inputs;
  std::vector<Port> outputs;
  friend bool operator==(const WholeGrainNet&, const WholeGrainNet&) = default;
};

// ---------------------------------------------------------------------------
// Canonical ordering. Every constructor in the library returns nets with
// places sorted and deduplicated and transitions sorted by id.

namespace detail {
template <class T>
void sort_by_id(std::vector<T>& xs) {
  std::sort(xs.begin(), xs.end(), [](const T& a, const T& b) { return a.id < b.id; });
}
inline void sort_unique(std::vector<std::string>& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}
}  // namespace detail

inline PetriNet canonical(PetriNet n) {
  detail::sort_unique(n.places);
  detail::sort_by_id(n.transitions);
  return n;
}
inline PreNet canonical(PreNet n) {
  detail::sort_unique(n.places);
  detail::sort_by_id(n.transitions);
  return n;
}
inline SigmaNet canonical(SigmaNet n) {
  detail::sort_unique(n.places);
  detail::sort_by_id(n.classes);
  return n;
}
inline SigmaNetPresheaf canonical(SigmaNetPresheaf n) {
  detail::sort_unique(n.places);
  detail::sort_by_id(n.transitions);
  return n;
}
inline WholeGrainNet canonical(WholeGrainNet n) {
  detail::sort_unique(n.places);
  detail::sort_unique(n.transitions);
  detail::sort_by_id(n.inputs);
  detail::sort_by_id(n.outputs);
  return n;
}

template <class T>
const T* find_by_id(const std::vector<T>& xs, const std::string& id) {
  auto it = std::lower_bound(xs.begin(), xs.end(), id,
                             [](const T& x, const std::string& key) { return x.id < key; });
  if (it != xs.end() && it->id == id) return &*it;
  return nullptr;
}

template <class T>
std::size_t index_by_id(const std::vector<T>& xs, const std::string& id) {
  const T* p = find_by_id(xs, id);
  if (!p) fail(ErrorCode::validation, "unknown id " + id);
  return static_cast<std::size_t>(p - xs.data());
}

inline bool has_place(const std::vector<PlaceId>& places, const PlaceId& p) {
  return std::binary_search(places.begin(), places.end(), p);
}

// ---------------------------------------------------------------------------
// Validation: each returns the list of violated invariants (empty = valid).

namespace detail {
inline void check_sorted_places(const std::vector<PlaceId>& places, std::vector<std::string>& errs) {
  for (std::size_t i = 1; i < places.size(); ++i)
    if (!(places[i - 1] < places[i])) errs.push_back("places not sorted or duplicated at " + places[i]);
}
template <class T>
void check_sorted_ids(const std::vector<T>& xs, const char* what, std::vector<std::string>& errs) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i - 1].id < xs[i].id)) errs.push_back(std::string(what) + " ids not sorted or duplicated at " + xs[i].id);
}
inline void check_word(const std::vector<PlaceId>& places, const Word& w, const std::string& where,
                       std::vector<std::string>& errs) {
  for (const auto& p : w)
    if (!has_place(places, p)) errs.push_back(where + " references unknown place " + p);
}
}  // namespace detail

inline std::vector<std::string> validate_net(const PetriNet& n) {
  std::vector<std::string> errs;
  detail::check_sorted_places(n.places, errs);
  detail::check_sorted_ids(n.transitions, "transition", errs);
  for (const auto& t : n.transitions) {
    detail::check_word(n.places, t.src.sorted_word(), "transition " + t.id + " source", errs);
    detail::check_word(n.places, t.tgt.sorted_word(), "transition " + t.id + " target", errs);
  }
  return errs;
}

inline std::vector<std::string> validate_net(const PreNet& n) {
  std::vector<std::string> errs;
  detail::check_sorted_places(n.places, errs);
  detail::check_sorted_ids(n.transitions, "transition", errs);
  for (const auto& t : n.transitions) {
    detail::check_word(n.places, t.src, "transition " + t.id + " source", errs);
    detail::check_word(n.places, t.tgt, "transition " + t.id + " target", errs);
  }
  return errs;
}

inline std::vector<std::string> validate_net(const SigmaNet& n) {
  std::vector<std::string> errs;
  detail::check_sorted_places(n.places, errs);
  detail::check_sorted_ids(n.classes, "class", errs);
  for (const auto& c : n.classes) {
    detail::check_word(n.places, c.src, "class " + c.id + " source", errs);
    detail::check_word(n.places, c.tgt, "class " + c.id + " target", errs);
    if (c.isotropy.m() != c.src.size() || c.isotropy.n() != c.tgt.size()) {
      errs.push_back("class " + c.id + ": isotropy degree does not match its words");
      continue;
    }
    for (const auto& g : c.isotropy.elements()) {
      if (apply_pair(g, c.src, c.tgt) != std::pair{c.src, c.tgt}) {
        errs.push_back("class " + c.id + ": isotropy not word-fixing (" + to_string(g) + ")");
        break;
      }
    }
  }
  return errs;
}

inline std::vector<std::string> validate_net(const WholeGrainNet& n) {
  std::vector<std::string> errs;
  detail::check_sorted_places(n.places, errs);
  for (std::size_t i = 1; i < n.transitions.size(); ++i)
    if (!(n.transitions[i - 1] < n.transitions[i]))
      errs.push_back("transitions not sorted or duplicated at " + n.transitions[i]);
  detail::check_sorted_ids(n.inputs, "input port", errs);
  detail::check_sorted_ids(n.outputs, "output port", errs);
  auto check_ports = [&](const std::vector<Port>& ports, const char* what) {
    for (const auto& p : ports) {
      if (!has_place(n.places, p.place))
        errs.push_back(std::string(what) + " port " + p.id + " maps to unknown place " + p.place);
      if (!std::binary_search(n.transitions.begin(), n.transitions.end(), p.transition))
        errs.push_back(std::string(what) + " port " + p.id + " maps to unknown transition " + p.transition);
    }
  };
  check_ports(n.inputs, "input");
  check_ports(n.outputs, "output");
  return errs;
}

// ---------------------------------------------------------------------------
// Whole-grain fibers.

/// Ports over transition t, sorted by port id.
inline std::vector<const Port*> fiber(const std::vector<Port>& ports, const TransitionId& t) {
  std::vector<const Port*> out;
  for (const auto& p : ports)
    if (p.transition == t) out.push_back(&p);
  return out;
}

inline Word fiber_places(const std::vector<const Port*>& ports) {
  Word w;
  for (const auto* p : ports) w.push_back(p->place);
  return w;
}

}  // namespace signet
