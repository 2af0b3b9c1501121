#pragma once

#include <set>
#include <vector>

#include "signet/freecat.hpp"
#include "signet/translations.hpp"

namespace signet {

/// Class counts of one hom window computed along both routes from a Petri
/// net to a commutative monoidal category: directly, and through G_pet, the
/// free SSMC, and the collapse of symmetries.
struct WindowComparison {
  Multiset from;
  Multiset to;
  std::size_t direct = 0;
  std::size_t via_sigma = 0;
  bool decided = false;
  bool agree() const { return direct == via_sigma; }
};

inline WindowComparison compare_window(const PetriNet& p, const Multiset& x, const Multiset& y, std::size_t max_gens,
                                       const EquivBudget& budget = {}) {
  const auto direct = enumerate_homs(present_free(p, Flavor::cmc), x.sorted_word(), y.sorted_word(), max_gens, budget);
  const auto collapsed = collapse_to_cmc(present_free(g_pet(p), Flavor::ssmc));
  const auto via = enumerate_homs(collapsed, x.sorted_word(), y.sorted_word(), max_gens, budget);
  return {x, y, direct.classes.size(), via.classes.size(), direct.decided() && via.decided()};
}

struct SquareReport {
  std::size_t presentations = 0;
  std::size_t presentations_equal = 0;
  std::vector<WindowComparison> windows;

  std::size_t decided() const {
    std::size_t n = 0;
    for (const auto& w : windows) n += w.decided;
    return n;
  }
  std::size_t agreeing() const {
    std::size_t n = 0;
    for (const auto& w : windows) n += w.decided && w.agree();
    return n;
  }
  double skip_rate() const { return windows.empty() ? 0.0 : 1.0 - double(decided()) / double(windows.size()); }
};

/// Presentation-level check of F_SSMC ∘ F_Σ ∘ F_pre against the free SSMC
/// on a pre-net.
inline bool presentation_square(const PreNet& q) {
  return present_free(f_pre(q), Flavor::ssmc) == present_free(q, Flavor::ssmc);
}

/// Every marking reachable from x in at most k firings, x included.
inline std::vector<Multiset> reachable_within(const PetriNet& p, const Multiset& x, std::size_t k) {
  std::set<Multiset> seen{x};
  std::vector<Multiset> layer{x};
  for (std::size_t s = 0; s < k; ++s) {
    std::vector<Multiset> next;
    for (const auto& m : layer)
      for (const auto& t : p.transitions)
        if (enabled(t, m)) {
          auto m2 = fire(t, m);
          if (seen.insert(m2).second) next.push_back(std::move(m2));
        }
    layer = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

/// Runs both square checks: presentation equality on each pre-net, and
/// window agreement on each Petri net for every window whose source is the
/// input of some transition and whose target is reachable from it.
inline SquareReport check_squares(const std::vector<PreNet>& prenets, const std::vector<PetriNet>& petri,
                                  std::size_t max_gens, const EquivBudget& budget = {}) {
  SquareReport r;
  for (const auto& q : prenets) {
    ++r.presentations;
    r.presentations_equal += presentation_square(q);
  }
  for (const auto& p : petri) {
    std::set<Multiset> sources;
    for (const auto& t : p.transitions) sources.insert(t.src);
    for (const auto& x : sources)
      for (const auto& y : reachable_within(p, x, max_gens)) r.windows.push_back(compare_window(p, x, y, max_gens, budget));
  }
  return r;
}

}  // namespace signet
