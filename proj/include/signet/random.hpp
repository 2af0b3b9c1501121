#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "signet/morphisms.hpp"

namespace signet {

/// Shape bounds for randomly generated nets.
struct RandomNetOptions {
  std::size_t min_places = 1;
  std::size_t max_places = 3;
  std::size_t max_transitions = 3;
  std::size_t max_word = 3;
  /// Isotropy is generated by at most this many random stabilizer elements.
  std::size_t max_isotropy_gens = 2;
};

using Rng = std::mt19937_64;

/// Deterministic per-trial generator.
inline Rng trial_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

inline std::vector<PlaceId> random_places(Rng& rng, const RandomNetOptions& o, const std::string& prefix = "p") {
  std::vector<PlaceId> ps;
  const auto k = uniform(rng, o.min_places, o.max_places);
  for (std::size_t i = 0; i < k; ++i) ps.push_back(prefix + std::to_string(i));
  return ps;
}

inline Word random_word(Rng& rng, const std::vector<PlaceId>& places, std::size_t max_len) {
  Word w;
  if (places.empty()) return w;
  const auto len = uniform(rng, 0, max_len);
  for (std::size_t i = 0; i < len; ++i) w.push_back(places[rng() % places.size()]);
  return w;
}

inline PreNet random_prenet(Rng& rng, const RandomNetOptions& o = {}) {
  PreNet n{random_places(rng, o), {}};
  const auto k = uniform(rng, 0, o.max_transitions);
  for (std::size_t i = 0; i < k; ++i)
    n.transitions.push_back({"t" + std::to_string(i), random_word(rng, n.places, o.max_word),
                             random_word(rng, n.places, o.max_word)});
  return canonical(std::move(n));
}

inline PetriNet random_petri(Rng& rng, const RandomNetOptions& o = {}) {
  PetriNet n{random_places(rng, o), {}};
  const auto k = uniform(rng, 0, o.max_transitions);
  for (std::size_t i = 0; i < k; ++i)
    n.transitions.push_back({"t" + std::to_string(i), Multiset::from_word(random_word(rng, n.places, o.max_word)),
                             Multiset::from_word(random_word(rng, n.places, o.max_word))});
  return canonical(std::move(n));
}

/// A random subgroup of the stabilizer of (a, b).
inline PermGroup random_isotropy(Rng& rng, const Word& a, const Word& b, std::size_t max_gens) {
  const auto stab = stabilizer(a, b);
  std::vector<PermPair> gens;
  const auto k = uniform(rng, 0, max_gens);
  for (std::size_t i = 0; i < k; ++i) gens.push_back(stab.elements()[rng() % stab.order()]);
  return group_closure(gens, a.size(), b.size());
}

inline SigmaNet random_sigma(Rng& rng, const RandomNetOptions& o = {}) {
  SigmaNet n{random_places(rng, o), {}};
  const auto k = uniform(rng, 0, o.max_transitions);
  for (std::size_t i = 0; i < k; ++i) {
    auto a = random_word(rng, n.places, o.max_word);
    auto b = random_word(rng, n.places, o.max_word);
    auto g = random_isotropy(rng, a, b, o.max_isotropy_gens);
    n.classes.push_back({"c" + std::to_string(i), std::move(a), std::move(b), std::move(g)});
  }
  return canonical(std::move(n));
}

inline WholeGrainNet random_wholegrain(Rng& rng, const RandomNetOptions& o = {}) {
  WholeGrainNet n{random_places(rng, o), {}, {}, {}};
  const auto k = uniform(rng, 0, o.max_transitions);
  std::size_t ports = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto t = "t" + std::to_string(i);
    n.transitions.push_back(t);
    for (const auto& p : random_word(rng, n.places, o.max_word)) n.inputs.push_back({"i" + std::to_string(ports++), p, t});
    for (const auto& p : random_word(rng, n.places, o.max_word)) n.outputs.push_back({"o" + std::to_string(ports++), p, t});
  }
  return canonical(std::move(n));
}

/// A random surjection of the places of a net onto a fresh, possibly smaller,
/// place set "q0", "q1", ...
inline PlaceMap random_place_merge(Rng& rng, const std::vector<PlaceId>& places) {
  PlaceMap f;
  if (places.empty()) return f;
  const auto k = uniform(rng, 1, places.size());
  std::vector<std::size_t> img(places.size());
  for (std::size_t i = 0; i < places.size(); ++i) img[i] = i < k ? i : static_cast<std::size_t>(rng() % k);
  std::shuffle(img.begin(), img.end(), rng);
  for (std::size_t i = 0; i < places.size(); ++i) f[places[i]] = "q" + std::to_string(img[i]);
  return f;
}

inline std::vector<PlaceId> image_places(const PlaceMap& f) {
  std::vector<PlaceId> out;
  for (const auto& [p, q] : f) out.push_back(q);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Pushing a net forward along a place map keeps every transition, so the
// result receives at least one morphism from the original. Extra random
// transitions make the hom-sets less trivial.

inline PreNet push_forward(Rng& rng, const PreNet& n, const PlaceMap& f, const RandomNetOptions& o = {}) {
  PreNet out{image_places(f), {}};
  for (const auto& t : n.transitions)
    out.transitions.push_back({t.id + "'", extend_place_map(f, t.src), extend_place_map(f, t.tgt)});
  const auto extra = uniform(rng, 0, 1);
  for (std::size_t i = 0; i < extra; ++i)
    out.transitions.push_back({"x" + std::to_string(i), random_word(rng, out.places, o.max_word),
                               random_word(rng, out.places, o.max_word)});
  return canonical(std::move(out));
}

inline PetriNet push_forward(Rng& rng, const PetriNet& n, const PlaceMap& f, const RandomNetOptions& o = {}) {
  PetriNet out{image_places(f), {}};
  for (const auto& t : n.transitions)
    out.transitions.push_back({t.id + "'", extend_place_map(f, t.src), extend_place_map(f, t.tgt)});
  const auto extra = uniform(rng, 0, 1);
  for (std::size_t i = 0; i < extra; ++i)
    out.transitions.push_back({"x" + std::to_string(i), Multiset::from_word(random_word(rng, out.places, o.max_word)),
                               Multiset::from_word(random_word(rng, out.places, o.max_word))});
  return canonical(std::move(out));
}

/// Classes keep their isotropy or grow it inside the stabilizer of the image.
inline SigmaNet push_forward(Rng& rng, const SigmaNet& n, const PlaceMap& f, const RandomNetOptions& o = {}) {
  SigmaNet out{image_places(f), {}};
  for (const auto& c : n.classes) {
    auto a = extend_place_map(f, c.src);
    auto b = extend_place_map(f, c.tgt);
    auto gens = c.isotropy.canonical_generators();
    if (rng() % 2) {
      const auto stab = stabilizer(a, b);
      gens.push_back(stab.elements()[rng() % stab.order()]);
    }
    auto g = group_closure(gens, a.size(), b.size());
    out.classes.push_back({c.id + "'", std::move(a), std::move(b), std::move(g)});
  }
  const auto extra = uniform(rng, 0, 1);
  for (std::size_t i = 0; i < extra; ++i) {
    auto a = random_word(rng, out.places, o.max_word);
    auto b = random_word(rng, out.places, o.max_word);
    auto g = random_isotropy(rng, a, b, o.max_isotropy_gens);
    out.classes.push_back({"x" + std::to_string(i), std::move(a), std::move(b), std::move(g)});
  }
  return canonical(std::move(out));
}

inline WholeGrainNet push_forward(Rng& rng, const WholeGrainNet& n, const PlaceMap& f, const RandomNetOptions& o = {}) {
  WholeGrainNet out{image_places(f), {}, {}, {}};
  for (const auto& t : n.transitions) out.transitions.push_back(t + "'");
  for (const auto& p : n.inputs) out.inputs.push_back({p.id + "'", f.at(p.place), p.transition + "'"});
  for (const auto& p : n.outputs) out.outputs.push_back({p.id + "'", f.at(p.place), p.transition + "'"});
  if (rng() % 2) {
    out.transitions.push_back("x0");
    std::size_t k = 0;
    for (const auto& p : random_word(rng, out.places, o.max_word)) out.inputs.push_back({"xi" + std::to_string(k++), p, "x0"});
    for (const auto& p : random_word(rng, out.places, o.max_word)) out.outputs.push_back({"xo" + std::to_string(k++), p, "x0"});
  }
  return canonical(std::move(out));
}

/// The morphism n → push_forward(n, f) sending each transition to its primed copy.
inline NetMorphism pushed_morphism(const PreNet& n, const PlaceMap& f) {
  NetMorphism m{f, {}};
  for (const auto& t : n.transitions) m.transitions[t.id] = t.id + "'";
  return m;
}

inline NetMorphism pushed_morphism(const PetriNet& n, const PlaceMap& f) {
  NetMorphism m{f, {}};
  for (const auto& t : n.transitions) m.transitions[t.id] = t.id + "'";
  return m;
}

inline SigmaMorphism pushed_morphism(const SigmaNet& n, const PlaceMap& f) {
  SigmaMorphism m{f, {}};
  for (const auto& c : n.classes) m.classes[c.id] = {c.id + "'", PermPair::identity(c.src.size(), c.tgt.size())};
  return m;
}

/// Renames every place and transition; the result is isomorphic to the input.
inline PetriNet relabel(Rng& rng, const PetriNet& n) {
  PlaceMap f;
  std::vector<std::size_t> perm(n.places.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (std::size_t i = 0; i < perm.size(); ++i) f[n.places[i]] = "r" + std::to_string(perm[i]);
  PetriNet out{image_places(f), {}};
  for (const auto& t : n.transitions)
    out.transitions.push_back({"r" + t.id, extend_place_map(f, t.src), extend_place_map(f, t.tgt)});
  return canonical(std::move(out));
}

}  // namespace signet
