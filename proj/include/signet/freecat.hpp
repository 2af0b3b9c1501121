#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "signet/cmc.hpp"
#include "signet/diagram.hpp"
#include "signet/term.hpp"

namespace signet {

using cmc::Verdict;

struct EquivResult {
  Verdict verdict = Verdict::unknown;
  std::string reason;
};

/// Term-size budget for the CMC search. Zero means the default: the larger
/// input size plus four.
struct EquivBudget {
  std::size_t max_size = 0;
  std::size_t max_states = 20000;
};

/// Equality of two morphisms of the free category of `p`. Exact for StrMC
/// and SSMC; for CMC, Equal and Distinct are sound and Unknown means the
/// bounded search found no derivation.
inline EquivResult equiv(const Term& a, const Term& b, const Presentation& p, const EquivBudget& budget = {}) {
  TermType ta, tb;
  try {
    ta = typecheck(a, p);
    tb = typecheck(b, p);
  } catch (const Error& e) {
    return {Verdict::distinct, std::string("ill-typed: ") + e.what()};
  }
  if (!(ta == tb)) return {Verdict::distinct, "different types"};
  if (generator_occurrences(a) != generator_occurrences(b)) return {Verdict::distinct, "different generator occurrences"};
  if (p.flavor != Flavor::cmc) {
    const bool same = diagram_isomorphic(to_diagram(a, p), to_diagram(b, p), p);
    return {same ? Verdict::equal : Verdict::distinct, same ? "isomorphic diagrams" : "non-isomorphic diagrams"};
  }
  const auto na = cmc::normalize(a, p);
  const auto nb = cmc::normalize(b, p);
  cmc::ClosureLimits lim;
  lim.max_size = budget.max_size ? budget.max_size : std::max(term_size(a), term_size(b)) + 4;
  lim.max_size = std::max({lim.max_size, na.size, nb.size});
  lim.max_states = budget.max_states;
  const auto v = cmc::search(na, nb, lim);
  return {v, v == Verdict::equal ? "derivation found" : "no derivation within budget"};
}

// ---------------------------------------------------------------------------
// Finite windows onto hom-sets.

struct HomClass {
  Term representative;
  std::size_t members = 1;
  /// Set when some comparison involving this class came back Unknown, so
  /// the class might coincide with another one.
  bool unknown_merge = false;
};

struct HomWindow {
  std::vector<HomClass> classes;
  std::size_t terms = 0;  // morphisms generated before deduplication
  bool decided() const {
    return std::none_of(classes.begin(), classes.end(), [](const HomClass& c) { return c.unknown_merge; });
  }
};

namespace detail {

inline Term tensor_all(std::vector<Term> parts) {
  std::vector<Term> kept;
  for (auto& t : parts)
    if (!(t.kind == TermKind::id && t.object.empty())) kept.push_back(std::move(t));
  if (kept.empty()) return Term::identity({});
  Term acc = std::move(kept.front());
  for (std::size_t i = 1; i < kept.size(); ++i) acc = Term::tensor(std::move(acc), std::move(kept[i]));
  return acc;
}

inline Term then(std::optional<Term> acc, Term step) {
  return acc ? Term::comp(std::move(*acc), std::move(step)) : std::move(step);
}

inline Word slice(const Word& w, std::size_t from, std::size_t to) {
  return Word(w.begin() + static_cast<std::ptrdiff_t>(from), w.begin() + static_cast<std::ptrdiff_t>(to));
}

struct Partial {
  Word object;
  std::optional<Term> term;
  std::size_t gens = 0;
};

// Every way of applying one generator to `w`, each as (term, new word).
inline std::vector<std::pair<Term, Word>> steps_strmc(const Presentation& p, const Word& w) {
  std::vector<std::pair<Term, Word>> out;
  for (const auto& g : p.generators)
    for (std::size_t i = 0; i + g.src.size() <= w.size(); ++i) {
      if (!std::equal(g.src.begin(), g.src.end(), w.begin() + static_cast<std::ptrdiff_t>(i))) continue;
      const auto pre = slice(w, 0, i), post = slice(w, i + g.src.size(), w.size());
      out.push_back({tensor_all({Term::identity(pre), Term::generator(g.id), Term::identity(post)}),
                     concat(concat(pre, g.tgt), post)});
    }
  return out;
}

// Chooses an ordered injection of src(g) into w, moves those wires to the
// front (the rest keeps its order), then applies g.
inline std::vector<std::pair<Term, Word>> steps_ssmc(const Presentation& p, const Word& w) {
  std::vector<std::pair<Term, Word>> out;
  for (const auto& g : p.generators) {
    const std::size_t m = g.src.size();
    if (m > w.size()) continue;
    std::vector<std::size_t> pick;
    std::vector<bool> used(w.size(), false);
    std::function<void()> rec = [&]() {
      if (pick.size() == m) {
        std::vector<int> im(w.size());
        Word rest;
        std::size_t next = m;
        for (std::size_t k = 0; k < m; ++k) im[pick[k]] = static_cast<int>(k);
        for (std::size_t i = 0; i < w.size(); ++i)
          if (!used[i]) {
            im[i] = static_cast<int>(next++);
            rest.push_back(w[i]);
          }
        Permutation pi(im);
        Term step = tensor_all({Term::generator(g.id), Term::identity(rest)});
        if (!pi.is_identity()) step = Term::comp(Term::symmetry(pi, w), std::move(step));
        out.push_back({std::move(step), concat(g.tgt, rest)});
        return;
      }
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (used[i] || w[i] != g.src[pick.size()]) continue;
        used[i] = true;
        pick.push_back(i);
        rec();
        pick.pop_back();
        used[i] = false;
      }
    };
    rec();
  }
  return out;
}

inline std::vector<std::pair<Term, Word>> steps_cmc(const Presentation& p, const Word& w) {
  std::vector<std::pair<Term, Word>> out;
  const auto m = Multiset::from_word(w);
  for (const auto& g : p.generators) {
    const auto s = Multiset::from_word(g.src);
    if (!s.le(m)) continue;
    const auto rest = (m - s).sorted_word();
    out.push_back({tensor_all({Term::generator(g.id), Term::identity(rest)}),
                   (Multiset::from_word(g.tgt) + (m - s)).sorted_word()});
  }
  return out;
}

// Final symmetries from w onto y.
inline std::vector<Term> closing_symmetries(const Word& w, const Word& y) {
  std::vector<Term> out;
  if (w.size() != y.size()) return out;
  for (const auto& pi : all_permutations(w.size()))
    if (apply_perm(pi, w) == y) out.push_back(pi.is_identity() ? Term::identity(w) : Term::symmetry(pi, w));
  return out;
}

}  // namespace detail

/// All morphisms x → y with at most max_gens generator occurrences, written
/// as sequences of whiskered generators, and grouped by equiv. Classes are
/// listed in order of first appearance.
inline HomWindow enumerate_homs(const Presentation& p, Word x, Word y, std::size_t max_gens,
                                const EquivBudget& budget = {}, const Limits& limits = default_limits()) {
  if (p.flavor == Flavor::cmc) {
    x = detail::sorted(x);
    y = detail::sorted(y);
  }
  for (const auto& w : {x, y})
    for (const auto& a : w)
      if (!std::binary_search(p.places.begin(), p.places.end(), a)) fail(ErrorCode::type, "unknown place " + a);

  std::vector<Term> found;
  std::vector<detail::Partial> layer{{x, std::nullopt, 0}};
  std::size_t visited = 0;
  auto close = [&](const detail::Partial& part) {
    if (p.flavor == Flavor::ssmc) {
      for (auto& s : detail::closing_symmetries(part.object, y))
        found.push_back(part.term ? (s.kind == TermKind::id ? *part.term : Term::comp(*part.term, s)) : s);
    } else if (part.object == y) {
      found.push_back(part.term ? *part.term : Term::identity(x));
    }
  };
  for (std::size_t depth = 0;; ++depth) {
    for (const auto& part : layer) close(part);
    if (depth == max_gens) break;
    std::vector<detail::Partial> next;
    for (const auto& part : layer) {
      const auto steps = p.flavor == Flavor::strmc  ? detail::steps_strmc(p, part.object)
                         : p.flavor == Flavor::ssmc ? detail::steps_ssmc(p, part.object)
                                                    : detail::steps_cmc(p, part.object);
      for (const auto& [t, w] : steps) {
        if (++visited > limits.max_candidates) fail(ErrorCode::capacity, "hom window exceeds the candidate limit");
        next.push_back({w, detail::then(part.term, t), part.gens + 1});
      }
    }
    layer = std::move(next);
  }

  HomWindow out;
  out.terms = found.size();
  if (p.flavor != Flavor::cmc) {
    std::vector<TokenFlowDiagram> reps;
    for (const auto& t : found) {
      auto d = to_diagram(t, p);
      bool merged = false;
      for (std::size_t c = 0; c < reps.size() && !merged; ++c)
        if (diagram_isomorphic(reps[c], d, p)) {
          ++out.classes[c].members;
          merged = true;
        }
      if (!merged) {
        reps.push_back(std::move(d));
        out.classes.push_back({t, 1, false});
      }
    }
    return out;
  }
  for (const auto& t : found) {
    bool merged = false;
    std::vector<std::size_t> unsure;
    for (std::size_t c = 0; c < out.classes.size() && !merged; ++c) {
      const auto r = equiv(out.classes[c].representative, t, p, budget);
      if (r.verdict == Verdict::equal) {
        ++out.classes[c].members;
        merged = true;
      } else if (r.verdict == Verdict::unknown) {
        unsure.push_back(c);
      }
    }
    if (merged) continue;
    for (auto c : unsure) out.classes[c].unknown_merge = true;
    out.classes.push_back({t, 1, !unsure.empty()});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Token game.

inline bool enabled(const PetriTransition& t, const Multiset& m) { return t.src.le(m); }

inline Multiset fire(const PetriTransition& t, const Multiset& m) { return m - t.src + t.tgt; }

/// Shortest firing sequence from `from` to `to` of length at most
/// max_steps, by breadth-first search.
inline std::optional<std::vector<TransitionId>> reachable(const PetriNet& n, const Multiset& from, const Multiset& to,
                                                          std::size_t max_steps,
                                                          const Limits& limits = default_limits()) {
  std::map<Multiset, std::pair<Multiset, TransitionId>> parent;
  std::set<Multiset> seen{from};
  std::vector<Multiset> layer{from};
  auto path_to = [&](Multiset m) {
    std::vector<TransitionId> path;
    while (!(m == from)) {
      const auto& [prev, t] = parent.at(m);
      path.push_back(t);
      m = prev;
    }
    std::reverse(path.begin(), path.end());
    return path;
  };
  if (from == to) return std::vector<TransitionId>{};
  for (std::size_t step = 0; step < max_steps && !layer.empty(); ++step) {
    std::vector<Multiset> next;
    for (const auto& m : layer)
      for (const auto& t : n.transitions) {
        if (!enabled(t, m)) continue;
        auto m2 = fire(t, m);
        if (!seen.insert(m2).second) continue;
        if (seen.size() > limits.max_candidates) fail(ErrorCode::capacity, "reachability search exceeds the limit");
        parent.emplace(m2, std::make_pair(m, t.id));
        if (m2 == to) return path_to(m2);
        next.push_back(std::move(m2));
      }
    layer = std::move(next);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Finite commutative monoidal categories given by tables.

struct FinMorphism {
  std::string id;
  std::string src;
  std::string tgt;
};

struct FinCMC {
  std::vector<std::string> objects;
  std::string unit;
  std::map<std::string, std::map<std::string, std::string>> object_tensor;
  std::vector<FinMorphism> morphisms;
  std::map<std::string, std::string> identity;
  /// compose[f][g] is f followed by g, defined when tgt f = src g.
  std::map<std::string, std::map<std::string, std::string>> compose;
  std::map<std::string, std::map<std::string, std::string>> tensor;

  const FinMorphism* find(const std::string& id) const {
    for (const auto& m : morphisms)
      if (m.id == id) return &m;
    return nullptr;
  }
  std::string otensor(const std::string& a, const std::string& b) const { return object_tensor.at(a).at(b); }
};

namespace detail {
inline std::optional<std::string> lookup(const std::map<std::string, std::map<std::string, std::string>>& t,
                                         const std::string& a, const std::string& b) {
  auto i = t.find(a);
  if (i == t.end()) return std::nullopt;
  auto j = i->second.find(b);
  if (j == i->second.end()) return std::nullopt;
  return j->second;
}
}  // namespace detail

/// Checks that the tables define a strict monoidal category with
/// commutative tensor. Returns the violated laws.
inline std::vector<std::string> verify_fincmc(const FinCMC& c) {
  std::vector<std::string> errs;
  auto is_obj = [&](const std::string& x) { return std::find(c.objects.begin(), c.objects.end(), x) != c.objects.end(); };
  if (!is_obj(c.unit)) return {"unit is not an object"};
  for (const auto& m : c.morphisms)
    if (!is_obj(m.src) || !is_obj(m.tgt)) errs.push_back("morphism " + m.id + " has an unknown endpoint");
  for (const auto& a : c.objects)
    for (const auto& b : c.objects) {
      const auto ab = detail::lookup(c.object_tensor, a, b);
      if (!ab || !is_obj(*ab)) errs.push_back("object tensor undefined on " + a + "," + b);
    }
  for (const auto& a : c.objects) {
    auto id = c.identity.find(a);
    if (id == c.identity.end() || !c.find(id->second) || c.find(id->second)->src != a || c.find(id->second)->tgt != a)
      errs.push_back("identity on " + a + " is missing or mistyped");
  }
  if (!errs.empty()) return errs;

  for (const auto& a : c.objects) {
    if (c.otensor(a, c.unit) != a || c.otensor(c.unit, a) != a) errs.push_back("unit law fails on object " + a);
    for (const auto& b : c.objects) {
      if (c.otensor(a, b) != c.otensor(b, a)) errs.push_back("object tensor not commutative on " + a + "," + b);
      for (const auto& d : c.objects)
        if (c.otensor(c.otensor(a, b), d) != c.otensor(a, c.otensor(b, d)))
          errs.push_back("object tensor not associative on " + a + "," + b + "," + d);
    }
  }
  auto comp = [&](const FinMorphism& f, const FinMorphism& g) -> const FinMorphism* {
    const auto r = detail::lookup(c.compose, f.id, g.id);
    return r ? c.find(*r) : nullptr;
  };
  auto tens = [&](const FinMorphism& f, const FinMorphism& g) -> const FinMorphism* {
    const auto r = detail::lookup(c.tensor, f.id, g.id);
    return r ? c.find(*r) : nullptr;
  };
  for (const auto& f : c.morphisms) {
    const auto* idl = c.find(c.identity.at(f.src));
    const auto* idr = c.find(c.identity.at(f.tgt));
    const auto* l = comp(*idl, f);
    const auto* r = comp(f, *idr);
    if (!l || l->id != f.id || !r || r->id != f.id) errs.push_back("identity law fails at " + f.id);
    const auto* u = tens(*c.find(c.identity.at(c.unit)), f);
    if (!u || u->id != f.id) errs.push_back("tensor unit law fails at " + f.id);
    for (const auto& g : c.morphisms) {
      if (f.tgt == g.src) {
        const auto* fg = comp(f, g);
        if (!fg || fg->src != f.src || fg->tgt != g.tgt) {
          errs.push_back("composite " + f.id + ";" + g.id + " missing or mistyped");
          continue;
        }
        for (const auto& h : c.morphisms) {
          if (g.tgt != h.src) continue;
          const auto* l2 = comp(*fg, h);
          const auto* gh = comp(g, h);
          const auto* r2 = gh ? comp(f, *gh) : nullptr;
          if (!l2 || !r2 || l2->id != r2->id) errs.push_back("composition not associative at " + f.id + "," + g.id + "," + h.id);
        }
      }
      const auto* fg = tens(f, g);
      const auto* gf = tens(g, f);
      if (!fg || fg->src != c.otensor(f.src, g.src) || fg->tgt != c.otensor(f.tgt, g.tgt)) {
        errs.push_back("tensor " + f.id + "⊗" + g.id + " missing or mistyped");
        continue;
      }
      if (!gf || gf->id != fg->id) errs.push_back("tensor not commutative at " + f.id + "," + g.id);
    }
  }
  if (!errs.empty()) return errs;
  for (const auto& f : c.morphisms)
    for (const auto& g : c.morphisms)
      for (const auto& h : c.morphisms) {
        if (tens(*tens(f, g), h)->id != tens(f, *tens(g, h))->id)
          errs.push_back("tensor not associative at " + f.id + "," + g.id + "," + h.id);
        for (const auto& k : c.morphisms) {
          // (f;g) ⊗ (h;k) = (f⊗h);(g⊗k)
          if (f.tgt != g.src || h.tgt != k.src) continue;
          const auto* lhs = tens(*comp(f, g), *comp(h, k));
          const auto* rhs = comp(*tens(f, h), *tens(g, k));
          if (!rhs || lhs->id != rhs->id) errs.push_back("interchange fails at " + f.id + "," + g.id + "," + h.id + "," + k.id);
        }
      }
  for (const auto& a : c.objects)
    for (const auto& b : c.objects) {
      const auto* t = tens(*c.find(c.identity.at(a)), *c.find(c.identity.at(b)));
      if (t->id != c.identity.at(c.otensor(a, b))) errs.push_back("id ⊗ id is not an identity at " + a + "," + b);
    }
  return errs;
}

/// Checks that sending places to objects and transitions to morphisms
/// extends to a strict monoidal functor out of the free CMC on `n`: each
/// transition must land in hom(f(src), f(tgt)). Returns one message per
/// offending transition; empty means the assignment extends.
inline std::vector<std::string> eval_into_fincmc(const PetriNet& n, const FinCMC& c,
                                                 const std::map<PlaceId, std::string>& place_assign,
                                                 const std::map<TransitionId, std::string>& trans_assign) {
  std::vector<std::string> errs;
  auto object_of = [&](const Multiset& m) -> std::optional<std::string> {
    std::string acc = c.unit;
    for (const auto& [p, k] : m.counts()) {
      auto it = place_assign.find(p);
      if (it == place_assign.end()) return std::nullopt;
      for (std::size_t i = 0; i < k; ++i) acc = c.otensor(acc, it->second);
    }
    return acc;
  };
  for (const auto& p : n.places)
    if (!place_assign.count(p)) errs.push_back("place " + p + " is unassigned");
  if (!errs.empty()) return errs;
  for (const auto& t : n.transitions) {
    const auto s = object_of(t.src), d = object_of(t.tgt);
    auto it = trans_assign.find(t.id);
    if (it == trans_assign.end()) {
      errs.push_back("transition " + t.id + " is unassigned");
      continue;
    }
    const auto* m = c.find(it->second);
    if (!m) {
      errs.push_back("transition " + t.id + " maps to unknown morphism " + it->second);
      continue;
    }
    if (m->src != *s || m->tgt != *d)
      errs.push_back("transition " + t.id + " needs a morphism " + *s + " -> " + *d + ", got " + m->id + ": " + m->src +
                     " -> " + m->tgt);
  }
  return errs;
}

/// For each transition, the first morphism of the required type; transitions
/// whose hom-set is empty are left out.
inline std::map<TransitionId, std::string> first_assignment(const PetriNet& n, const FinCMC& c,
                                                            const std::map<PlaceId, std::string>& place_assign) {
  std::map<TransitionId, std::string> out;
  for (const auto& t : n.transitions) {
    std::string s = c.unit, d = c.unit;
    for (const auto& [p, k] : t.src.counts())
      for (std::size_t i = 0; i < k; ++i) s = c.otensor(s, place_assign.at(p));
    for (const auto& [p, k] : t.tgt.counts())
      for (std::size_t i = 0; i < k; ++i) d = c.otensor(d, place_assign.at(p));
    for (const auto& m : c.morphisms)
      if (m.src == s && m.tgt == d) {
        out[t.id] = m.id;
        break;
      }
  }
  return out;
}

inline json to_json(const FinCMC& c) {
  json ms = json::array();
  for (const auto& m : c.morphisms) ms.push_back({{"id", m.id}, {"src", m.src}, {"tgt", m.tgt}});
  return {{"format", kFormatVersion}, {"kind", "fincmc"}, {"objects", c.objects}, {"unit", c.unit},
          {"object_tensor", c.object_tensor}, {"morphisms", ms}, {"identity", c.identity},
          {"compose", c.compose}, {"tensor", c.tensor}};
}

inline FinCMC parse_fincmc(const json& j) {
  detail::check_header(j, "fincmc");
  using Table = std::map<std::string, std::map<std::string, std::string>>;
  FinCMC c;
  c.objects = detail::get_as<std::vector<std::string>>(detail::field(j, "objects"), "objects");
  c.unit = detail::get_as<std::string>(detail::field(j, "unit"), "unit");
  c.object_tensor = detail::get_as<Table>(detail::field(j, "object_tensor"), "object_tensor");
  for (const auto& m : detail::field(j, "morphisms"))
    c.morphisms.push_back({detail::get_as<std::string>(detail::field(m, "id"), "id"),
                           detail::get_as<std::string>(detail::field(m, "src"), "src"),
                           detail::get_as<std::string>(detail::field(m, "tgt"), "tgt")});
  c.identity = detail::get_as<std::map<std::string, std::string>>(detail::field(j, "identity"), "identity");
  c.compose = detail::get_as<Table>(detail::field(j, "compose"), "compose");
  c.tensor = detail::get_as<Table>(detail::field(j, "tensor"), "tensor");
  return c;
}

}  // namespace signet
