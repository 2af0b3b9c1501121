#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "signet/io.hpp"
#include "signet/nets.hpp"

namespace signet {

enum class Flavor { strmc, ssmc, cmc };

inline std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::strmc: return "StrMC";
    case Flavor::ssmc: return "SSMC";
    case Flavor::cmc: return "CMC";
  }
  return "?";
}

inline std::optional<Flavor> parse_flavor(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "strmc") return Flavor::strmc;
  if (s == "ssmc") return Flavor::ssmc;
  if (s == "cmc") return Flavor::cmc;
  return std::nullopt;
}

enum class TermKind { id, gen, sym, tensor, comp };

/// Morphism term. Comp(f, g) is diagrammatic: f first, then g.
/// Sym(σ, w) : w → σ·w.
struct Term {
  TermKind kind = TermKind::id;
  Word object;
  std::string gen;
  Permutation perm;
  std::vector<Term> args;

  static Term identity(Word w) {
    Term t;
    t.object = std::move(w);
    return t;
  }
  static Term generator(std::string g) {
    Term t;
    t.kind = TermKind::gen;
    t.gen = std::move(g);
    return t;
  }
  static Term symmetry(Permutation p, Word w) {
    Term t;
    t.kind = TermKind::sym;
    t.perm = std::move(p);
    t.object = std::move(w);
    return t;
  }
  static Term tensor(Term a, Term b) {
    Term t;
    t.kind = TermKind::tensor;
    t.args = {std::move(a), std::move(b)};
    return t;
  }
  static Term comp(Term a, Term b) {
    Term t;
    t.kind = TermKind::comp;
    t.args = {std::move(a), std::move(b)};
    return t;
  }

  friend bool operator==(const Term&, const Term&) = default;
};

/// Number of constructors in the term.
inline std::size_t term_size(const Term& t) {
  std::size_t n = 1;
  for (const auto& a : t.args) n += term_size(a);
  return n;
}

struct Generator {
  std::string id;
  Word src;
  Word tgt;
  friend bool operator==(const Generator&, const Generator&) = default;
};

struct Relation {
  Term lhs;
  Term rhs;
  friend bool operator==(const Relation&, const Relation&) = default;
};

/// Generators and relations for a free monoidal category on a net. CMC
/// generators carry sorted words standing for multisets. `isotropy` holds the
/// nontrivial isotropy groups of Σ-net generators; the relations are derived
/// from their generators.
struct Presentation {
  Flavor flavor = Flavor::strmc;
  std::vector<PlaceId> places;
  std::vector<Generator> generators;
  std::vector<Relation> relations;
  std::map<std::string, PermGroup> isotropy;

  const Generator* find(const std::string& id) const {
    for (const auto& g : generators)
      if (g.id == id) return &g;
    return nullptr;
  }

  friend bool operator==(const Presentation&, const Presentation&) = default;
};

inline Presentation present_free(const PreNet& q, Flavor flavor) {
  if (flavor == Flavor::cmc) fail(ErrorCode::unsupported, "pre-nets present StrMC or SSMC, not CMC");
  Presentation p{flavor, q.places, {}, {}, {}};
  for (const auto& t : q.transitions) p.generators.push_back({t.id, t.src, t.tgt});
  return p;
}

inline Presentation present_free(const PetriNet& n, Flavor flavor) {
  if (flavor != Flavor::cmc) fail(ErrorCode::unsupported, "Petri nets present CMC only");
  Presentation p{flavor, n.places, {}, {}, {}};
  for (const auto& t : n.transitions) p.generators.push_back({t.id, t.src.sorted_word(), t.tgt.sorted_word()});
  return p;
}

/// One generator per class representative; each isotropy generator (σ, τ)
/// yields t ; Sym(τ) = Sym(σ) ; t.
inline Presentation present_free(const SigmaNet& n, Flavor flavor) {
  if (flavor != Flavor::ssmc) fail(ErrorCode::unsupported, "Σ-nets present SSMC only");
  Presentation p{flavor, n.places, {}, {}, {}};
  for (const auto& c : n.classes) {
    p.generators.push_back({c.id, c.src, c.tgt});
    if (c.isotropy.is_trivial()) continue;
    p.isotropy.emplace(c.id, c.isotropy);
    for (const auto& g : c.isotropy.canonical_generators())
      p.relations.push_back({Term::comp(Term::generator(c.id), Term::symmetry(g.tgt, c.tgt)),
                             Term::comp(Term::symmetry(g.src, c.src), Term::generator(c.id))});
  }
  return p;
}

/// Replaces every symmetry by an identity and every word by its multiset.
inline Presentation collapse_to_cmc(const Presentation& p);

// ---------------------------------------------------------------------------
// Typing.

struct TermType {
  Word src;
  Word tgt;
  friend bool operator==(const TermType&, const TermType&) = default;
};

namespace detail {

inline Word sorted(Word w) {
  std::sort(w.begin(), w.end());
  return w;
}

inline TermType typecheck_rec(const Term& t, const Presentation& p) {
  const bool cmc = p.flavor == Flavor::cmc;
  switch (t.kind) {
    case TermKind::id: {
      for (const auto& x : t.object)
        if (!std::binary_search(p.places.begin(), p.places.end(), x)) fail(ErrorCode::type, "unknown place " + x);
      auto w = cmc ? sorted(t.object) : t.object;
      return {w, w};
    }
    case TermKind::gen: {
      const auto* g = p.find(t.gen);
      if (!g) fail(ErrorCode::type, "unknown generator " + t.gen);
      return {g->src, g->tgt};
    }
    case TermKind::sym: {
      if (p.flavor != Flavor::ssmc) fail(ErrorCode::type, "symmetries exist only in SSMC");
      if (t.perm.size() != t.object.size()) fail(ErrorCode::type, "symmetry degree does not match its word");
      for (const auto& x : t.object)
        if (!std::binary_search(p.places.begin(), p.places.end(), x)) fail(ErrorCode::type, "unknown place " + x);
      return {t.object, apply_perm(t.perm, t.object)};
    }
    case TermKind::tensor: {
      if (t.args.size() != 2) fail(ErrorCode::type, "tensor takes two arguments");
      const auto a = typecheck_rec(t.args[0], p);
      const auto b = typecheck_rec(t.args[1], p);
      if (cmc) return {sorted(concat(a.src, b.src)), sorted(concat(a.tgt, b.tgt))};
      return {concat(a.src, b.src), concat(a.tgt, b.tgt)};
    }
    case TermKind::comp: {
      if (t.args.size() != 2) fail(ErrorCode::type, "composition takes two arguments");
      const auto a = typecheck_rec(t.args[0], p);
      const auto b = typecheck_rec(t.args[1], p);
      if (a.tgt != b.src)
        fail(ErrorCode::type, "composition mismatch: " + to_string(a.tgt) + " vs " + to_string(b.src));
      return {a.src, b.tgt};
    }
  }
  fail(ErrorCode::type, "bad term");
}

}  // namespace detail

/// Source and target objects of a term. CMC objects come back as sorted
/// words.
inline TermType typecheck(const Term& t, const Presentation& p) { return detail::typecheck_rec(t, p); }

inline Multiset as_marking(const Word& w) { return Multiset::from_word(w); }

inline Presentation collapse_to_cmc(const Presentation& p) {
  Presentation out{Flavor::cmc, p.places, {}, {}, {}};
  for (const auto& g : p.generators) out.generators.push_back({g.id, detail::sorted(g.src), detail::sorted(g.tgt)});
  struct Strip {
    static Term run(const Term& t) {
      switch (t.kind) {
        case TermKind::sym: return Term::identity(detail::sorted(t.object));
        case TermKind::id: return Term::identity(detail::sorted(t.object));
        case TermKind::gen: return t;
        default: {
          Term r = t;
          for (auto& a : r.args) a = run(a);
          return r;
        }
      }
    }
  };
  for (const auto& r : p.relations) out.relations.push_back({Strip::run(r.lhs), Strip::run(r.rhs)});
  return out;
}

/// Generator occurrences, sorted.
inline std::vector<std::string> generator_occurrences(const Term& t) {
  std::vector<std::string> out;
  struct Walk {
    static void run(const Term& t, std::vector<std::string>& out) {
      if (t.kind == TermKind::gen) out.push_back(t.gen);
      for (const auto& a : t.args) run(a, out);
    }
  };
  Walk::run(t, out);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Term JSON: ["id", [w]], ["gen", "t"], ["sym", [images], [w]],
// ["tensor", a, b, ...], ["comp", a, b, ...]. Longer tensor and comp lists
// fold to the left.

inline json to_json(const Term& t) {
  switch (t.kind) {
    case TermKind::id: return json::array({"id", t.object});
    case TermKind::gen: return json::array({"gen", t.gen});
    case TermKind::sym: return json::array({"sym", t.perm.images(), t.object});
    case TermKind::tensor: return json::array({"tensor", to_json(t.args[0]), to_json(t.args[1])});
    case TermKind::comp: return json::array({"comp", to_json(t.args[0]), to_json(t.args[1])});
  }
  return nullptr;
}

inline Term parse_term(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_string()) fail(ErrorCode::parse, "term must be a tagged array");
  const auto tag = j[0].get<std::string>();
  if (tag == "id") {
    if (j.size() != 2) fail(ErrorCode::parse, "id takes one word");
    return Term::identity(detail::parse_word(j[1]));
  }
  if (tag == "gen") {
    if (j.size() != 2 || !j[1].is_string()) fail(ErrorCode::parse, "gen takes one generator id");
    return Term::generator(j[1].get<std::string>());
  }
  if (tag == "sym") {
    if (j.size() != 3) fail(ErrorCode::parse, "sym takes a permutation and a word");
    return Term::symmetry(detail::parse_perm(j[1]), detail::parse_word(j[2]));
  }
  if (tag == "tensor" || tag == "comp") {
    if (j.size() < 3) fail(ErrorCode::parse, tag + " takes at least two terms");
    Term acc = parse_term(j[1]);
    for (std::size_t i = 2; i < j.size(); ++i)
      acc = tag == "tensor" ? Term::tensor(std::move(acc), parse_term(j[i])) : Term::comp(std::move(acc), parse_term(j[i]));
    return acc;
  }
  fail(ErrorCode::parse, "unknown term tag " + tag);
}

inline std::string to_string(const Term& t) { return to_json(t).dump(); }

inline json to_json(const Presentation& p) {
  json gens = json::array();
  for (const auto& g : p.generators) gens.push_back({{"id", g.id}, {"src", g.src}, {"tgt", g.tgt}});
  json rels = json::array();
  for (const auto& r : p.relations) rels.push_back(json::array({to_json(r.lhs), to_json(r.rhs)}));
  return {{"format", kFormatVersion}, {"kind", "presentation"}, {"flavor", to_string(p.flavor)},
          {"places", p.places}, {"generators", gens}, {"relations", rels}};
}

}  // namespace signet
