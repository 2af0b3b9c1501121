#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "signet/term.hpp"

namespace signet::cmc {

// Terms of the free commutative monoidal category, kept in a normal form
// modulo associativity, units, Id ⊗ Id = Id and commutativity of ⊗:
//   - compositions are flat lists of length ≥ 2 with no identities;
//   - tensors are flat lists of length ≥ 2, sorted by key, with at most
//     one identity factor, which is never Id(ε).
// Interchange is the only law not absorbed by the normal form; the search
// below applies it in both directions.

struct NTerm {
  enum Kind : char { identity = 'i', generator = 'g', tensor = 't', comp = 'c' };
  Kind kind = identity;
  std::string gen;
  Multiset src;
  Multiset tgt;
  std::vector<NTerm> kids;
  std::string key;
  std::size_t size = 1;
};

inline NTerm make_id(const Multiset& x) {
  NTerm t;
  t.src = t.tgt = x;
  t.key = "I" + to_string(x);
  return t;
}

inline NTerm make_gen(const Generator& g) {
  NTerm t;
  t.kind = NTerm::generator;
  t.gen = g.id;
  t.src = Multiset::from_word(g.src);
  t.tgt = Multiset::from_word(g.tgt);
  t.key = "G" + g.id;
  return t;
}

namespace detail {

inline NTerm assemble(NTerm::Kind kind, std::vector<NTerm> kids) {
  NTerm t;
  t.kind = kind;
  t.size = kids.size() - 1;
  t.key = kind == NTerm::tensor ? "T(" : "C(";
  for (std::size_t i = 0; i < kids.size(); ++i) {
    t.size += kids[i].size;
    if (i) t.key += kind == NTerm::tensor ? "," : ";";
    t.key += kids[i].key;
  }
  t.key += ")";
  if (kind == NTerm::tensor) {
    for (const auto& k : kids) {
      t.src = t.src + k.src;
      t.tgt = t.tgt + k.tgt;
    }
  } else {
    t.src = kids.front().src;
    t.tgt = kids.back().tgt;
  }
  t.kids = std::move(kids);
  return t;
}

}  // namespace detail

/// Normal form of a tensor of normal forms.
inline NTerm tensor_of(std::vector<NTerm> factors) {
  std::vector<NTerm> flat;
  Multiset ids;
  for (auto& f : factors) {
    if (f.kind == NTerm::tensor) {
      for (auto& k : f.kids) {
        if (k.kind == NTerm::identity)
          ids = ids + k.src;
        else
          flat.push_back(std::move(k));
      }
    } else if (f.kind == NTerm::identity) {
      ids = ids + f.src;
    } else {
      flat.push_back(std::move(f));
    }
  }
  if (flat.empty()) return make_id(ids);
  if (!ids.empty()) flat.push_back(make_id(ids));
  if (flat.size() == 1) return std::move(flat.front());
  std::sort(flat.begin(), flat.end(), [](const NTerm& a, const NTerm& b) { return a.key < b.key; });
  return detail::assemble(NTerm::tensor, std::move(flat));
}

/// Normal form of a composite of normal forms (types must chain).
inline NTerm comp_of(std::vector<NTerm> steps) {
  const auto src = steps.front().src;
  std::vector<NTerm> flat;
  for (auto& s : steps) {
    if (s.kind == NTerm::comp) {
      for (auto& k : s.kids) flat.push_back(std::move(k));
    } else if (s.kind != NTerm::identity) {
      flat.push_back(std::move(s));
    }
  }
  if (flat.empty()) return make_id(src);
  if (flat.size() == 1) return std::move(flat.front());
  return detail::assemble(NTerm::comp, std::move(flat));
}

/// Normal form of a well-typed CMC term.
inline NTerm normalize(const Term& t, const Presentation& p) {
  switch (t.kind) {
    case TermKind::id: return make_id(Multiset::from_word(t.object));
    case TermKind::sym: return make_id(Multiset::from_word(t.object));
    case TermKind::gen: return make_gen(*p.find(t.gen));
    case TermKind::tensor: return tensor_of({normalize(t.args[0], p), normalize(t.args[1], p)});
    case TermKind::comp: return comp_of({normalize(t.args[0], p), normalize(t.args[1], p)});
  }
  return make_id({});
}

/// Back to a binary term.
inline Term to_term(const NTerm& n) {
  switch (n.kind) {
    case NTerm::identity: return Term::identity(n.src.sorted_word());
    case NTerm::generator: return Term::generator(n.gen);
    case NTerm::tensor:
    case NTerm::comp: {
      Term acc = to_term(n.kids.front());
      for (std::size_t i = 1; i < n.kids.size(); ++i)
        acc = n.kind == NTerm::tensor ? Term::tensor(std::move(acc), to_term(n.kids[i]))
                                      : Term::comp(std::move(acc), to_term(n.kids[i]));
      return acc;
    }
  }
  return Term{};
}

namespace detail {

inline std::vector<NTerm> steps_of(const NTerm& t) {
  if (t.kind == NTerm::comp) return t.kids;
  return {t};
}

inline std::vector<NTerm> factors_of(const NTerm& t) {
  if (t.kind == NTerm::tensor) return t.kids;
  return {t};
}

// Prefix [0, k) and suffix [k, n) of a composite, padded with identities.
inline std::pair<NTerm, NTerm> split_at(const NTerm& t, const std::vector<NTerm>& steps, std::size_t k) {
  std::vector<NTerm> pre(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<NTerm> post(steps.begin() + static_cast<std::ptrdiff_t>(k), steps.end());
  NTerm a = pre.empty() ? make_id(t.src) : comp_of(std::move(pre));
  NTerm b = post.empty() ? make_id(t.tgt) : comp_of(std::move(post));
  return {std::move(a), std::move(b)};
}

using Emit = std::function<void(NTerm)>;

// (X1;X2) ⊗ (Y1;Y2) → (X1⊗Y1);(X2⊗Y2) for every pair of factors and
// every split point.
inline void interchange_out(const NTerm& t, const Emit& emit) {
  const auto& f = t.kids;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      std::vector<NTerm> rest;
      for (std::size_t k = 0; k < f.size(); ++k)
        if (k != i && k != j) rest.push_back(f[k]);
      const auto xs = steps_of(f[i]);
      const auto ys = steps_of(f[j]);
      for (std::size_t a = 0; a <= xs.size(); ++a)
        for (std::size_t b = 0; b <= ys.size(); ++b) {
          auto [x1, x2] = split_at(f[i], xs, a);
          auto [y1, y2] = split_at(f[j], ys, b);
          auto merged = comp_of({tensor_of({std::move(x1), std::move(y1)}), tensor_of({std::move(x2), std::move(y2)})});
          auto all = rest;
          all.push_back(std::move(merged));
          emit(tensor_of(std::move(all)));
        }
    }
}

// (P1⊗P2);(Q1⊗Q2) → (P1;Q1)⊗(P2;Q2) for adjacent steps and every split of
// their factors into type-compatible halves.
inline void interchange_in(const NTerm& t, const Emit& emit) {
  const auto& s = t.kids;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const auto pf = factors_of(s[i]);
    const auto qf = factors_of(s[i + 1]);
    if (pf.size() > 12 || qf.size() > 12) continue;
    const std::size_t pn = std::size_t{1} << pf.size(), qn = std::size_t{1} << qf.size();
    for (std::size_t ps = 0; ps < pn; ++ps) {
      std::vector<NTerm> p1, p2;
      Multiset mid1;
      for (std::size_t k = 0; k < pf.size(); ++k) {
        if (ps >> k & 1) {
          p1.push_back(pf[k]);
          mid1 = mid1 + pf[k].tgt;
        } else {
          p2.push_back(pf[k]);
        }
      }
      for (std::size_t qs = 0; qs < qn; ++qs) {
        if ((ps == 0 && qs == 0) || (ps == pn - 1 && qs == qn - 1)) continue;
        std::vector<NTerm> q1, q2;
        Multiset in1;
        for (std::size_t k = 0; k < qf.size(); ++k) {
          if (qs >> k & 1) {
            q1.push_back(qf[k]);
            in1 = in1 + qf[k].src;
          } else {
            q2.push_back(qf[k]);
          }
        }
        if (!(in1 == mid1)) continue;
        auto left = comp_of({tensor_of(p1), tensor_of(q1)});
        auto right = comp_of({tensor_of(p2), tensor_of(q2)});
        std::vector<NTerm> steps(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(i));
        steps.push_back(tensor_of({std::move(left), std::move(right)}));
        steps.insert(steps.end(), s.begin() + static_cast<std::ptrdiff_t>(i + 2), s.end());
        emit(comp_of(std::move(steps)));
      }
    }
  }
}

inline NTerm rebuild(const NTerm& t, std::size_t i, NTerm kid) {
  auto kids = t.kids;
  kids[i] = std::move(kid);
  return t.kind == NTerm::tensor ? tensor_of(std::move(kids)) : comp_of(std::move(kids));
}

}  // namespace detail

/// Every term one interchange step away, at any position.
inline void neighbors(const NTerm& t, const detail::Emit& emit) {
  if (t.kind == NTerm::tensor) detail::interchange_out(t, emit);
  if (t.kind == NTerm::comp) detail::interchange_in(t, emit);
  for (std::size_t i = 0; i < t.kids.size(); ++i)
    neighbors(t.kids[i], [&](NTerm k) { emit(detail::rebuild(t, i, std::move(k))); });
}

enum class Verdict { equal, distinct, unknown };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::equal: return "Equal";
    case Verdict::distinct: return "Distinct";
    case Verdict::unknown: return "Unknown";
  }
  return "?";
}

struct ClosureLimits {
  std::size_t max_size = 0;       // largest normal-form size explored
  std::size_t max_states = 20000;  // per side
};

/// Bidirectional breadth-first search for a chain of interchange steps
/// joining two normal forms. Returns equal when one is found, unknown when
/// the bounded space is exhausted or the state cap is hit.
inline Verdict search(const NTerm& a, const NTerm& b, const ClosureLimits& lim) {
  if (a.key == b.key) return Verdict::equal;
  struct Side {
    std::unordered_set<std::string> seen;
    std::deque<NTerm> frontier;
  } sides[2];
  sides[0].seen.insert(a.key);
  sides[0].frontier.push_back(a);
  sides[1].seen.insert(b.key);
  sides[1].frontier.push_back(b);
  while (!sides[0].frontier.empty() || !sides[1].frontier.empty()) {
    for (int s = 0; s < 2; ++s) {
      auto& me = sides[s];
      const auto& other = sides[1 - s];
      if (me.frontier.empty()) continue;
      // Expand one whole layer.
      const std::size_t layer = me.frontier.size();
      for (std::size_t k = 0; k < layer; ++k) {
        const NTerm cur = std::move(me.frontier.front());
        me.frontier.pop_front();
        bool met = false;
        neighbors(cur, [&](NTerm n) {
          if (met || n.size > lim.max_size || me.seen.count(n.key)) return;
          if (other.seen.count(n.key)) {
            met = true;
            return;
          }
          me.seen.insert(n.key);
          me.frontier.push_back(std::move(n));
        });
        if (met) return Verdict::equal;
        if (me.seen.size() > lim.max_states) return Verdict::unknown;
      }
    }
  }
  return Verdict::unknown;
}

}  // namespace signet::cmc
