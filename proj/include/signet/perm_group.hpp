#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "signet/error.hpp"
#include "signet/permutation.hpp"

namespace signet {

inline void check_degree(std::size_t m, std::size_t n, const Limits& limits) {
  if (m > limits.max_degree || n > limits.max_degree)
    fail(ErrorCode::capacity, "word length " + std::to_string(std::max(m, n)) +
                                  " exceeds the degree cap " +
                                  std::to_string(limits.max_degree));
}

/// Finite subgroup of S_m × S_n. The full element list is computed at
/// construction and kept sorted by rank (equivalently, lexicographically on
/// the image arrays), so two groups compare equal iff they have the same
/// elements.
class PermGroup {
 public:
  PermGroup() : PermGroup(0, 0) {}

  /// The trivial group at degree pair (m, n).
  PermGroup(std::size_t m, std::size_t n) : m_(m), n_(n), elements_{PermPair::identity(m, n)} {}

  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  std::size_t order() const { return elements_.size(); }
  bool is_trivial() const { return elements_.size() == 1; }
  const std::vector<PermPair>& elements() const { return elements_; }

  bool contains(const PermPair& g) const {
    return g.m() == m_ && g.n() == n_ && std::binary_search(elements_.begin(), elements_.end(), g);
  }

  bool is_subgroup_of(const PermGroup& other) const {
    if (m_ != other.m_ || n_ != other.n_) return false;
    return std::all_of(elements_.begin(), elements_.end(),
                       [&](const PermPair& g) { return other.contains(g); });
  }

  /// Greedy generating set: scan elements in order and keep each one not
  /// already generated by the previous picks. Depends only on the subgroup.
  std::vector<PermPair> canonical_generators() const;

  /// Least element of the left coset g·G.
  PermPair coset_min(const PermPair& g) const {
    PermPair best = g.compose(elements_.front());
    for (std::size_t i = 1; i < elements_.size(); ++i) {
      auto c = g.compose(elements_[i]);
      if (c < best) best = std::move(c);
    }
    return best;
  }

  /// r⁻¹·h·r ∈ G for every h in `sub`, i.e. sub ⊆ r·G·r⁻¹.
  bool conjugate_contains(const PermPair& r, const PermGroup& sub) const {
    const auto rinv = r.inverse();
    for (const auto& h : sub.elements_)
      if (!contains(rinv.compose(h).compose(r))) return false;
    return true;
  }

  friend bool operator==(const PermGroup& a, const PermGroup& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.elements_ == b.elements_;
  }

  friend PermGroup group_closure(const std::vector<PermPair>&, std::size_t, std::size_t, const Limits&);
  friend PermGroup group_from_elements(std::size_t, std::size_t, std::vector<PermPair>);

 private:
  std::size_t m_, n_;
  std::vector<PermPair> elements_;
};

/// Closure of `gens` under composition. Inverses come for free in a finite
/// group.
inline PermGroup group_closure(const std::vector<PermPair>& gens, std::size_t m, std::size_t n,
                               const Limits& limits = default_limits()) {
  check_degree(m, n, limits);
  for (const auto& g : gens)
    if (g.m() != m || g.n() != n)
      fail(ErrorCode::validation, "generator " + to_string(g) + " does not have degree (" +
                                      std::to_string(m) + "," + std::to_string(n) + ")");
  PermGroup grp(m, n);
  std::set<PermPair> seen{PermPair::identity(m, n)};
  std::vector<PermPair> frontier{PermPair::identity(m, n)};
  while (!frontier.empty()) {
    std::vector<PermPair> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        auto y = g.compose(x);
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  grp.elements_.assign(seen.begin(), seen.end());
  return grp;
}

/// Trusts that `elements` already form a group.
inline PermGroup group_from_elements(std::size_t m, std::size_t n, std::vector<PermPair> elements) {
  PermGroup grp(m, n);
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  grp.elements_ = std::move(elements);
  return grp;
}

inline std::vector<PermPair> PermGroup::canonical_generators() const {
  std::vector<PermPair> gens;
  PermGroup current(m_, n_);
  for (const auto& g : elements_) {
    if (current.contains(g)) continue;
    gens.push_back(g);
    Limits unbounded;
    unbounded.max_degree = std::max(m_, n_);
    current = group_closure(gens, m_, n_, unbounded);
    if (current.order() == order()) break;
  }
  return gens;
}

/// All permutations of a single word that fix it.
inline std::vector<Permutation> word_stabilizer(const Word& w) {
  std::vector<Permutation> out;
  for (auto& p : all_permutations(w.size()))
    if (apply_perm(p, w) == w) out.push_back(std::move(p));
  return out;
}

/// Subgroup of S_|a| × S_|b| fixing both words, by brute force.
inline PermGroup stabilizer(const Word& a, const Word& b, const Limits& limits = default_limits()) {
  check_degree(a.size(), b.size(), limits);
  const auto sa = word_stabilizer(a);
  const auto sb = word_stabilizer(b);
  std::vector<PermPair> els;
  els.reserve(sa.size() * sb.size());
  for (const auto& s : sa)
    for (const auto& t : sb) els.push_back({s, t});
  return group_from_elements(a.size(), b.size(), std::move(els));
}

/// Least member of every left coset g·G of G in S_m × S_n, in increasing order.
inline std::vector<PermPair> coset_reps(const PermGroup& grp, const Limits& limits = default_limits()) {
  check_degree(grp.m(), grp.n(), limits);
  const auto& table = SymmetricPairTable::get(grp.m(), grp.n());
  std::vector<bool> covered(table.order(), false);
  std::vector<PermPair> reps;
  for (std::size_t r = 0; r < table.order(); ++r) {
    if (covered[r]) continue;
    const auto& g = table.elements()[r];
    reps.push_back(g);
    for (const auto& h : grp.elements()) covered[g.compose(h).rank()] = true;
  }
  return reps;
}

}  // namespace signet
