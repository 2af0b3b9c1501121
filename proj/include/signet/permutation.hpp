#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "signet/algebra.hpp"
#include "signet/error.hpp"

namespace signet {

/// Bijection on {0..n-1}; images[i] is the image of position i.
///
/// Permutations act on words on the left: apply(σ, w)[σ(i)] = w[i], so that
/// apply(σ ∘ τ, w) = apply(σ, apply(τ, w)). The same convention is used for
/// every word action in the library.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (int v : images_) {
      if (v < 0 || static_cast<std::size_t>(v) >= images_.size() || seen[v])
        fail(ErrorCode::validation, "image array is not a bijection");
      seen[v] = true;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 0);
    return Permutation(std::move(im), Unchecked{});
  }

  static Permutation transposition(std::size_t n, std::size_t i, std::size_t j) {
    auto p = identity(n);
    std::swap(p.images_[i], p.images_[j]);
    return p;
  }

  std::size_t size() const { return images_.size(); }
  int operator()(std::size_t i) const { return images_[i]; }
  const std::vector<int>& images() const { return images_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != static_cast<int>(i)) return false;
    return true;
  }

  /// (this ∘ other)(i) = this(other(i)).
  Permutation compose(const Permutation& other) const {
    if (other.size() != size()) fail(ErrorCode::validation, "permutation degree mismatch");
    std::vector<int> im(size());
    for (std::size_t i = 0; i < size(); ++i) im[i] = images_[other.images_[i]];
    return Permutation(std::move(im), Unchecked{});
  }

  Permutation inverse() const {
    std::vector<int> im(size());
    for (std::size_t i = 0; i < size(); ++i) im[images_[i]] = static_cast<int>(i);
    return Permutation(std::move(im), Unchecked{});
  }

  /// Block sum: this on the first size() points, other on the rest.
  Permutation direct_sum(const Permutation& other) const {
    std::vector<int> im = images_;
    const int shift = static_cast<int>(size());
    for (int v : other.images_) im.push_back(v + shift);
    return Permutation(std::move(im), Unchecked{});
  }

  /// Lexicographic rank among all permutations of the same degree.
  std::uint64_t rank() const {
    std::uint64_t r = 0;
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t smaller = 0;
      for (std::size_t j = i + 1; j < n; ++j)
        if (images_[j] < images_[i]) ++smaller;
      r = r * (n - i) + smaller;
    }
    return r;
  }

  static Permutation unrank(std::size_t n, std::uint64_t r) {
    std::vector<std::uint64_t> digits(n);
    for (std::size_t i = n; i-- > 0;) {
      const std::uint64_t base = n - i;
      digits[i] = r % base;
      r /= base;
    }
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> im(n);
    for (std::size_t i = 0; i < n; ++i) {
      im[i] = pool[digits[i]];
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digits[i]));
    }
    return Permutation(std::move(im), Unchecked{});
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  struct Unchecked {};
  Permutation(std::vector<int> images, Unchecked) : images_(std::move(images)) {}

  std::vector<int> images_;
};

inline std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Left action on sequences: result[σ(i)] = seq[i].
template <class T>
std::vector<T> apply_perm(const Permutation& sigma, const std::vector<T>& seq) {
  if (sigma.size() != seq.size())
    fail(ErrorCode::validation, "permutation of degree " + std::to_string(sigma.size()) +
                                    " applied to a word of length " +
                                    std::to_string(seq.size()));
  std::vector<T> out(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) out[sigma(i)] = seq[i];
  return out;
}

inline Word apply_perm_word(const Permutation& sigma, const Word& w) { return apply_perm(sigma, w); }

/// Some permutation π with apply(π, from) = to, or nothing when the words are
/// not rearrangements of each other. Equal letters are matched in order.
template <class T>
std::optional<Permutation> permutation_between(const std::vector<T>& from, const std::vector<T>& to) {
  if (from.size() != to.size()) return std::nullopt;
  std::vector<int> im(from.size(), -1);
  std::vector<bool> used(to.size(), false);
  for (std::size_t i = 0; i < from.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < to.size(); ++j) {
      if (!used[j] && to[j] == from[i]) {
        used[j] = true;
        im[i] = static_cast<int>(j);
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  return Permutation(std::move(im));
}

/// All permutations of degree n, lexicographically ordered.
inline std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 0);
  std::vector<Permutation> out;
  out.reserve(factorial(n));
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

/// An element of S_m × S_n: independent permutations of a source word and a
/// target word.
struct PermPair {
  Permutation src;
  Permutation tgt;

  static PermPair identity(std::size_t m, std::size_t n) {
    return {Permutation::identity(m), Permutation::identity(n)};
  }

  std::size_t m() const { return src.size(); }
  std::size_t n() const { return tgt.size(); }

  bool is_identity() const { return src.is_identity() && tgt.is_identity(); }

  PermPair compose(const PermPair& other) const {
    return {src.compose(other.src), tgt.compose(other.tgt)};
  }
  PermPair inverse() const { return {src.inverse(), tgt.inverse()}; }

  std::uint64_t rank() const { return src.rank() * factorial(n()) + tgt.rank(); }

  static PermPair unrank(std::size_t m, std::size_t n, std::uint64_t r) {
    const auto nf = factorial(n);
    return {Permutation::unrank(m, r / nf), Permutation::unrank(n, r % nf)};
  }

  friend bool operator==(const PermPair&, const PermPair&) = default;
  friend auto operator<=>(const PermPair&, const PermPair&) = default;
};

inline std::pair<Word, Word> apply_pair(const PermPair& g, const Word& a, const Word& b) {
  return {apply_perm(g.src, a), apply_perm(g.tgt, b)};
}

/// Every element of S_m × S_n in rank order, together with a factorisation of
/// each element through the adjacent transpositions. Tables are built once per
/// degree pair and shared.
class SymmetricPairTable {
 public:
  /// Generator k is an adjacent transposition: k < m-1 swaps source positions
  /// (k, k+1); otherwise it swaps target positions (k-(m-1), k-(m-1)+1).
  struct Step {
    std::uint64_t prev;  // element = generator ∘ prev
    int generator;       // -1 for the identity
  };

  static const SymmetricPairTable& get(std::size_t m, std::size_t n) {
    static std::mutex mu;
    static std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<SymmetricPairTable>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{m, n}];
    if (!slot) slot.reset(new SymmetricPairTable(m, n));
    return *slot;
  }

  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<PermPair>& elements() const { return elements_; }
  const std::vector<PermPair>& generators() const { return generators_; }
  /// Elements in breadth-first order from the identity.
  const std::vector<std::uint64_t>& bfs_order() const { return bfs_; }
  const Step& step(std::uint64_t rank) const { return steps_[rank]; }

 private:
  SymmetricPairTable(std::size_t m, std::size_t n) : m_(m), n_(n) {
    for (const auto& s : all_permutations(m))
      for (const auto& t : all_permutations(n)) elements_.push_back({s, t});
    for (std::size_t i = 0; i + 1 < m; ++i)
      generators_.push_back({Permutation::transposition(m, i, i + 1), Permutation::identity(n)});
    for (std::size_t j = 0; j + 1 < n; ++j)
      generators_.push_back({Permutation::identity(m), Permutation::transposition(n, j, j + 1)});
    steps_.assign(elements_.size(), Step{0, -2});
    steps_[0] = Step{0, -1};
    bfs_.push_back(0);
    for (std::size_t head = 0; head < bfs_.size(); ++head) {
      const auto cur = bfs_[head];
      for (std::size_t k = 0; k < generators_.size(); ++k) {
        const auto next = generators_[k].compose(elements_[cur]).rank();
        if (steps_[next].generator == -2) {
          steps_[next] = Step{cur, static_cast<int>(k)};
          bfs_.push_back(next);
        }
      }
    }
  }

  std::size_t m_, n_;
  std::vector<PermPair> elements_;
  std::vector<PermPair> generators_;
  std::vector<Step> steps_;
  std::vector<std::uint64_t> bfs_;
};

inline std::string to_string(const Permutation& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p(i));
  }
  return s + "]";
}

inline std::string to_string(const PermPair& g) { return "(" + to_string(g.src) + "," + to_string(g.tgt) + ")"; }

}  // namespace signet
