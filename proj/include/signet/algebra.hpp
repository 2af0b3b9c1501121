#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "signet/error.hpp"

namespace signet {

using PlaceId = std::string;

/// Ordered finite sequence of places (an element of the free monoid S*).
using Word = std::vector<PlaceId>;

using PlaceMap = std::map<PlaceId, PlaceId>;

/// Element of the free commutative monoid N[S]. Zero counts are never stored.
class Multiset {
 public:
  using Counts = std::map<PlaceId, std::size_t>;

  Multiset() = default;
  Multiset(std::initializer_list<std::pair<const PlaceId, std::size_t>> init) {
    for (const auto& [p, n] : init) add(p, n);
  }

  static Multiset from_word(const Word& w) {
    Multiset m;
    for (const auto& p : w) m.add(p);
    return m;
  }

  void add(const PlaceId& p, std::size_t n = 1) {
    if (n != 0) counts_[p] += n;
  }

  std::size_t count(const PlaceId& p) const {
    auto it = counts_.find(p);
    return it == counts_.end() ? 0 : it->second;
  }

  /// Total number of tokens.
  std::size_t size() const {
    std::size_t total = 0;
    for (const auto& [p, n] : counts_) total += n;
    return total;
  }

  bool empty() const { return counts_.empty(); }

  const Counts& counts() const { return counts_; }

  /// Pointwise order: every count here is at most the count in `other`.
  bool le(const Multiset& other) const {
    for (const auto& [p, n] : counts_)
      if (other.count(p) < n) return false;
    return true;
  }

  Multiset operator+(const Multiset& other) const {
    Multiset r = *this;
    for (const auto& [p, n] : other.counts_) r.add(p, n);
    return r;
  }

  /// Requires other.le(*this).
  Multiset operator-(const Multiset& other) const {
    Multiset r = *this;
    for (const auto& [p, n] : other.counts_) {
      auto it = r.counts_.find(p);
      if (it == r.counts_.end() || it->second < n)
        fail(ErrorCode::validation, "multiset subtraction underflow at place " + p);
      it->second -= n;
      if (it->second == 0) r.counts_.erase(it);
    }
    return r;
  }

  /// Letters in place-id order, each repeated by its count.
  Word sorted_word() const {
    Word w;
    for (const auto& [p, n] : counts_) w.insert(w.end(), n, p);
    return w;
  }

  friend bool operator==(const Multiset&, const Multiset&) = default;
  friend auto operator<=>(const Multiset& a, const Multiset& b) {
    return a.counts_ <=> b.counts_;
  }

 private:
  Counts counts_;
};

inline const PlaceId& map_place(const PlaceMap& f, const PlaceId& p) {
  auto it = f.find(p);
  if (it == f.end()) fail(ErrorCode::validation, "place map undefined on " + p);
  return it->second;
}

/// N[f]: the monoid homomorphism extending f to multisets.
inline Multiset extend_place_map(const PlaceMap& f, const Multiset& x) {
  Multiset r;
  for (const auto& [p, n] : x.counts()) r.add(map_place(f, p), n);
  return r;
}

/// f*: the monoid homomorphism extending f to words, letter by letter.
inline Word extend_place_map(const PlaceMap& f, const Word& x) {
  Word r;
  r.reserve(x.size());
  for (const auto& p : x) r.push_back(map_place(f, p));
  return r;
}

inline Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

inline std::string to_string(const Word& w) {
  return w.empty() ? std::string("ε") : "(" + join(w, ",") + ")";
}

inline std::string to_string(const Multiset& m) {
  if (m.empty()) return "0";
  std::vector<std::string> parts;
  for (const auto& [p, n] : m.counts())
    parts.push_back(n == 1 ? p : std::to_string(n) + p);
  return join(parts, "+");
}

}  // namespace signet
