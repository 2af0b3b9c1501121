#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <string>
#include <vector>

#include "signet/nets.hpp"

namespace signet {

/// Where a concrete transition sits inside a skeletal Σ-net: its class and the
/// least element g of the coset with transition = g · representative.
struct ClassImage {
  TransitionId cls;
  PermPair witness;
  friend bool operator==(const ClassImage&, const ClassImage&) = default;
};

/// The exploded (presheaf) picture of a skeletal Σ-net. Each class with
/// isotropy G at degree (m, n) contributes one element per left coset of G,
/// indexed in the order of the least coset members.
class SigmaView {
 public:
  struct Element {
    std::size_t cls;
    PermPair rep;  // least member of the coset
    Word src;
    Word tgt;
    TransitionId id;  // "<class>#<k>"
  };

  explicit SigmaView(SigmaNet net, const Limits& limits = default_limits()) : net_(std::move(net)) {
    first_.reserve(net_.classes.size());
    for (std::size_t c = 0; c < net_.classes.size(); ++c) {
      const auto& cls = net_.classes[c];
      check_degree(cls.src.size(), cls.tgt.size(), limits);
      const auto& table = SymmetricPairTable::get(cls.src.size(), cls.tgt.size());
      first_.push_back(elements_.size());
      std::vector<std::size_t> by_rank(table.order());
      const auto reps = coset_reps(cls.isotropy, limits);
      for (std::size_t k = 0; k < reps.size(); ++k) {
        const std::size_t idx = elements_.size();
        auto [s, t] = apply_pair(reps[k], cls.src, cls.tgt);
        elements_.push_back({c, reps[k], std::move(s), std::move(t), cls.id + "#" + std::to_string(k)});
        for (const auto& h : cls.isotropy.elements()) by_rank[reps[k].compose(h).rank()] = idx;
      }
      by_rank_.push_back(std::move(by_rank));
    }
  }

  const SigmaNet& net() const { return net_; }
  const std::vector<Element>& elements() const { return elements_; }

  /// Index of the element g · rep(cls).
  std::size_t locate(std::size_t cls, const PermPair& g) const { return by_rank_[cls][g.rank()]; }

  /// Elements of class `cls` occupy [first(cls), first(cls) + count(cls)).
  std::size_t first(std::size_t cls) const { return first_[cls]; }
  std::size_t count(std::size_t cls) const {
    return (cls + 1 < first_.size() ? first_[cls + 1] : elements_.size()) - first_[cls];
  }

  /// Image of element u under an arbitrary g ∈ S_m × S_n.
  std::size_t act(const PermPair& g, std::size_t u) const {
    const auto& e = elements_[u];
    return locate(e.cls, g.compose(e.rep));
  }

 private:
  SigmaNet net_;
  std::vector<Element> elements_;
  std::vector<std::size_t> first_;
  std::vector<std::vector<std::size_t>> by_rank_;
};

inline SigmaNetPresheaf to_presheaf(const SigmaNet& net, const Limits& limits = default_limits()) {
  SigmaView view(net, limits);
  SigmaNetPresheaf out;
  out.places = net.places;
  for (std::size_t u = 0; u < view.elements().size(); ++u) {
    const auto& e = view.elements()[u];
    const auto& table = SymmetricPairTable::get(e.src.size(), e.tgt.size());
    PresheafTransition t{e.id, e.src, e.tgt, {}, {}};
    const std::size_t src_gens = e.src.empty() ? 0 : e.src.size() - 1;
    for (std::size_t k = 0; k < table.generators().size(); ++k) {
      const auto& image = view.elements()[view.act(table.generators()[k], u)].id;
      (k < src_gens ? t.src_swaps : t.tgt_swaps).push_back(image);
    }
    out.transitions.push_back(std::move(t));
  }
  return canonical(std::move(out));
}

namespace detail {

/// Full action tables of a presheaf: result[u][rank(g)] = index of g·u.
/// Records every violation in `errs`; the tables are only meaningful when no
/// violation was found.
inline std::vector<std::vector<std::size_t>> presheaf_action(const SigmaNetPresheaf& p, const Limits& limits,
                                                             std::vector<std::string>& errs) {
  const auto& ts = p.transitions;
  std::vector<std::vector<std::size_t>> act(ts.size());
  // swap_to[u][k]: index of generator k applied to u, or npos.
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> swap_to(ts.size());
  for (std::size_t u = 0; u < ts.size(); ++u) {
    const auto& t = ts[u];
    const std::size_t m = t.src.size(), n = t.tgt.size();
    if (m > limits.max_degree || n > limits.max_degree)
      fail(ErrorCode::capacity, "transition " + t.id + " exceeds the degree cap");
    if (t.src_swaps.size() != (m ? m - 1 : 0) || t.tgt_swaps.size() != (n ? n - 1 : 0)) {
      errs.push_back("transition " + t.id + ": swap lists have the wrong length");
      continue;
    }
    const auto& table = SymmetricPairTable::get(m, n);
    std::vector<std::size_t> row;
    for (std::size_t k = 0; k < table.generators().size(); ++k) {
      const auto& target = k < t.src_swaps.size() ? t.src_swaps[k] : t.tgt_swaps[k - t.src_swaps.size()];
      const auto* v = find_by_id(ts, target);
      if (!v) {
        errs.push_back("transition " + t.id + ": swap refers to unknown transition " + target);
        row.push_back(npos);
        continue;
      }
      if (apply_pair(table.generators()[k], t.src, t.tgt) != std::pair{v->src, v->tgt})
        errs.push_back("transition " + t.id + ": swap image " + target + " lies in the wrong cell");
      row.push_back(static_cast<std::size_t>(v - ts.data()));
    }
    swap_to[u] = std::move(row);
  }
  if (!errs.empty()) return act;

  for (std::size_t u = 0; u < ts.size(); ++u) {
    const auto& table = SymmetricPairTable::get(ts[u].src.size(), ts[u].tgt.size());
    auto& row = act[u];
    row.assign(table.order(), npos);
    row[0] = u;
    for (auto e : table.bfs_order()) {
      if (e == 0) continue;
      const auto& st = table.step(e);
      row[e] = swap_to[row[st.prev]][static_cast<std::size_t>(st.generator)];
    }
    bool ok = true;
    for (std::size_t e = 0; e < table.order() && ok; ++e)
      for (std::size_t k = 0; k < table.generators().size() && ok; ++k) {
        const auto ge = table.generators()[k].compose(table.elements()[e]).rank();
        if (row[ge] != swap_to[row[e]][k]) {
          errs.push_back("transition " + ts[u].id + ": swap action is not functorial");
          ok = false;
        }
      }
  }
  return act;
}

}  // namespace detail

inline std::vector<std::string> validate_net(const SigmaNetPresheaf& p, const Limits& limits = default_limits()) {
  std::vector<std::string> errs;
  detail::check_sorted_places(p.places, errs);
  detail::check_sorted_ids(p.transitions, "transition", errs);
  for (const auto& t : p.transitions) {
    detail::check_word(p.places, t.src, "transition " + t.id + " source", errs);
    detail::check_word(p.places, t.tgt, "transition " + t.id + " target", errs);
  }
  if (errs.empty()) detail::presheaf_action(p, limits, errs);
  return errs;
}

struct GroupoidForm {
  SigmaNet net;
  /// Class and canonical witness for every presheaf transition.
  std::map<TransitionId, ClassImage> location;
};

/// Skeletal form: one class per orbit, represented by its least transition in
/// (source word, target word, id) order.
inline GroupoidForm to_groupoid_located(const SigmaNetPresheaf& p, const Limits& limits = default_limits()) {
  std::vector<std::string> errs;
  detail::check_sorted_places(p.places, errs);
  detail::check_sorted_ids(p.transitions, "transition", errs);
  if (!errs.empty()) fail(ErrorCode::validation, errs.front());
  const auto act = detail::presheaf_action(p, limits, errs);
  if (!errs.empty()) fail(ErrorCode::validation, errs.front());

  const auto& ts = p.transitions;
  std::vector<std::size_t> order(ts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(ts[a].src, ts[a].tgt, ts[a].id) < std::tie(ts[b].src, ts[b].tgt, ts[b].id);
  });

  GroupoidForm out;
  out.net.places = p.places;
  std::vector<bool> done(ts.size(), false);
  for (auto u : order) {
    if (done[u]) continue;
    const auto& t = ts[u];
    const auto& table = SymmetricPairTable::get(t.src.size(), t.tgt.size());
    std::vector<PermPair> iso;
    for (std::size_t e = 0; e < table.order(); ++e)
      if (act[u][e] == u) iso.push_back(table.elements()[e]);
    auto grp = group_from_elements(t.src.size(), t.tgt.size(), std::move(iso));
    for (std::size_t e = 0; e < table.order(); ++e) {
      const auto v = act[u][e];
      if (done[v]) continue;
      done[v] = true;
      out.location[ts[v].id] = ClassImage{t.id, grp.coset_min(table.elements()[e])};
    }
    out.net.classes.push_back({t.id, t.src, t.tgt, std::move(grp)});
  }
  out.net = canonical(std::move(out.net));
  return out;
}

inline SigmaNet to_groupoid(const SigmaNetPresheaf& p, const Limits& limits = default_limits()) {
  return to_groupoid_located(p, limits).net;
}

}  // namespace signet
