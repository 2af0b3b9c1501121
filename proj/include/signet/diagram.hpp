#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "signet/term.hpp"

namespace signet {

/// A port of a token-flow diagram. node < 0 stands for the outer interface.
struct PortRef {
  int node = -1;
  int port = 0;
  friend bool operator==(const PortRef&, const PortRef&) = default;
  friend auto operator<=>(const PortRef&, const PortRef&) = default;
};

/// Generator occurrences wired together. inputs[n][k] is the producer
/// feeding input k of node n; outputs[j] is the producer feeding output
/// position j. A producer is an input position (node < 0) or a node output.
struct TokenFlowDiagram {
  Word src;
  Word tgt;
  std::vector<std::string> nodes;
  std::vector<std::vector<PortRef>> inputs;
  std::vector<PortRef> outputs;
};

namespace detail {

inline TokenFlowDiagram diagram_rec(const Term& t, const Presentation& p) {
  TokenFlowDiagram d;
  switch (t.kind) {
    case TermKind::id:
      d.src = d.tgt = t.object;
      for (std::size_t i = 0; i < t.object.size(); ++i) d.outputs.push_back({-1, static_cast<int>(i)});
      return d;
    case TermKind::gen: {
      const auto* g = p.find(t.gen);
      d.src = g->src;
      d.tgt = g->tgt;
      d.nodes.push_back(g->id);
      d.inputs.emplace_back();
      for (std::size_t i = 0; i < g->src.size(); ++i) d.inputs[0].push_back({-1, static_cast<int>(i)});
      for (std::size_t k = 0; k < g->tgt.size(); ++k) d.outputs.push_back({0, static_cast<int>(k)});
      return d;
    }
    case TermKind::sym:
      d.src = t.object;
      d.tgt = apply_perm(t.perm, t.object);
      d.outputs.resize(t.object.size());
      for (std::size_t i = 0; i < t.object.size(); ++i) d.outputs[t.perm(i)] = {-1, static_cast<int>(i)};
      return d;
    case TermKind::tensor: {
      auto a = diagram_rec(t.args[0], p);
      auto b = diagram_rec(t.args[1], p);
      const int shift = static_cast<int>(a.nodes.size());
      const int in_shift = static_cast<int>(a.src.size());
      auto lift = [&](PortRef r) { return r.node < 0 ? PortRef{-1, r.port + in_shift} : PortRef{r.node + shift, r.port}; };
      d = std::move(a);
      d.src = concat(d.src, b.src);
      d.tgt = concat(d.tgt, b.tgt);
      for (std::size_t n = 0; n < b.nodes.size(); ++n) {
        d.nodes.push_back(b.nodes[n]);
        std::vector<PortRef> ins;
        for (auto r : b.inputs[n]) ins.push_back(lift(r));
        d.inputs.push_back(std::move(ins));
      }
      for (auto r : b.outputs) d.outputs.push_back(lift(r));
      return d;
    }
    case TermKind::comp: {
      auto a = diagram_rec(t.args[0], p);
      auto b = diagram_rec(t.args[1], p);
      const int shift = static_cast<int>(a.nodes.size());
      auto splice = [&](PortRef r) { return r.node < 0 ? a.outputs[r.port] : PortRef{r.node + shift, r.port}; };
      d.src = a.src;
      d.tgt = b.tgt;
      d.nodes = a.nodes;
      d.inputs = a.inputs;
      for (std::size_t n = 0; n < b.nodes.size(); ++n) {
        d.nodes.push_back(b.nodes[n]);
        std::vector<PortRef> ins;
        for (auto r : b.inputs[n]) ins.push_back(splice(r));
        d.inputs.push_back(std::move(ins));
      }
      for (auto r : b.outputs) d.outputs.push_back(splice(r));
      return d;
    }
  }
  return d;
}

}  // namespace detail

inline TokenFlowDiagram to_diagram(const Term& t, const Presentation& p) {
  if (p.flavor == Flavor::cmc) fail(ErrorCode::unsupported, "diagrams are defined for StrMC and SSMC only");
  typecheck(t, p);
  return detail::diagram_rec(t, p);
}

namespace detail {

/// Anchored isomorphism search. Interface positions are fixed; a node may
/// match a node with the same generator, its ports permuted by an element
/// (σ, τ) of the generator's isotropy group (identity only when trivial).
class DiagramMatcher {
 public:
  DiagramMatcher(const TokenFlowDiagram& a, const TokenFlowDiagram& b, const Presentation& p)
      : a_(a), b_(b), p_(p), map_(a.nodes.size()), used_(b.nodes.size(), false) {
    consumers(a_, cons_a_);
    consumers(b_, cons_b_);
    order_nodes();
  }

  bool run() {
    if (a_.src != b_.src || a_.tgt != b_.tgt || a_.nodes.size() != b_.nodes.size()) return false;
    auto na = a_.nodes, nb = b_.nodes;
    std::sort(na.begin(), na.end());
    std::sort(nb.begin(), nb.end());
    if (na != nb) return false;
    for (std::size_t j = 0; j < a_.outputs.size(); ++j)
      if (a_.outputs[j].node < 0 && a_.outputs[j] != b_.outputs[j]) return false;
    return extend(0);
  }

 private:
  struct Match {
    int node = -1;
    PermPair g;
  };

  // Consumer of each producer: key (node, port) for node outputs, (-1, i)
  // for input positions. Value (node, port) for node inputs, (-1, j) for
  // output positions.
  static void consumers(const TokenFlowDiagram& d, std::map<PortRef, PortRef>& out) {
    for (std::size_t n = 0; n < d.inputs.size(); ++n)
      for (std::size_t k = 0; k < d.inputs[n].size(); ++k) out[d.inputs[n][k]] = {static_cast<int>(n), static_cast<int>(k)};
    for (std::size_t j = 0; j < d.outputs.size(); ++j) out[d.outputs[j]] = {-1, static_cast<int>(j)};
  }

  void order_nodes() {
    // Breadth-first from the interface so that constraints bind early.
    std::vector<bool> seen(a_.nodes.size(), false);
    std::vector<int> queue;
    auto push = [&](int n) {
      if (n >= 0 && !seen[n]) {
        seen[n] = true;
        queue.push_back(n);
      }
    };
    for (const auto& r : a_.outputs) push(r.node);
    for (const auto& [prod, cons] : cons_a_)
      if (prod.node < 0) push(cons.node);
    for (std::size_t head = 0;; ++head) {
      if (head == queue.size()) {
        auto it = std::find(seen.begin(), seen.end(), false);
        if (it == seen.end()) break;
        push(static_cast<int>(it - seen.begin()));
      }
      const int n = queue[head];
      for (const auto& r : a_.inputs[n]) push(r.node);
      for (std::size_t k = 0; k < p_.find(a_.nodes[n])->tgt.size(); ++k) push(cons_a_.at({n, static_cast<int>(k)}).node);
    }
    order_ = std::move(queue);
  }

  std::vector<PermPair> symmetries(const std::string& gen) const {
    auto it = p_.isotropy.find(gen);
    if (it != p_.isotropy.end()) return it->second.elements();
    const auto* g = p_.find(gen);
    return {PermPair::identity(g->src.size(), g->tgt.size())};
  }

  // Image of a producer (an input position or a node output) when known.
  std::optional<PortRef> image_producer(PortRef r) const {
    if (r.node < 0) return r;
    const auto& m = map_[r.node];
    if (m.node < 0) return std::nullopt;
    return PortRef{m.node, m.g.tgt(r.port)};
  }

  std::optional<PortRef> image_consumer(PortRef r) const {
    if (r.node < 0) return r;
    const auto& m = map_[r.node];
    if (m.node < 0) return std::nullopt;
    return PortRef{m.node, m.g.src(r.port)};
  }

  bool consistent(int na) const {
    const auto& m = map_[na];
    for (std::size_t k = 0; k < a_.inputs[na].size(); ++k) {
      const auto img = image_producer(a_.inputs[na][k]);
      if (img && b_.inputs[m.node][m.g.src(k)] != *img) return false;
    }
    const auto arity = p_.find(a_.nodes[na])->tgt.size();
    for (std::size_t k = 0; k < arity; ++k) {
      const auto img = image_consumer(cons_a_.at({na, static_cast<int>(k)}));
      if (img && cons_b_.at({m.node, m.g.tgt(k)}) != *img) return false;
    }
    return true;
  }

  bool extend(std::size_t i) {
    if (i == order_.size()) return true;
    const int na = order_[i];
    const auto syms = symmetries(a_.nodes[na]);
    for (std::size_t nb = 0; nb < b_.nodes.size(); ++nb) {
      if (used_[nb] || b_.nodes[nb] != a_.nodes[na]) continue;
      used_[nb] = true;
      for (const auto& g : syms) {
        map_[na] = {static_cast<int>(nb), g};
        if (consistent(na) && extend(i + 1)) return true;
      }
      map_[na] = {};
      used_[nb] = false;
    }
    return false;
  }

  const TokenFlowDiagram& a_;
  const TokenFlowDiagram& b_;
  const Presentation& p_;
  std::map<PortRef, PortRef> cons_a_, cons_b_;
  std::vector<int> order_;
  std::vector<Match> map_;
  std::vector<bool> used_;
};

}  // namespace detail

/// Equality of morphisms in the free StrMC/SSMC: an anchored isomorphism of
/// diagrams, with node ports allowed to move by the node's isotropy.
inline bool diagram_isomorphic(const TokenFlowDiagram& a, const TokenFlowDiagram& b, const Presentation& p) {
  return detail::DiagramMatcher(a, b, p).run();
}

}  // namespace signet
