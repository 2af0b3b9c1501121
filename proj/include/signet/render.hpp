#pragma once

#include <sstream>
#include <string>
#include <variant>

#include "signet/open.hpp"

namespace signet {

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '\n') {
      out += "\\n";
      continue;
    }
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

inline std::string place_node(const PlaceId& p) { return dot_quote("p:" + p); }
inline std::string trans_node(const std::string& t) { return dot_quote("t:" + t); }

class DotWriter {
 public:
  explicit DotWriter(std::string name) {
    out_ << "digraph " << dot_quote(name) << " {\n  rankdir=LR;\n";
  }
  void place(const PlaceId& p) { out_ << "  " << place_node(p) << " [shape=circle, label=" << dot_quote(p) << "];\n"; }
  void box(const std::string& id, const std::string& label) {
    out_ << "  " << trans_node(id) << " [shape=box, label=" << dot_quote(label) << "];\n";
  }
  void arc(const std::string& from, const std::string& to, const std::string& label) {
    out_ << "  " << from << " -> " << to;
    if (!label.empty()) out_ << " [label=" << dot_quote(label) << "]";
    out_ << ";\n";
  }
  void raw(const std::string& line) { out_ << "  " << line << "\n"; }
  std::string finish() {
    out_ << "}\n";
    return out_.str();
  }

 private:
  std::ostringstream out_;
};

// Multiset arcs: one per place, labeled with the multiplicity when above 1.
inline void multiset_arcs(DotWriter& w, const std::string& t, const Multiset& src, const Multiset& tgt) {
  for (const auto& [p, k] : src.counts()) w.arc(place_node(p), trans_node(t), k > 1 ? std::to_string(k) : "");
  for (const auto& [p, k] : tgt.counts()) w.arc(trans_node(t), place_node(p), k > 1 ? std::to_string(k) : "");
}

// Word arcs: one per position, labeled with the 1-based position.
inline void word_arcs(DotWriter& w, const std::string& t, const Word& src, const Word& tgt) {
  for (std::size_t i = 0; i < src.size(); ++i) w.arc(place_node(src[i]), trans_node(t), std::to_string(i + 1));
  for (std::size_t i = 0; i < tgt.size(); ++i) w.arc(trans_node(t), place_node(tgt[i]), std::to_string(i + 1));
}

inline void body(DotWriter& w, const PetriNet& n) {
  for (const auto& p : n.places) w.place(p);
  for (const auto& t : n.transitions) {
    w.box(t.id, t.id);
    multiset_arcs(w, t.id, t.src, t.tgt);
  }
}

inline void body(DotWriter& w, const PreNet& n) {
  for (const auto& p : n.places) w.place(p);
  for (const auto& t : n.transitions) {
    w.box(t.id, t.id);
    word_arcs(w, t.id, t.src, t.tgt);
  }
}

/// Class boxes carry "S<k>" for an isotropy group of order k > 1.
inline void body(DotWriter& w, const SigmaNet& n) {
  for (const auto& p : n.places) w.place(p);
  for (const auto& c : n.classes) {
    const auto order = c.isotropy.order();
    w.box(c.id, order > 1 ? c.id + "\nS" + std::to_string(order) : c.id);
    word_arcs(w, c.id, c.src, c.tgt);
  }
}

inline void body(DotWriter& w, const SigmaNetPresheaf& n) { body(w, to_groupoid_located(n).net); }

inline void body(DotWriter& w, const WholeGrainNet& n) {
  for (const auto& p : n.places) w.place(p);
  for (const auto& t : n.transitions) w.box(t, t);
  for (const auto& i : n.inputs) w.arc(place_node(i.place), trans_node(i.transition), i.id);
  for (const auto& o : n.outputs) w.arc(trans_node(o.transition), place_node(o.place), o.id);
}

}  // namespace detail

inline std::string render_dot(const AnyNet& n) {
  detail::DotWriter w(kind_of(n));
  std::visit([&](const auto& x) { detail::body(w, x); }, n);
  return w.finish();
}

/// Boundary points are drawn as small dots joined to their places by dashed
/// edges, left boundary pointing in and right boundary pointing out.
template <class Net>
std::string render_dot(const OpenNet<Net>& o) {
  detail::DotWriter w("open");
  detail::body(w, o.body);
  for (const auto& [x, p] : o.left_leg) {
    const auto node = detail::dot_quote("L:" + x);
    w.raw(node + " [shape=point, xlabel=" + detail::dot_quote(x) + "];");
    w.raw(node + " -> " + detail::place_node(p) + " [style=dashed, arrowhead=none];");
  }
  for (const auto& [y, p] : o.right_leg) {
    const auto node = detail::dot_quote("R:" + y);
    w.raw(node + " [shape=point, xlabel=" + detail::dot_quote(y) + "];");
    w.raw(detail::place_node(p) + " -> " + node + " [style=dashed, arrowhead=none];");
  }
  return w.finish();
}

inline std::string render_dot(const AnyOpenNet& o) {
  return std::visit([](const auto& x) { return render_dot(x); }, o);
}

}  // namespace signet
