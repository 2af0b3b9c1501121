#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "signet/hom.hpp"
#include "signet/io.hpp"
#include "signet/random.hpp"
#include "signet/translations.hpp"

namespace signet {

// ---------------------------------------------------------------------------
// Pushouts.

template <class Net>
struct Pushout {
  Net net;
  MorphismOf_t<Net> left;   // from the first leg's target
  MorphismOf_t<Net> right;  // from the second leg's target
};

namespace detail {

/// Union-find over 0..n-1 whose roots are always the least member.
class LeastUnionFind {
 public:
  explicit LeastUnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

/// Quotient of the disjoint union L ⊔ R by the pairs (l, r). Classes are
/// named prefix0, prefix1, ... in order of first appearance, left before
/// right.
struct Quotient {
  std::vector<std::string> left_names;
  std::vector<std::string> right_names;
  std::vector<std::string> names;  // in order of creation
};

inline Quotient quotient(std::size_t nl, std::size_t nr, const std::vector<std::pair<std::size_t, std::size_t>>& glue,
                         const std::string& prefix) {
  LeastUnionFind uf(nl + nr);
  for (const auto& [l, r] : glue) uf.unite(l, nl + r);
  Quotient q;
  std::map<std::size_t, std::string> named;
  auto name = [&](std::size_t x) {
    const auto root = uf.find(x);
    auto it = named.find(root);
    if (it != named.end()) return it->second;
    auto n = prefix + std::to_string(named.size());
    named.emplace(root, n);
    q.names.push_back(n);
    return n;
  };
  for (std::size_t i = 0; i < nl; ++i) q.left_names.push_back(name(i));
  for (std::size_t i = 0; i < nr; ++i) q.right_names.push_back(name(nl + i));
  return q;
}

template <class Net>
void check_span(const Net& a, const Net& b, const Net& c, const MorphismOf_t<Net>& f, const MorphismOf_t<Net>& g) {
  auto e1 = validate_morphism(f, a, b);
  auto e2 = validate_morphism(g, a, c);
  if (!e1.empty()) fail(ErrorCode::validation, "invalid span, first leg: " + e1.front());
  if (!e2.empty()) fail(ErrorCode::validation, "invalid span, second leg: " + e2.front());
}

template <class Net, class Trans>
Pushout<Net> pushout_plain(const Net& a, const Net& b, const Net& c, const NetMorphism& f, const NetMorphism& g) {
  std::vector<std::pair<std::size_t, std::size_t>> pglue, tglue;
  for (const auto& p : a.places)
    pglue.push_back({static_cast<std::size_t>(std::lower_bound(b.places.begin(), b.places.end(), f.places.at(p)) - b.places.begin()),
                     static_cast<std::size_t>(std::lower_bound(c.places.begin(), c.places.end(), g.places.at(p)) - c.places.begin())});
  for (const auto& t : a.transitions)
    tglue.push_back({index_by_id(b.transitions, f.transitions.at(t.id)), index_by_id(c.transitions, g.transitions.at(t.id))});
  const auto pq = quotient(b.places.size(), c.places.size(), pglue, "q");
  const auto tq = quotient(b.transitions.size(), c.transitions.size(), tglue, "t");

  Pushout<Net> out;
  for (std::size_t i = 0; i < b.places.size(); ++i) out.left.places[b.places[i]] = pq.left_names[i];
  for (std::size_t i = 0; i < c.places.size(); ++i) out.right.places[c.places[i]] = pq.right_names[i];
  out.net.places = pq.names;
  std::map<std::string, Trans> made;
  for (std::size_t i = 0; i < b.transitions.size(); ++i) {
    const auto& t = b.transitions[i];
    out.left.transitions[t.id] = tq.left_names[i];
    made.emplace(tq.left_names[i], Trans{tq.left_names[i], extend_place_map(out.left.places, t.src),
                                         extend_place_map(out.left.places, t.tgt)});
  }
  for (std::size_t i = 0; i < c.transitions.size(); ++i) {
    const auto& t = c.transitions[i];
    out.right.transitions[t.id] = tq.right_names[i];
    made.emplace(tq.right_names[i], Trans{tq.right_names[i], extend_place_map(out.right.places, t.src),
                                          extend_place_map(out.right.places, t.tgt)});
  }
  for (auto& [id, t] : made) out.net.transitions.push_back(std::move(t));
  out.net = canonical(std::move(out.net));
  return out;
}

}  // namespace detail

/// Pushout of b ← a → c. Places and transitions are glued componentwise;
/// fresh ids q<k> and t<k> number the classes in order of first appearance.
inline Pushout<PetriNet> pushout(const PetriNet& a, const PetriNet& b, const PetriNet& c, const NetMorphism& f,
                                 const NetMorphism& g) {
  detail::check_span(a, b, c, f, g);
  return detail::pushout_plain<PetriNet, PetriTransition>(a, b, c, f, g);
}

inline Pushout<PreNet> pushout(const PreNet& a, const PreNet& b, const PreNet& c, const NetMorphism& f,
                               const NetMorphism& g) {
  detail::check_span(a, b, c, f, g);
  return detail::pushout_plain<PreNet, PreTransition>(a, b, c, f, g);
}

/// Σ-net pushout, computed pointwise on exploded transitions: elements of
/// b and c are glued along the images of the elements of a, the symmetric
/// action descends to the classes, and the result is read back as classes.
inline Pushout<SigmaNet> pushout(const SigmaNet& a, const SigmaNet& b, const SigmaNet& c, const SigmaMorphism& f,
                                 const SigmaMorphism& g, const Limits& limits = default_limits()) {
  detail::check_span(a, b, c, f, g);
  std::vector<std::pair<std::size_t, std::size_t>> pglue, eglue;
  for (const auto& p : a.places)
    pglue.push_back({static_cast<std::size_t>(std::lower_bound(b.places.begin(), b.places.end(), f.places.at(p)) - b.places.begin()),
                     static_cast<std::size_t>(std::lower_bound(c.places.begin(), c.places.end(), g.places.at(p)) - c.places.begin())});
  const SigmaView va(a, limits), vb(b, limits), vc(c, limits);
  const auto fa = sigma_components(f, va, vb);
  const auto ga = sigma_components(g, va, vc);
  for (std::size_t u = 0; u < fa.size(); ++u) eglue.push_back({fa[u], ga[u]});
  const auto pq = detail::quotient(b.places.size(), c.places.size(), pglue, "q");
  const auto eq = detail::quotient(vb.elements().size(), vc.elements().size(), eglue, "t");

  Pushout<SigmaNet> out;
  PlaceMap left_places, right_places;
  for (std::size_t i = 0; i < b.places.size(); ++i) left_places[b.places[i]] = pq.left_names[i];
  for (std::size_t i = 0; i < c.places.size(); ++i) right_places[c.places[i]] = pq.right_names[i];

  // One presheaf transition per glued element, with swaps read off either
  // side (the gluing is equivariant, so both agree).
  SigmaNetPresheaf pre{pq.names, {}};
  std::map<std::string, PresheafTransition> made;
  auto add = [&](const SigmaView& v, const std::vector<std::string>& names, const PlaceMap& places) {
    for (std::size_t u = 0; u < v.elements().size(); ++u) {
      if (made.count(names[u])) continue;
      const auto& e = v.elements()[u];
      PresheafTransition t{names[u], extend_place_map(places, e.src), extend_place_map(places, e.tgt), {}, {}};
      const auto& table = SymmetricPairTable::get(e.src.size(), e.tgt.size());
      const auto& gens = table.generators();
      const std::size_t src_gens = e.src.empty() ? 0 : e.src.size() - 1;
      for (std::size_t k = 0; k < gens.size(); ++k) (k < src_gens ? t.src_swaps : t.tgt_swaps).push_back(names[v.act(gens[k], u)]);
      made.emplace(names[u], std::move(t));
    }
  };
  add(vb, eq.left_names, left_places);
  add(vc, eq.right_names, right_places);
  for (auto& [id, t] : made) pre.transitions.push_back(std::move(t));
  const auto located = to_groupoid_located(canonical(std::move(pre)), limits);
  out.net = located.net;
  out.left = {left_places, {}};
  out.right = {right_places, {}};
  for (std::size_t cl = 0; cl < b.classes.size(); ++cl)
    out.left.classes[b.classes[cl].id] = located.location.at(eq.left_names[vb.first(cl)]);
  for (std::size_t cl = 0; cl < c.classes.size(); ++cl)
    out.right.classes[c.classes[cl].id] = located.location.at(eq.right_names[vc.first(cl)]);
  return out;
}

// ---------------------------------------------------------------------------
// Open nets.

template <class Net>
struct OpenNet {
  std::vector<std::string> left;   // boundary X, sorted
  std::vector<std::string> right;  // boundary Y, sorted
  Net body;
  std::map<std::string, PlaceId> left_leg;
  std::map<std::string, PlaceId> right_leg;
};

template <class Net>
std::vector<std::string> validate_open(const OpenNet<Net>& o) {
  auto errs = validate_net(o.body);
  auto check = [&](const std::vector<std::string>& xs, const std::map<std::string, PlaceId>& leg, const char* side) {
    if (!std::is_sorted(xs.begin(), xs.end()) || std::adjacent_find(xs.begin(), xs.end()) != xs.end())
      errs.push_back(std::string(side) + " boundary must be sorted and duplicate-free");
    if (leg.size() != xs.size()) errs.push_back(std::string(side) + " leg must be defined exactly on the boundary");
    for (const auto& x : xs) {
      auto it = leg.find(x);
      if (it == leg.end())
        errs.push_back(std::string(side) + " leg undefined on " + x);
      else if (!has_place(o.body.places, it->second))
        errs.push_back(std::string(side) + " leg sends " + x + " to unknown place " + it->second);
    }
  };
  check(o.left, o.left_leg, "left");
  check(o.right, o.right_leg, "right");
  return errs;
}

/// The discrete net on a set.
template <class Net>
Net discrete(const std::vector<std::string>& xs) {
  Net n{};
  n.places = xs;
  return canonical(std::move(n));
}

/// The identity open net on Y: body L(Y), both legs the identity.
template <class Net>
OpenNet<Net> identity_open(const std::vector<std::string>& ys) {
  OpenNet<Net> o{ys, ys, discrete<Net>(ys), {}, {}};
  std::sort(o.left.begin(), o.left.end());
  o.right = o.left;
  for (const auto& y : ys) o.left_leg[y] = o.right_leg[y] = y;
  return o;
}

namespace detail {
template <class Net>
MorphismOf_t<Net> leg_morphism(const std::map<std::string, PlaceId>& leg) {
  MorphismOf_t<Net> m{};
  m.places = leg;
  return m;
}

inline std::map<std::string, PlaceId> after(const std::map<std::string, PlaceId>& leg, const PlaceMap& f) {
  std::map<std::string, PlaceId> out;
  for (const auto& [x, p] : leg) out[x] = f.at(p);
  return out;
}
}  // namespace detail

/// o1 : X → Y followed by o2 : Y → Z, glued along L(Y).
template <class Net>
OpenNet<Net> compose_open(const OpenNet<Net>& o1, const OpenNet<Net>& o2) {
  if (o1.right != o2.left) fail(ErrorCode::validation, "boundary mismatch: right of the first differs from left of the second");
  const auto apex = discrete<Net>(o1.right);
  const auto po = pushout(apex, o1.body, o2.body, detail::leg_morphism<Net>(o1.right_leg), detail::leg_morphism<Net>(o2.left_leg));
  return {o1.left, o2.right, po.net, detail::after(o1.left_leg, po.left.places), detail::after(o2.right_leg, po.right.places)};
}

namespace detail {

inline std::string tag(int side, const std::string& s) { return std::to_string(side) + "." + s; }

inline PlaceMap tag_places(int side, const std::vector<PlaceId>& ps) {
  PlaceMap m;
  for (const auto& p : ps) m[p] = tag(side, p);
  return m;
}

template <class T>
T tagged(int side, const T& t, const PlaceMap& f) {
  T out = t;
  out.id = tag(side, t.id);
  out.src = extend_place_map(f, t.src);
  out.tgt = extend_place_map(f, t.tgt);
  return out;
}

inline PetriNet disjoint(const PetriNet& a, const PetriNet& b) {
  PetriNet out;
  for (int s : {1, 2}) {
    const auto& n = s == 1 ? a : b;
    const auto f = tag_places(s, n.places);
    for (const auto& p : n.places) out.places.push_back(f.at(p));
    for (const auto& t : n.transitions) out.transitions.push_back(tagged(s, t, f));
  }
  return canonical(std::move(out));
}

inline PreNet disjoint(const PreNet& a, const PreNet& b) {
  PreNet out;
  for (int s : {1, 2}) {
    const auto& n = s == 1 ? a : b;
    const auto f = tag_places(s, n.places);
    for (const auto& p : n.places) out.places.push_back(f.at(p));
    for (const auto& t : n.transitions) out.transitions.push_back(tagged(s, t, f));
  }
  return canonical(std::move(out));
}

inline SigmaNet disjoint(const SigmaNet& a, const SigmaNet& b) {
  SigmaNet out;
  for (int s : {1, 2}) {
    const auto& n = s == 1 ? a : b;
    const auto f = tag_places(s, n.places);
    for (const auto& p : n.places) out.places.push_back(f.at(p));
    for (const auto& c : n.classes) out.classes.push_back(tagged(s, c, f));
  }
  return canonical(std::move(out));
}

}  // namespace detail

/// Side-by-side union; places, transitions and boundary points of the two
/// operands are prefixed "1." and "2.".
template <class Net>
OpenNet<Net> tensor_open(const OpenNet<Net>& o1, const OpenNet<Net>& o2) {
  OpenNet<Net> out;
  out.body = detail::disjoint(o1.body, o2.body);
  for (int s : {1, 2}) {
    const auto& o = s == 1 ? o1 : o2;
    for (const auto& [x, p] : o.left_leg) out.left_leg[detail::tag(s, x)] = detail::tag(s, p);
    for (const auto& [y, p] : o.right_leg) out.right_leg[detail::tag(s, y)] = detail::tag(s, p);
    for (const auto& x : o.left) out.left.push_back(detail::tag(s, x));
    for (const auto& y : o.right) out.right.push_back(detail::tag(s, y));
  }
  std::sort(out.left.begin(), out.left.end());
  std::sort(out.right.begin(), out.right.end());
  return out;
}

// Translations keep place sets, so legs carry over unchanged. H_pre is left
// out: it does not preserve pushouts.

inline OpenNet<SigmaNet> open_f_pre(const OpenNet<PreNet>& o) {
  return {o.left, o.right, f_pre(o.body), o.left_leg, o.right_leg};
}

inline OpenNet<PreNet> open_g_pre(const OpenNet<SigmaNet>& o) {
  return {o.left, o.right, g_pre(o.body), o.left_leg, o.right_leg};
}

inline OpenNet<PetriNet> open_f_pet(const OpenNet<SigmaNet>& o) {
  return {o.left, o.right, f_pet(o.body), o.left_leg, o.right_leg};
}

/// A body isomorphism commuting with both legs.
template <class Net>
std::optional<MorphismOf_t<Net>> open_iso(const OpenNet<Net>& a, const OpenNet<Net>& b,
                                          const Limits& limits = default_limits()) {
  if (a.left != b.left || a.right != b.right) return std::nullopt;
  PlaceMap pins, back;
  auto pin = [&](const std::map<std::string, PlaceId>& la, const std::map<std::string, PlaceId>& lb) {
    for (const auto& [x, p] : la) {
      const auto& q = lb.at(x);
      if (auto it = pins.find(p); it != pins.end() && it->second != q) return false;
      if (auto it = back.find(q); it != back.end() && it->second != p) return false;
      pins[p] = q;
      back[q] = p;
    }
    return true;
  };
  if (!pin(a.left_leg, b.left_leg) || !pin(a.right_leg, b.right_leg)) return std::nullopt;
  return net_isomorphic(a.body, b.body, pins, limits);
}

// ---------------------------------------------------------------------------
// 2-morphisms.

template <class Net>
struct OpenNetMap {
  std::map<std::string, std::string> left;   // X → X'
  std::map<std::string, std::string> right;  // Y → Y'
  MorphismOf_t<Net> body;
};

template <class Net>
std::vector<std::string> validate_open_map(const OpenNetMap<Net>& m, const OpenNet<Net>& a, const OpenNet<Net>& b) {
  auto errs = validate_morphism(m.body, a.body, b.body);
  auto square = [&](const std::vector<std::string>& xs, const std::map<std::string, std::string>& f,
                    const std::map<std::string, PlaceId>& la, const std::map<std::string, PlaceId>& lb,
                    const std::vector<std::string>& ys, const char* side) {
    for (const auto& x : xs) {
      auto it = f.find(x);
      if (it == f.end() || !std::binary_search(ys.begin(), ys.end(), it->second)) {
        errs.push_back(std::string(side) + " boundary map undefined or out of range at " + x);
        continue;
      }
      auto img = m.body.places.find(la.at(x));
      if (img == m.body.places.end() || img->second != lb.at(it->second))
        errs.push_back(std::string(side) + " square does not commute at " + x);
    }
  };
  square(a.left, m.left, a.left_leg, b.left_leg, b.left, "left");
  square(a.right, m.right, a.right_leg, b.right_leg, b.right, "right");
  return errs;
}

template <class Net>
OpenNetMap<Net> identity_open_map(const OpenNet<Net>& o) {
  OpenNetMap<Net> m{{}, {}, identity_morphism(o.body)};
  for (const auto& x : o.left) m.left[x] = x;
  for (const auto& y : o.right) m.right[y] = y;
  return m;
}

namespace detail {
inline std::map<std::string, std::string> compose_maps(const std::map<std::string, std::string>& second,
                                                       const std::map<std::string, std::string>& first) {
  std::map<std::string, std::string> out;
  for (const auto& [x, y] : first) out[x] = second.at(y);
  return out;
}
}  // namespace detail

/// Vertical composite: first, then second.
inline OpenNetMap<PetriNet> compose_vertical(const OpenNetMap<PetriNet>& second, const OpenNetMap<PetriNet>& first) {
  return {detail::compose_maps(second.left, first.left), detail::compose_maps(second.right, first.right),
          compose(second.body, first.body)};
}

inline OpenNetMap<PreNet> compose_vertical(const OpenNetMap<PreNet>& second, const OpenNetMap<PreNet>& first) {
  return {detail::compose_maps(second.left, first.left), detail::compose_maps(second.right, first.right),
          compose(second.body, first.body)};
}

inline OpenNetMap<SigmaNet> compose_vertical(const OpenNetMap<SigmaNet>& second, const OpenNetMap<SigmaNet>& first,
                                             const SigmaNet& target) {
  return {detail::compose_maps(second.left, first.left), detail::compose_maps(second.right, first.right),
          compose(second.body, first.body, target)};
}

namespace detail {

// The map out of a pushout induced by h1 : B → D and h2 : C → D.
inline NetMorphism induced(const NetMorphism& cop_b, const NetMorphism& cop_c, const NetMorphism& h1,
                           const NetMorphism& h2) {
  NetMorphism u;
  for (const auto& [p, q] : cop_b.places) u.places[q] = h1.places.at(p);
  for (const auto& [p, q] : cop_c.places) u.places.emplace(q, h2.places.at(p));
  for (const auto& [t, s] : cop_b.transitions) u.transitions[s] = h1.transitions.at(t);
  for (const auto& [t, s] : cop_c.transitions) u.transitions.emplace(s, h2.transitions.at(t));
  return u;
}

inline SigmaMorphism induced(const SigmaMorphism& cop_b, const SigmaMorphism& cop_c, const SigmaMorphism& h1,
                             const SigmaMorphism& h2, const SigmaNet& d) {
  SigmaMorphism u;
  const SigmaView vd(d);
  auto put = [&](const SigmaMorphism& cop, const SigmaMorphism& h) {
    for (const auto& [p, q] : cop.places) u.places.emplace(q, h.places.at(p));
    for (const auto& [c, img] : cop.classes) {
      if (u.classes.count(img.cls)) continue;
      // The representative of img.cls is witness⁻¹ applied to the image of
      // c's representative, so it goes to witness⁻¹ · h(c).
      const auto& hc = h.classes.at(c);
      const auto target = index_by_id(d.classes, hc.cls);
      const auto elem = vd.locate(target, img.witness.inverse().compose(hc.witness));
      u.classes[img.cls] = {hc.cls, vd.elements()[elem].rep};
    }
  };
  put(cop_b, h1);
  put(cop_c, h2);
  return u;
}

}  // namespace detail

/// Horizontal composite of α : o1 ⇒ o1' and β : o2 ⇒ o2', which must agree
/// on the shared boundary.
template <class Net>
OpenNetMap<Net> compose_horizontal(const OpenNetMap<Net>& alpha, const OpenNetMap<Net>& beta, const OpenNet<Net>& o1,
                                   const OpenNet<Net>& o2, const OpenNet<Net>& o1b, const OpenNet<Net>& o2b) {
  if (alpha.right != beta.left) fail(ErrorCode::validation, "2-morphisms disagree on the shared boundary");
  const auto apex = discrete<Net>(o1.right);
  const auto po = pushout(apex, o1.body, o2.body, detail::leg_morphism<Net>(o1.right_leg), detail::leg_morphism<Net>(o2.left_leg));
  const auto apex_b = discrete<Net>(o1b.right);
  const auto pob = pushout(apex_b, o1b.body, o2b.body, detail::leg_morphism<Net>(o1b.right_leg),
                           detail::leg_morphism<Net>(o2b.left_leg));
  OpenNetMap<Net> out;
  out.left = alpha.left;
  out.right = beta.right;
  if constexpr (std::is_same_v<Net, SigmaNet>) {
    out.body = detail::induced(po.left, po.right, compose(pob.left, alpha.body, pob.net),
                               compose(pob.right, beta.body, pob.net), pob.net);
  } else {
    out.body = detail::induced(po.left, po.right, compose(pob.left, alpha.body), compose(pob.right, beta.body));
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON: {"format":1, "kind":"open", "boundaries":{"left","right"},
// "legs":{"left","right"}, "body": net}.

template <class Net>
json to_json(const OpenNet<Net>& o) {
  json j = detail::header("open");
  j["boundaries"] = {{"left", o.left}, {"right", o.right}};
  j["legs"] = {{"left", o.left_leg}, {"right", o.right_leg}};
  j["body"] = to_json(o.body);
  return j;
}

using AnyOpenNet = std::variant<OpenNet<PetriNet>, OpenNet<PreNet>, OpenNet<SigmaNet>>;

template <class Net>
OpenNet<Net> open_from_json(const json& j) {
  detail::check_header(j, "open");
  using Leg = std::map<std::string, PlaceId>;
  const auto& bounds = detail::field(j, "boundaries");
  const auto& legs = detail::field(j, "legs");
  OpenNet<Net> o;
  o.left = detail::get_as<std::vector<std::string>>(detail::field(bounds, "left"), "left boundary");
  o.right = detail::get_as<std::vector<std::string>>(detail::field(bounds, "right"), "right boundary");
  std::sort(o.left.begin(), o.left.end());
  std::sort(o.right.begin(), o.right.end());
  o.left_leg = detail::get_as<Leg>(detail::field(legs, "left"), "left leg");
  o.right_leg = detail::get_as<Leg>(detail::field(legs, "right"), "right leg");
  o.body = from_json<Net>(detail::field(j, "body"));
  return o;
}

inline AnyOpenNet parse_open(const json& j) {
  detail::check_header(j, "open");
  const auto kind = detail::get_as<std::string>(detail::field(detail::field(j, "body"), "kind"), "body kind");
  if (kind == "petri") return open_from_json<PetriNet>(j);
  if (kind == "prenet") return open_from_json<PreNet>(j);
  if (kind == "sigma") return open_from_json<SigmaNet>(j);
  fail(ErrorCode::unsupported, "open nets over " + kind + " are not supported");
}

inline json to_json(const AnyOpenNet& o) {
  return std::visit([](const auto& x) { return to_json(x); }, o);
}

// ---------------------------------------------------------------------------
// Random generation.

namespace detail {
inline PetriNet random_body(Rng& rng, const RandomNetOptions& o, PetriNet*) { return random_petri(rng, o); }
inline PreNet random_body(Rng& rng, const RandomNetOptions& o, PreNet*) { return random_prenet(rng, o); }
inline SigmaNet random_body(Rng& rng, const RandomNetOptions& o, SigmaNet*) { return random_sigma(rng, o); }
}  // namespace detail

/// A random body with legs from the given boundaries sent to random places.
template <class Net>
OpenNet<Net> random_open(Rng& rng, std::vector<std::string> left, std::vector<std::string> right,
                         const RandomNetOptions& o = {}) {
  OpenNet<Net> out;
  out.body = detail::random_body(rng, o, static_cast<Net*>(nullptr));
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  out.left = std::move(left);
  out.right = std::move(right);
  const auto& ps = out.body.places;
  for (const auto& x : out.left) out.left_leg[x] = ps[rng() % ps.size()];
  for (const auto& y : out.right) out.right_leg[y] = ps[rng() % ps.size()];
  return out;
}

/// Boundary names prefix0, prefix1, ... of random size in [0, max].
inline std::vector<std::string> random_boundary(Rng& rng, const std::string& prefix, std::size_t max) {
  std::vector<std::string> xs;
  const auto k = uniform(rng, 0, max);
  for (std::size_t i = 0; i < k; ++i) xs.push_back(prefix + std::to_string(i));
  std::sort(xs.begin(), xs.end());
  return xs;
}

template <class Net>
struct PushedOpen {
  OpenNet<Net> net;
  OpenNetMap<Net> map;  // from the original, identity on boundaries
};

/// Pushes the body forward along a random place merge (adding stray
/// transitions); the legs follow.
template <class Net>
PushedOpen<Net> push_open(Rng& rng, const OpenNet<Net>& o, const RandomNetOptions& opts = {}) {
  const auto f = random_place_merge(rng, o.body.places);
  PushedOpen<Net> out;
  out.net = {o.left, o.right, push_forward(rng, o.body, f, opts), detail::after(o.left_leg, f), detail::after(o.right_leg, f)};
  out.map = {{}, {}, pushed_morphism(o.body, f)};
  for (const auto& x : o.left) out.map.left[x] = x;
  for (const auto& y : o.right) out.map.right[y] = y;
  return out;
}

}  // namespace signet
