#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "signet/morphisms.hpp"

namespace signet {

using json = nlohmann::json;

/// Any net document.
using AnyNet = std::variant<PetriNet, PreNet, SigmaNet, SigmaNetPresheaf, WholeGrainNet>;

inline constexpr int kFormatVersion = 1;

inline std::string kind_of(const PetriNet&) { return "petri"; }
inline std::string kind_of(const PreNet&) { return "prenet"; }
inline std::string kind_of(const SigmaNet&) { return "sigma"; }
inline std::string kind_of(const SigmaNetPresheaf&) { return "sigma-presheaf"; }
inline std::string kind_of(const WholeGrainNet&) { return "wholegrain"; }
inline std::string kind_of(const AnyNet& n) {
  return std::visit([](const auto& x) { return kind_of(x); }, n);
}

// ---------------------------------------------------------------------------
// Writing. Every collection comes out sorted; object keys are sorted by the
// JSON library, so output is byte-stable.

namespace detail {
inline json to_json(const Multiset& m) {
  json j = json::object();
  for (const auto& [p, n] : m.counts()) j[p] = n;
  return j;
}
inline json to_json(const Permutation& p) { return p.images(); }
inline json to_json(const PermPair& g) { return json::array({to_json(g.src), to_json(g.tgt)}); }
inline json header(const std::string& kind) { return {{"format", kFormatVersion}, {"kind", kind}}; }
}  // namespace detail

inline json to_json(const PetriNet& n) {
  json j = detail::header("petri");
  j["places"] = n.places;
  j["transitions"] = json::array();
  for (const auto& t : n.transitions)
    j["transitions"].push_back({{"id", t.id}, {"src", detail::to_json(t.src)}, {"tgt", detail::to_json(t.tgt)}});
  return j;
}

inline json to_json(const PreNet& n) {
  json j = detail::header("prenet");
  j["places"] = n.places;
  j["transitions"] = json::array();
  for (const auto& t : n.transitions) j["transitions"].push_back({{"id", t.id}, {"src", t.src}, {"tgt", t.tgt}});
  return j;
}

inline json to_json(const SigmaNet& n) {
  json j = detail::header("sigma");
  j["places"] = n.places;
  j["classes"] = json::array();
  for (const auto& c : n.classes) {
    json gens = json::array();
    for (const auto& g : c.isotropy.canonical_generators()) gens.push_back(detail::to_json(g));
    j["classes"].push_back({{"id", c.id}, {"src", c.src}, {"tgt", c.tgt}, {"isotropy", gens}});
  }
  return j;
}

inline json to_json(const SigmaNetPresheaf& n) {
  json j = detail::header("sigma-presheaf");
  j["places"] = n.places;
  j["transitions"] = json::array();
  for (const auto& t : n.transitions)
    j["transitions"].push_back({{"id", t.id},
                                {"src", t.src},
                                {"tgt", t.tgt},
                                {"src_swaps", t.src_swaps},
                                {"tgt_swaps", t.tgt_swaps}});
  return j;
}

inline json to_json(const WholeGrainNet& n) {
  json j = detail::header("wholegrain");
  j["places"] = n.places;
  j["transitions"] = n.transitions;
  auto ports = [](const std::vector<Port>& ps) {
    json a = json::array();
    for (const auto& p : ps) a.push_back({{"id", p.id}, {"place", p.place}, {"transition", p.transition}});
    return a;
  };
  j["inputs"] = ports(n.inputs);
  j["outputs"] = ports(n.outputs);
  return j;
}

inline json to_json(const AnyNet& n) {
  return std::visit([](const auto& x) { return to_json(x); }, n);
}

inline json to_json(const NetMorphism& m, const std::string& net_kind) {
  json j = detail::header("morphism");
  j["net_kind"] = net_kind;
  j["places"] = m.places;
  j["transitions"] = m.transitions;
  return j;
}

inline json to_json(const SigmaMorphism& m) {
  json j = detail::header("morphism");
  j["net_kind"] = "sigma";
  j["places"] = m.places;
  j["classes"] = json::object();
  for (const auto& [c, img] : m.classes) j["classes"][c] = {{"class", img.cls}, {"witness", detail::to_json(img.witness)}};
  return j;
}

inline json to_json(const WholeGrainMorphism& m) {
  json j = detail::header("morphism");
  j["net_kind"] = "wholegrain";
  j["places"] = m.places;
  j["transitions"] = m.transitions;
  j["inputs"] = m.inputs;
  j["outputs"] = m.outputs;
  return j;
}

// ---------------------------------------------------------------------------
// Reading. Structural problems raise parse errors; semantic invariants are
// left to validate_net.

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::parse, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <class T>
T get_as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::parse, std::string("bad ") + what + ": " + e.what());
  }
}

inline Word parse_word(const json& j) { return get_as<Word>(j, "word"); }

inline std::vector<PlaceId> parse_places(const json& j) {
  auto ps = get_as<std::vector<PlaceId>>(field(j, "places"), "place list");
  std::sort(ps.begin(), ps.end());
  return ps;
}

inline Multiset parse_multiset(const json& j) {
  if (!j.is_object()) fail(ErrorCode::parse, "multiset must be an object of place counts");
  Multiset m;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
      fail(ErrorCode::parse, "multiset count for " + k + " must be a nonnegative integer");
    m.add(k, v.get<std::size_t>());
  }
  return m;
}

inline Permutation parse_perm(const json& j) {
  auto im = get_as<std::vector<int>>(j, "permutation");
  try {
    return Permutation(std::move(im));
  } catch (const Error& e) {
    fail(ErrorCode::parse, std::string("bad permutation: ") + e.what());
  }
}

inline PermPair parse_perm_pair(const json& j) {
  if (!j.is_array() || j.size() != 2) fail(ErrorCode::parse, "permutation pair must be [[src],[tgt]]");
  return {parse_perm(j[0]), parse_perm(j[1])};
}

inline void check_header(const json& j, const std::string& kind) {
  const auto& f = field(j, "format");
  if (!f.is_number_integer() || f.get<int>() != kFormatVersion) fail(ErrorCode::parse, "unsupported format version");
  if (field(j, "kind") != kind) fail(ErrorCode::parse, "expected kind " + kind);
}

template <class T>
void sort_ids(std::vector<T>& xs) {
  std::sort(xs.begin(), xs.end(), [](const T& a, const T& b) { return a.id < b.id; });
}

}  // namespace detail

template <class Net>
Net from_json(const json& j);

template <>
inline PetriNet from_json<PetriNet>(const json& j) {
  detail::check_header(j, "petri");
  PetriNet n{detail::parse_places(j), {}};
  for (const auto& t : detail::field(j, "transitions"))
    n.transitions.push_back({detail::get_as<std::string>(detail::field(t, "id"), "id"),
                             detail::parse_multiset(detail::field(t, "src")),
                             detail::parse_multiset(detail::field(t, "tgt"))});
  detail::sort_ids(n.transitions);
  return n;
}

template <>
inline PreNet from_json<PreNet>(const json& j) {
  detail::check_header(j, "prenet");
  PreNet n{detail::parse_places(j), {}};
  for (const auto& t : detail::field(j, "transitions"))
    n.transitions.push_back({detail::get_as<std::string>(detail::field(t, "id"), "id"),
                             detail::parse_word(detail::field(t, "src")), detail::parse_word(detail::field(t, "tgt"))});
  detail::sort_ids(n.transitions);
  return n;
}

template <>
inline SigmaNet from_json<SigmaNet>(const json& j) {
  detail::check_header(j, "sigma");
  SigmaNet n{detail::parse_places(j), {}};
  for (const auto& c : detail::field(j, "classes")) {
    TransitionClass tc{detail::get_as<std::string>(detail::field(c, "id"), "id"),
                       detail::parse_word(detail::field(c, "src")), detail::parse_word(detail::field(c, "tgt")),
                       {}};
    std::vector<PermPair> gens;
    if (c.contains("isotropy"))
      for (const auto& g : c.at("isotropy")) gens.push_back(detail::parse_perm_pair(g));
    try {
      tc.isotropy = group_closure(gens, tc.src.size(), tc.tgt.size());
    } catch (const Error& e) {
      if (e.code() == ErrorCode::capacity) throw;
      fail(ErrorCode::parse, "class " + tc.id + ": " + e.what());
    }
    n.classes.push_back(std::move(tc));
  }
  detail::sort_ids(n.classes);
  return n;
}

template <>
inline SigmaNetPresheaf from_json<SigmaNetPresheaf>(const json& j) {
  detail::check_header(j, "sigma-presheaf");
  SigmaNetPresheaf n{detail::parse_places(j), {}};
  for (const auto& t : detail::field(j, "transitions"))
    n.transitions.push_back({detail::get_as<std::string>(detail::field(t, "id"), "id"),
                             detail::parse_word(detail::field(t, "src")), detail::parse_word(detail::field(t, "tgt")),
                             detail::get_as<std::vector<std::string>>(detail::field(t, "src_swaps"), "swap list"),
                             detail::get_as<std::vector<std::string>>(detail::field(t, "tgt_swaps"), "swap list")});
  detail::sort_ids(n.transitions);
  return n;
}

template <>
inline WholeGrainNet from_json<WholeGrainNet>(const json& j) {
  detail::check_header(j, "wholegrain");
  WholeGrainNet n{detail::parse_places(j), detail::get_as<std::vector<std::string>>(detail::field(j, "transitions"), "transitions"),
                  {}, {}};
  std::sort(n.transitions.begin(), n.transitions.end());
  auto ports = [](const json& a) {
    std::vector<Port> out;
    for (const auto& p : a)
      out.push_back({detail::get_as<std::string>(detail::field(p, "id"), "id"),
                     detail::get_as<std::string>(detail::field(p, "place"), "place"),
                     detail::get_as<std::string>(detail::field(p, "transition"), "transition")});
    detail::sort_ids(out);
    return out;
  };
  n.inputs = ports(detail::field(j, "inputs"));
  n.outputs = ports(detail::field(j, "outputs"));
  return n;
}

inline AnyNet parse_net(const json& j) {
  const auto kind = detail::get_as<std::string>(detail::field(j, "kind"), "kind");
  if (kind == "petri") return from_json<PetriNet>(j);
  if (kind == "prenet") return from_json<PreNet>(j);
  if (kind == "sigma") return from_json<SigmaNet>(j);
  if (kind == "sigma-presheaf") return from_json<SigmaNetPresheaf>(j);
  if (kind == "wholegrain") return from_json<WholeGrainNet>(j);
  fail(ErrorCode::parse, "unknown kind \"" + kind + "\"");
}

inline NetMorphism parse_net_morphism(const json& j) {
  detail::check_header(j, "morphism");
  return {detail::get_as<PlaceMap>(detail::field(j, "places"), "place map"),
          detail::get_as<std::map<std::string, std::string>>(detail::field(j, "transitions"), "transition map")};
}

inline SigmaMorphism parse_sigma_morphism(const json& j) {
  detail::check_header(j, "morphism");
  SigmaMorphism m{detail::get_as<PlaceMap>(detail::field(j, "places"), "place map"), {}};
  for (const auto& [c, img] : detail::field(j, "classes").items())
    m.classes[c] = {detail::get_as<std::string>(detail::field(img, "class"), "class"),
                    detail::parse_perm_pair(detail::field(img, "witness"))};
  return m;
}

inline WholeGrainMorphism parse_wholegrain_morphism(const json& j) {
  detail::check_header(j, "morphism");
  using Map = std::map<std::string, std::string>;
  return {detail::get_as<PlaceMap>(detail::field(j, "places"), "place map"),
          detail::get_as<Map>(detail::field(j, "transitions"), "transition map"),
          detail::get_as<Map>(detail::field(j, "inputs"), "input map"),
          detail::get_as<Map>(detail::field(j, "outputs"), "output map")};
}

// ---------------------------------------------------------------------------
// Files.

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::parse, std::string("malformed JSON: ") + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::usage, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

inline AnyNet load_net(const std::string& path) { return parse_net(read_json_file(path)); }

template <class Net>
Net load_net_as(const std::string& path) {
  return from_json<Net>(read_json_file(path));
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace signet
