#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "signet/adjunction.hpp"
#include "signet/freecat.hpp"
#include "signet/open.hpp"
#include "signet/render.hpp"

namespace signet::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;  // counterexample or validation failure
inline constexpr int kUsage = 2;   // usage, parse, type or capacity problem

inline int exit_code(ErrorCode c) { return c == ErrorCode::validation ? kFailed : kUsage; }

inline void report(std::ostream& err, ErrorCode code, const std::string& message) {
  err << json{{"error", std::string(to_string(code))}, {"message", message}}.dump() << "\n";
}

/// "p:2,q:1" (a bare place counts once). The empty string is the empty
/// marking.
inline Multiset parse_marking(const std::string& text) {
  Multiset m;
  if (text.empty()) return m;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    const auto place = item.substr(0, colon);
    if (place.empty()) fail(ErrorCode::usage, "bad marking entry \"" + item + "\"");
    std::size_t count = 1;
    if (colon != std::string::npos) {
      try {
        std::size_t used = 0;
        const auto digits = item.substr(colon + 1);
        count = std::stoul(digits, &used);
        if (used != digits.size()) throw std::invalid_argument(digits);
      } catch (const std::exception&) {
        fail(ErrorCode::usage, "bad count in marking entry \"" + item + "\"");
      }
    }
    m.add(place, count);
  }
  return m;
}

/// A word "a,b,a"; marking syntax "a:2,b:1" is accepted and read as the
/// sorted word.
inline Word parse_word_arg(const std::string& text) {
  if (text.find(':') != std::string::npos) return parse_marking(text).sorted_word();
  Word w;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) w.push_back(item);
  return w;
}

inline void check_places(const std::vector<PlaceId>& places, const Multiset& m) {
  for (const auto& [p, k] : m.counts())
    if (!has_place(places, p)) fail(ErrorCode::usage, "unknown place " + p);
}

/// Inline JSON when the argument looks like JSON, otherwise a file path.
inline json json_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '[' || arg[first] == '{' || arg[first] == '"'))
    return parse_json_text(arg);
  return read_json_file(arg);
}

inline Flavor flavor_arg(const std::string& text) {
  const auto f = parse_flavor(text);
  if (!f) fail(ErrorCode::usage, "unknown flavor " + text + " (StrMC, SSMC, CMC)");
  return *f;
}

inline std::string kind_field(const json& j) {
  return detail::get_as<std::string>(detail::field(j, "kind"), "kind");
}

template <class T>
const T& expect(const AnyNet& n, const std::string& what) {
  if (!std::holds_alternative<T>(n)) fail(ErrorCode::type, what + " expects a " + kind_of(T{}) + " net, got " + kind_of(n));
  return std::get<T>(n);
}

inline void require_valid(const AnyNet& n) {
  const auto errs = std::visit([](const auto& x) { return validate_net(x); }, n);
  if (!errs.empty()) fail(ErrorCode::validation, errs.front());
}

inline AnyNet load_valid(const std::string& path) {
  auto n = load_net(path);
  require_valid(n);
  return n;
}

inline AnyOpenNet load_open(const std::string& path) {
  auto o = parse_open(read_json_file(path));
  const auto errs = std::visit([](const auto& x) { return validate_open(x); }, o);
  if (!errs.empty()) fail(ErrorCode::validation, errs.front());
  return o;
}

// ---------------------------------------------------------------------------
// Commands.

inline int cmd_validate(const std::string& path, std::ostream& out) {
  const auto j = read_json_file(path);
  const auto kind = kind_field(j);
  std::vector<std::string> errs;
  if (kind == "open")
    errs = std::visit([](const auto& x) { return validate_open(x); }, parse_open(j));
  else if (kind == "fincmc")
    errs = verify_fincmc(parse_fincmc(j));
  else
    errs = std::visit([](const auto& x) { return validate_net(x); }, parse_net(j));
  out << dump({{"kind", kind}, {"valid", errs.empty()}, {"errors", errs}});
  return errs.empty() ? kOk : kFailed;
}

inline const std::vector<std::string>& functor_names() {
  static const std::vector<std::string> names{"f_pre", "g_pre", "h_pre", "f_pet", "g_pet", "z1", "z2",
                                              "erase", "to_presheaf", "to_groupoid"};
  return names;
}

inline AnyNet convert(const AnyNet& n, const std::string& via) {
  if (via == "f_pre") return f_pre(expect<PreNet>(n, via));
  if (via == "g_pre") return g_pre(expect<SigmaNet>(n, via));
  if (via == "h_pre") return h_pre(expect<PreNet>(n, via));
  if (via == "f_pet") return f_pet(expect<SigmaNet>(n, via));
  if (via == "g_pet") return g_pet(expect<PetriNet>(n, via));
  if (via == "z1") return z1(expect<PreNet>(n, via));
  if (via == "z2") return z2(expect<WholeGrainNet>(n, via));
  if (via == "erase") return erase_ordering(expect<PreNet>(n, via));
  if (via == "to_presheaf") return to_presheaf(expect<SigmaNet>(n, via));
  if (via == "to_groupoid") return to_groupoid(expect<SigmaNetPresheaf>(n, via));
  fail(ErrorCode::usage, "unknown functor " + via);
}

inline json morphism_json(const NetMorphism& m, const std::string& kind) { return to_json(m, kind); }
inline json morphism_json(const SigmaMorphism& m, const std::string&) { return to_json(m); }
inline json morphism_json(const WholeGrainMorphism& m, const std::string&) { return to_json(m); }

inline int cmd_hom(const std::string& a_path, const std::string& b_path, bool count, std::ostream& out) {
  const auto a = load_valid(a_path), b = load_valid(b_path);
  if (a.index() != b.index()) fail(ErrorCode::type, "hom needs two nets of the same kind");
  const auto kind = kind_of(a);
  json list = json::array();
  std::size_t n = 0;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SigmaNetPresheaf>) {
          fail(ErrorCode::unsupported, "hom on presheaf form; convert with to_groupoid first");
        } else {
          const auto homs = hom_set(x, std::get<T>(b));
          n = homs.size();
          if (!count)
            for (const auto& m : homs) list.push_back(morphism_json(m, kind));
        }
      },
      a);
  if (count)
    out << n << "\n";
  else
    out << dump(list);
  return kOk;
}

inline int cmd_iso(const std::string& a_path, const std::string& b_path, std::ostream& out) {
  const auto a = load_valid(a_path), b = load_valid(b_path);
  if (a.index() != b.index()) fail(ErrorCode::type, "iso needs two nets of the same kind");
  const auto kind = kind_of(a);
  json result{{"isomorphic", false}, {"morphism", nullptr}};
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SigmaNetPresheaf>) {
          result["isomorphic"] = presheaf_isomorphic(x, std::get<T>(b));
        } else if (const auto m = net_isomorphic(x, std::get<T>(b))) {
          result["isomorphic"] = true;
          result["morphism"] = morphism_json(*m, kind);
        }
      },
      a);
  out << dump(result);
  return kOk;
}

inline int cmd_reach(const std::string& path, const std::string& from, const std::string& to, std::size_t max_steps,
                     std::ostream& out) {
  const auto n = load_valid(path);
  const auto& p = expect<PetriNet>(n, "reach");
  const auto x = parse_marking(from), y = parse_marking(to);
  check_places(p.places, x);
  check_places(p.places, y);
  const auto w = reachable(p, x, y, max_steps);
  json result{{"reachable", w.has_value()}, {"witness", nullptr}};
  if (w) result["witness"] = *w;
  out << dump(result);
  return kOk;
}

inline Presentation presentation_for(const AnyNet& n, Flavor flavor) {
  return std::visit(
      [&](const auto& x) -> Presentation {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, PetriNet> || std::is_same_v<T, PreNet> || std::is_same_v<T, SigmaNet>)
          return present_free(x, flavor);
        else
          fail(ErrorCode::unsupported, "no free presentation for " + kind_of(x) + " nets");
      },
      n);
}

inline int cmd_homs_free(const std::string& path, const std::string& flavor, const std::string& from,
                         const std::string& to, std::size_t max_gens, std::size_t budget, std::ostream& out) {
  const auto fl = flavor_arg(flavor);
  const auto p = presentation_for(load_valid(path), fl);
  const auto w = enumerate_homs(p, parse_word_arg(from), parse_word_arg(to), max_gens, {budget, EquivBudget{}.max_states});
  json classes = json::array();
  for (const auto& c : w.classes)
    classes.push_back({{"representative", to_json(c.representative)}, {"members", c.members}, {"unknown_merge", c.unknown_merge}});
  out << dump({{"flavor", to_string(fl)}, {"classes", classes}, {"count", w.classes.size()}, {"terms", w.terms},
               {"decided", w.decided()}});
  return kOk;
}

inline int cmd_equiv(const std::string& path, const std::string& flavor, const std::string& lhs, const std::string& rhs,
                     std::size_t budget, std::ostream& out) {
  const auto p = presentation_for(load_valid(path), flavor_arg(flavor));
  const auto r = equiv(parse_term(json_arg(lhs)), parse_term(json_arg(rhs)), p, {budget, EquivBudget{}.max_states});
  json result{{"verdict", to_string(r.verdict)}};
  if (!r.reason.empty()) result["reason"] = r.reason;
  out << dump(result);
  return kOk;
}

inline int cmd_open(const std::string& op, const std::vector<std::string>& files, const std::string& via,
                    std::ostream& out) {
  const std::size_t want = op == "map" ? 1 : 2;
  if (files.size() != want) fail(ErrorCode::usage, "open " + op + " takes " + std::to_string(want) + " file(s)");
  const auto a = load_open(files[0]);
  if (op == "map") {
    std::optional<AnyOpenNet> r;
    if (via == "f_pre" && std::holds_alternative<OpenNet<PreNet>>(a)) r = open_f_pre(std::get<OpenNet<PreNet>>(a));
    if (via == "g_pre" && std::holds_alternative<OpenNet<SigmaNet>>(a)) r = open_g_pre(std::get<OpenNet<SigmaNet>>(a));
    if (via == "f_pet" && std::holds_alternative<OpenNet<SigmaNet>>(a)) r = open_f_pet(std::get<OpenNet<SigmaNet>>(a));
    if (!r) {
      if (via != "f_pre" && via != "g_pre" && via != "f_pet")
        fail(ErrorCode::usage, "open map supports f_pre, g_pre and f_pet");
      fail(ErrorCode::type, "open map " + via + " does not apply to this kind of body");
    }
    out << dump(to_json(*r));
    return kOk;
  }
  const auto b = load_open(files[1]);
  if (a.index() != b.index()) fail(ErrorCode::type, "open nets have different kinds of body");
  return std::visit(
      [&](const auto& x) {
        using O = std::decay_t<decltype(x)>;
        const auto& y = std::get<O>(b);
        if (op == "compose") {
          out << dump(to_json(compose_open(x, y)));
        } else if (op == "tensor") {
          out << dump(to_json(tensor_open(x, y)));
        } else if (op == "iso") {
          const auto m = open_iso(x, y);
          json result{{"isomorphic", m.has_value()}, {"morphism", nullptr}};
          if (m) result["morphism"] = morphism_json(*m, kind_of(x.body));
          out << dump(result);
        } else {
          fail(ErrorCode::usage, "unknown open operation " + op);
        }
        return kOk;
      },
      a);
}

inline int cmd_check_adjunction(const std::string& pair, std::size_t trials, std::uint64_t seed,
                                const std::string& dump_path, std::ostream& out) {
  const auto p = parse_adjunction_pair(pair);
  if (!p) fail(ErrorCode::usage, "unknown pair " + pair + " (f_pre-g_pre, g_pre-h_pre, f_pet-g_pet)");
  const auto s = run_adjunction_trials(*p, trials, seed);
  json failures = json::array();
  for (const auto& f : s.failures)
    failures.push_back({{"index", f.index}, {"reason", f.reason}, {"left", f.left}, {"right", f.right}});
  const json report{{"pair", pair},     {"trials", s.trials},  {"seed", seed},
                    {"nonempty", s.nonempty}, {"ok", s.ok()}, {"counterexamples", failures}};
  if (!dump_path.empty()) {
    std::ofstream f(dump_path);
    if (!f) fail(ErrorCode::usage, "cannot write " + dump_path);
    f << dump(failures);
  }
  out << dump(report);
  return s.ok() ? kOk : kFailed;
}

inline int cmd_render(const std::string& path, std::ostream& out) {
  const auto j = read_json_file(path);
  if (kind_field(j) == "open")
    out << render_dot(load_open(path));
  else
    out << render_dot(load_valid(path));
  return kOk;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Petri nets, their variants, and the translations between them", "signet"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  std::string a, b, via, from, to, flavor, lhs, rhs, pair = "f_pre-g_pre", dump_path;
  std::vector<std::string> files;
  bool count = false, dot = false;
  std::size_t max_steps = 16, max_gens = 2, budget = 0, trials = 100;
  std::uint64_t seed = 1;
  std::function<int()> action;

  auto* validate = app.add_subcommand("validate", "Check a net, open net or finite CMC");
  validate->add_option("file", a)->required();
  validate->callback([&] { action = [&] { return cmd_validate(a, out); }; });

  auto* conv = app.add_subcommand("convert", "Apply a translation to a net");
  conv->add_option("file", a)->required();
  conv->add_option("--via", via, "Translation")->required()->check(CLI::IsMember(functor_names()));
  conv->callback([&] {
    action = [&] {
      out << dump(to_json(convert(load_valid(a), via)));
      return kOk;
    };
  });

  auto* hom = app.add_subcommand("hom", "List or count morphisms between two nets");
  hom->add_option("source", a)->required();
  hom->add_option("target", b)->required();
  hom->add_flag("--count", count, "Print only the number of morphisms");
  hom->callback([&] { action = [&] { return cmd_hom(a, b, count, out); }; });

  auto* iso = app.add_subcommand("iso", "Search for an isomorphism between two nets");
  iso->add_option("first", a)->required();
  iso->add_option("second", b)->required();
  iso->callback([&] { action = [&] { return cmd_iso(a, b, out); }; });

  auto* reach = app.add_subcommand("reach", "Shortest firing sequence between two markings of a Petri net");
  reach->add_option("file", a)->required();
  reach->add_option("--from", from, "Marking, e.g. a:1,b:2")->required();
  reach->add_option("--to", to, "Marking")->required();
  reach->add_option("--max-steps", max_steps, "Bound on the number of firings")->capture_default_str();
  reach->callback([&] { action = [&] { return cmd_reach(a, from, to, max_steps, out); }; });

  auto* homs = app.add_subcommand("homs-free", "Morphisms of the free monoidal category up to a generator count");
  homs->add_option("file", a)->required();
  homs->add_option("--flavor", flavor, "StrMC, SSMC or CMC")->required();
  homs->add_option("--from", from, "Source word, e.g. a,b")->required();
  homs->add_option("--to", to, "Target word")->required();
  homs->add_option("--max-gens", max_gens)->capture_default_str();
  homs->add_option("--budget", budget, "CMC search term-size bound (0 = automatic)")->capture_default_str();
  homs->callback([&] { action = [&] { return cmd_homs_free(a, flavor, from, to, max_gens, budget, out); }; });

  auto* eq = app.add_subcommand("equiv", "Decide equality of two terms in a free monoidal category");
  eq->add_option("file", a)->required();
  eq->add_option("--flavor", flavor)->required();
  eq->add_option("--lhs", lhs, "Term as JSON text or a file")->required();
  eq->add_option("--rhs", rhs, "Term as JSON text or a file")->required();
  eq->add_option("--budget", budget, "CMC search term-size bound (0 = automatic)")->capture_default_str();
  eq->callback([&] { action = [&] { return cmd_equiv(a, flavor, lhs, rhs, budget, out); }; });

  auto* open = app.add_subcommand("open", "Operations on open nets");
  std::string op;
  open->add_option("operation", op)->required()->check(CLI::IsMember({"compose", "tensor", "map", "iso"}));
  open->add_option("files", files)->required();
  open->add_option("--via", via, "Translation for map");
  open->callback([&] { action = [&] { return cmd_open(op, files, via, out); }; });

  auto* check = app.add_subcommand("check", "Run a property suite");
  check->require_subcommand(1);
  auto* adj = check->add_subcommand("adjunction", "Seeded adjunction trials");
  adj->add_option("--pair", pair)->capture_default_str();
  adj->add_option("--trials", trials)->capture_default_str();
  adj->add_option("--seed", seed)->capture_default_str();
  adj->add_option("--dump", dump_path, "Also write counterexamples to this file");
  adj->callback([&] { action = [&] { return cmd_check_adjunction(pair, trials, seed, dump_path, out); }; });

  auto* render = app.add_subcommand("render", "Draw a net or open net");
  render->add_option("file", a)->required();
  render->add_flag("--dot", dot, "Graphviz output (the only format)")->required();
  render->callback([&] { action = [&] { return cmd_render(a, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report(err, ErrorCode::usage, e.what());
    return kUsage;
  }
  try {
    return action();
  } catch (const Error& e) {
    report(err, e.code(), e.what());
    return exit_code(e.code());
  }
}

}  // namespace signet::cli
