#ifndef HSJET_TOOLS_CLI_APP_HPP
#define HSJET_TOOLS_CLI_APP_HPP

#include <hsjet/document.hpp>
#include <hsjet/presentations.hpp>
#include <hsjet/verify.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

namespace hsjet::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInputError = 2 };

struct CommonArgs {
  std::string file;
  unsigned order = 1;
  std::string mode = "prolong";
  std::string point;
  std::string map;
  bool json = false;
};

inline std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

inline DerivationMode parse_mode(const std::string& m) {
  return m == "jet" ? DerivationMode::Jet : DerivationMode::Prolongation;
}

inline Json multi_index_json(const MultiIndex& a) {
  Json j = Json::array();
  for (std::size_t i = 0; i < a.length(); ++i) j.push_back(a[i]);
  return j;
}

inline int cmd_prolong(const CommonArgs& a, std::ostream& out) {
  const InputDocument doc = parse_document(read_input(a.file));
  const ProlongationPresentation p = prolong_presentation(doc.variety, a.order, parse_mode(a.mode));
  if (!a.json) {
    out << presentation_text(p);
    return kOk;
  }
  const NameTable names = p.base.names();
  Json j;
  j["mode"] = mode_name(p.mode);
  j["vars"] = p.base.var_count;
  j["derivations"] = p.base.field.derivation_count;
  j["order"] = p.order;
  j["symbols"] = Json::array();
  for (const DiffSymbol& s : p.symbols) j["symbols"].push_back(symbol_string(s, names));
  j["generators"] = Json::array();
  for (const LabeledGenerator& g : p.generators)
    j["generators"].push_back({{"alpha", multi_index_json(g.alpha)}, {"index", g.index}, {"poly", diff_poly_string(g.poly, names)}});
  out << j.dump(2) << "\n";
  return kOk;
}

inline int cmd_nabla(const CommonArgs& a, std::ostream& out) {
  const InputDocument doc = parse_document(read_input(a.file));
  const VarietyPresentation& v = doc.variety;
  PointAssignment pt;
  if (!a.point.empty()) pt = parse_point(a.point, v.field, v.var_names);
  else if (doc.point) pt = *doc.point;
  else throw Error("no point given: use --point or a point block");

  const NameTable names = v.names();
  if (auto bad = first_nonvanishing(v, pt)) {
    const std::string gen = diff_poly_string(v.generators[bad->first], names);
    const std::string val = bad->second.to_string(names.params);
    if (a.json) {
      Json j;
      j["on_variety"] = false;
      j["generator"] = {{"index", bad->first}, {"poly", gen}, {"value", val}};
      out << j.dump(2) << "\n";
    } else {
      out << "ON-VARIETY: no\n";
      out << "generator " << bad->first << ": " << gen << " = " << val << "\n";
    }
    return kCheckFailed;
  }
  const JetPoint jp = nabla(v, a.order, pt);
  if (a.json) {
    Json j;
    j["order"] = a.order;
    j["point"] = Json::object();
    for (const auto& [s, c] : jp) j["point"][symbol_string(s, names)] = c.to_string(names.params);
    j["on_variety"] = true;
    out << j.dump(2) << "\n";
  } else {
    out << point_string(jp, names) << "\n";
    out << "ON-VARIETY: yes\n";
  }
  return kOk;
}

inline int cmd_lift(const CommonArgs& a, std::ostream& out) {
  const InputDocument doc = parse_document(read_input(a.file));
  const VarietyPresentation& v = doc.variety;
  if (a.map.empty()) throw Error("lift requires --map");
  const MorphismSpec f = parse_map(a.map, v.field, v.var_names);
  const DerivationMode mode = parse_mode(a.mode);
  const auto lifted = lift_morphism(f.images, a.order, mode, v.field);

  const NameTable src = v.names();
  const NameTable dst{f.target_names, v.field.parameter_names};
  if (a.json) {
    Json j;
    j["mode"] = mode_name(mode);
    j["order"] = a.order;
    j["images"] = Json::array();
    for (const auto& [s, img] : lifted)
      j["images"].push_back({{"symbol", symbol_string(s, dst)}, {"image", diff_poly_string(img, src)}});
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << "lift mode=" << mode_name(mode) << " order=" << a.order << " targets=" << f.target_names.size() << "\n";
  for (const auto& [s, img] : lifted) out << symbol_string(s, dst) << " -> " << diff_poly_string(img, src) << "\n";
  return kOk;
}

inline int cmd_check(const std::string& suite, const SuiteOptions& o, bool json, std::ostream& out) {
  const std::vector<CheckReport> reports = run_suite(suite, o);
  const bool ok = all_ok(reports);
  if (json) {
    Json j;
    j["suite"] = suite;
    j["seed"] = o.seed;
    j["trials"] = o.trials;
    j["reports"] = Json::array();
    for (const CheckReport& r : reports) {
      Json e{{"check", r.check}, {"params", r.params}, {"trials", r.trials}, {"ok", r.ok}};
      if (!r.ok) {
        e["at"] = r.at;
        e["lhs"] = r.lhs;
        e["rhs"] = r.rhs;
      }
      j["reports"].push_back(std::move(e));
    }
    j["passed"] = ok;
    out << j.dump(2) << "\n";
  } else {
    out << "check " << suite << " seed=" << o.seed << " trials=" << o.trials << "\n";
    for (const CheckReport& r : reports) out << r.line() << "\n";
    out << (ok ? "RESULT: PASS" : "RESULT: FAIL") << "\n";
  }
  return ok ? kOk : kCheckFailed;
}

/// Parses argv, dispatches one command, and returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prolongations and jet spaces under Hasse-Schmidt derivations", "hsjet"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string suite;
  SuiteOptions so;
  unsigned order = 0, outer = 0, inner = 0, max = 0;

  auto add_mode = [&](CLI::App* c) {
    c->add_option("--mode", args.mode, "prolong or jet")->check(CLI::IsMember({"prolong", "jet"}));
  };
  auto add_common = [&](CLI::App* c) {
    c->add_option("--order", args.order, "truncation order m")->check(CLI::NonNegativeNumber);
    c->add_flag("--json", args.json, "JSON output");
    c->add_option("file", args.file, "input document, or - for stdin")->required();
  };

  CLI::App* prolong = app.add_subcommand("prolong", "presentation of the prolongation space");
  add_common(prolong);
  add_mode(prolong);
  CLI::App* jet = app.add_subcommand("jet", "presentation of the jet space");
  add_common(jet);
  CLI::App* nab = app.add_subcommand("nabla", "canonical section at a rational point");
  add_common(nab);
  nab->add_option("--point", args.point, "assignment such as \"x=s, y=1\"");
  CLI::App* lift = app.add_subcommand("lift", "lift a morphism to prolongation symbols");
  add_common(lift);
  add_mode(lift);
  lift->add_option("--map", args.map, "images such as \"y=x^2, z=s*x\"")->required();

  CLI::App* check = app.add_subcommand("check", "run verification suites");
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  check->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suites));
  CLI::Option* o_order = check->add_option("--order", order, "order parameter");
  CLI::Option* o_outer = check->add_option("--outer", outer, "outer order for theta");
  CLI::Option* o_inner = check->add_option("--inner", inner, "inner order for theta");
  CLI::Option* o_max = check->add_option("--max", max, "truncation bound N or partition size k");
  check->add_option("--trials", so.trials, "random trials per check")->check(CLI::PositiveNumber);
  check->add_option("--seed", so.seed, "random seed");
  check->add_flag("--json", args.json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*prolong) return cmd_prolong(args, out);
    if (*jet) {
      args.mode = "jet";
      return cmd_prolong(args, out);
    }
    if (*nab) return cmd_nabla(args, out);
    if (*lift) return cmd_lift(args, out);
    if (*o_order) so.order = order;
    if (*o_outer) so.outer = outer;
    if (*o_inner) so.inner = inner;
    if (*o_max) so.max = max;
    return cmd_check(suite, so, args.json, out);
  } catch (const ParseError& e) {
    err << "error: " << (args.file.empty() ? std::string("input") : args.file) << ": " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace hsjet::cli

#endif  // HSJET_TOOLS_CLI_APP_HPP
