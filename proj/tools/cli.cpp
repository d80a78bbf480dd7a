#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "confdec/confluence.hpp"
#include "confdec/cops.hpp"
#include "confdec/curry.hpp"
#include "confdec/decompose.hpp"
#include "confdec/error.hpp"
#include "confdec/layers.hpp"
#include "confdec/report.hpp"
#include "confdec/sorts.hpp"

namespace confdec {

namespace {

using json = nlohmann::ordered_json;

class FileError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ProblemFile load_problem(const std::string& path, bool allow_reserved) {
  return parse_problem(read_file(path), path, ParseOptions{allow_reserved});
}

struct CheckArgs {
  std::string file;
  std::vector<std::string> method{"auto"};
  unsigned join_depth = DecideOptions{}.join_depth;
  unsigned peak_depth = DecideOptions{}.peak_depth;
  std::size_t seed_size = DecideOptions{}.seed_size;
  long coeff_bound = DecideOptions{}.coeff_bound;
  unsigned recursion_depth = DecideOptions{}.recursion_depth;
  std::vector<std::string> licenses;
  bool json = false;
  bool curried = false;
};

int run_check(const CheckArgs& a, std::ostream& out) {
  DecideOptions options;
  auto method = parse_method(a.method.front());
  if (!method) throw UsageError("unknown method " + a.method.front());
  options.method = *method;
  bool needs_partition = *method == Method::LayerPreserving || *method == Method::QuasiGround;
  if (needs_partition != (a.method.size() == 2)) {
    throw UsageError(needs_partition ? "--method " + a.method.front() + " needs a partition file"
                                     : "--method " + a.method.front() + " takes no partition file");
  }
  options.join_depth = a.join_depth;
  options.peak_depth = a.peak_depth;
  options.seed_size = a.seed_size;
  options.coeff_bound = a.coeff_bound;
  options.recursion_depth = a.recursion_depth;
  if (!a.licenses.empty()) {
    options.licenses.clear();
    for (const std::string& text : a.licenses) {
      auto l = parse_license(text);
      if (!l) throw UsageError("unknown license " + text);
      options.licenses.insert(*l);
    }
  }
  ProblemFile problem = load_problem(a.file, true);
  if (needs_partition) options.partition = parse_partition(read_file(a.method[1]));
  if (problem.attachment_text) options.attachment = parse_attachment(*problem.attachment_text);

  auto start = std::chrono::steady_clock::now();
  Verdict v = a.curried ? decide_curried(problem.trs, options) : decide(problem.trs, options);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (a.json) {
    json report = report_json(a.file, v, options, ms);
    report["options"]["curried"] = a.curried;
    out << report.dump(2) << "\n";
  } else {
    out << to_string(v.answer) << "\n" << render_trace(v.trace);
  }
  switch (v.answer) {
    case Answer::Yes:
      return kExitYes;
    case Answer::No:
      return kExitNo;
    case Answer::Maybe:
      break;
  }
  return kExitMaybe;
}

struct TransformArgs {
  std::string file;
  bool curry = false;
  bool pp = false;
  bool uncurry = false;
};

int run_transform(const TransformArgs& a, std::ostream& out) {
  if (a.curry + a.pp + a.uncurry != 1) throw UsageError("choose exactly one of --curry, --pp, --uncurry-rules");
  ProblemFile problem = load_problem(a.file, false);
  check_curry_names(problem.trs.signature());
  if (a.curry) out << print_trs(curry_trs(problem.trs));
  if (a.pp) out << print_trs(partial_parametrization(problem.trs));
  if (a.uncurry) out << print_trs(uncurry_rules(problem.trs.signature()));
  return 0;
}

struct SortsArgs {
  std::string file;
  bool ordered = false;
  bool strong = false;
};

int run_sorts(const SortsArgs& a, std::ostream& out, std::ostream& err) {
  if (a.strong && !a.ordered) throw UsageError("--strong requires --ordered");
  ProblemFile problem = load_problem(a.file, true);
  const Trs& trs = problem.trs;
  std::optional<SortAttachment> s;
  if (a.ordered) {
    s = infer_order_sorted(trs, a.strong);
  } else {
    s = infer_many_sorted(trs);
  }
  if (!s) {
    err << "no order-sorted attachment found\n";
    return kExitMaybe;
  }
  out << print_attachment(*s);
  for (CompatibilityMode m : {CompatibilityMode::Compatible, CompatibilityMode::Strong, CompatibilityMode::Star}) {
    out << "# " << to_string(m) << ": " << (check_compatibility(trs, *s, m).ok ? "yes" : "no") << "\n";
  }
  ComponentSet cs = sort_components(trs, *s);
  for (const Component& c : cs.components) {
    out << "# component " << c.label << ":";
    for (std::size_t i : c.rules) out << " " << i + 1;
    out << "\n";
  }
  if (a.ordered) {
    auto license = persistence_license(trs, *s);
    out << "# license: " << (license ? to_string(license->license) : "none") << "\n";
  }
  return 0;
}

struct AnalyzeArgs {
  std::string file;
  std::vector<std::string> scheme;
  std::size_t depth = FalsifyOptions{}.size_bound;
  bool json = false;
};

int run_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const std::string& kind = a.scheme.front();
  bool needs_file = kind == "disjoint" || kind == "patterns";
  if (kind != "disjoint" && kind != "sorted" && kind != "curry" && kind != "patterns") {
    throw UsageError("unknown scheme " + kind);
  }
  if (needs_file != (a.scheme.size() == 2)) {
    throw UsageError(needs_file ? "--scheme " + kind + " needs a file" : "--scheme " + kind + " takes no file");
  }
  ProblemFile problem = load_problem(a.file, true);
  Trs trs = problem.trs;
  std::unique_ptr<LayerScheme> scheme;
  if (kind == "disjoint") {
    Partition p = parse_partition(read_file(a.scheme[1]));
    for (const Symbol& f : trs.signature().symbols()) {
      if (!p.only1.count(f.name) && !p.only2.count(f.name)) {
        throw Error("the disjoint scheme needs " + f.name + " in F1 or F2");
      }
    }
    scheme = std::make_unique<DisjointScheme>(trs.signature(), p.only1, p.only2);
  } else if (kind == "sorted") {
    SortAttachment s = problem.attachment_text ? parse_attachment(*problem.attachment_text) : infer_many_sorted(trs);
    scheme = std::make_unique<SortScheme>(std::move(s));
  } else if (kind == "curry") {
    check_curry_names(trs.signature());
    scheme = std::make_unique<CurryScheme>(trs.signature());
    trs = partial_parametrization(trs);
  } else {
    scheme = std::make_unique<PatternScheme>(parse_patterns(read_file(a.scheme[1])));
  }
  FalsifyOptions options;
  options.size_bound = a.depth;
  std::vector<Violation> found = falsify_conditions(*scheme, trs, options);

  if (a.json) {
    json report;
    report["scheme"] = scheme->descriptor();
    report["size_bound"] = a.depth;
    json items = json::array();
    for (const Violation& v : found) {
      json e;
      e["condition"] = to_string(v.condition);
      json w = json::array();
      for (const Term& t : v.witnesses) w.push_back(t.to_string());
      e["witnesses"] = std::move(w);
      e["position"] = to_string(v.position);
      e["rule"] = v.rule ? json(*v.rule + 1) : json(nullptr);
      e["detail"] = v.detail;
      items.push_back(std::move(e));
    }
    report["violations"] = std::move(items);
    out << report.dump(2) << "\n";
  } else {
    out << "scheme: " << scheme->descriptor() << "\n";
    for (Condition c : {Condition::L1, Condition::L2, Condition::L3, Condition::W, Condition::C1, Condition::C2}) {
      auto it = std::find_if(found.begin(), found.end(), [c](const Violation& v) { return v.condition == c; });
      out << to_string(c) << ": ";
      if (it == found.end()) {
        out << "no violation up to size " << a.depth << "\n";
        continue;
      }
      out << "violated";
      if (it->rule) out << " by rule " << *it->rule + 1;
      if (!it->position.empty() || c == Condition::W || c == Condition::C1) out << " at " << to_string(it->position);
      out << ":";
      for (const Term& t : it->witnesses) out << " " << t;
      if (!it->detail.empty()) out << " (" << it->detail << ")";
      out << "\n";
    }
  }
  return found.empty() ? 0 : 1;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Confluence analysis by layer systems", "confdec"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Decide confluence of a TRS");
  c->add_option("file", check.file, "COPS problem file")->required();
  c->add_option("--method", check.method,
                "auto | direct | modular | persist-ms | persist-os | layer-preserving PARTFILE | quasi-ground PARTFILE")
      ->expected(1, 2);
  c->add_option("--join-depth", check.join_depth, "Rewrite steps per side when joining critical pairs");
  c->add_option("--peak-depth", check.peak_depth, "Rewrite steps explored from each seed term");
  c->add_option("--seed-size", check.seed_size, "Largest seed term of the non-confluence search");
  c->add_option("--coeff-bound", check.coeff_bound, "Largest coefficient of polynomial interpretations");
  c->add_option("--recursion-depth", check.recursion_depth, "Nesting limit for decompositions");
  c->add_option("--license", check.licenses, "Allowed persistence licenses (repeatable)");
  c->add_flag("--json", check.json, "Print the JSON report");
  c->add_flag("--curried", check.curried, "Decide the curried system Cu(R)");

  TransformArgs transform;
  auto* t = app.add_subcommand("transform", "Print a transformed TRS");
  t->add_option("file", transform.file, "COPS problem file")->required();
  t->add_flag("--curry", transform.curry, "Cu(R)");
  t->add_flag("--pp", transform.pp, "PP(R)");
  t->add_flag("--uncurry-rules", transform.uncurry, "The uncurrying rules U");

  SortsArgs sorts;
  auto* s = app.add_subcommand("sorts", "Infer a sort attachment");
  s->add_option("file", sorts.file, "COPS problem file")->required();
  s->add_flag("--ordered", sorts.ordered, "Order-sorted inference");
  s->add_flag("--strong", sorts.strong, "Aim at strong compatibility");

  AnalyzeArgs analyze;
  auto* an = app.add_subcommand("analyze", "Search violations of the layer conditions");
  an->add_option("file", analyze.file, "COPS problem file")->required();
  an->add_option("--scheme", analyze.scheme, "disjoint PARTFILE | sorted | curry | patterns PATFILE")
      ->expected(1, 2)
      ->required();
  an->add_option("--falsify-depth", analyze.depth, "Largest enumerated term size");
  an->add_flag("--json", analyze.json, "Print JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "confdec: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (c->parsed()) return run_check(check, out);
    if (t->parsed()) return run_transform(transform, out);
    if (s->parsed()) return run_sorts(sorts, out, err);
    return run_analyze(analyze, out);
  } catch (const UsageError& e) {
    err << "confdec: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FileError& e) {
    err << "confdec: " << e.what() << "\n";
    return kExitNoInput;
  } catch (const Error& e) {
    err << "confdec: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace confdec
