// One PASS/FAIL line per acceptance criterion.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "confdec/analysis.hpp"
#include "confdec/confluence.hpp"
#include "confdec/cops.hpp"
#include "confdec/curry.hpp"
#include "confdec/decompose.hpp"
#include "confdec/layers.hpp"
#include "confdec/rewrite.hpp"
#include "confdec/sorts.hpp"
#include "corpus.hpp"
#include "properties.hpp"

using namespace confdec;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream notes;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) notes << what;
    ok = ok && cond;
  }
};

using RuleSets = std::set<std::vector<std::size_t>>;

RuleSets rule_sets(const ComponentSet& cs) {
  RuleSets out;
  for (const auto& c : cs.components) {
    std::vector<std::size_t> one;
    for (std::size_t i : c.rules) one.push_back(i + 1);
    out.insert(one);
  }
  return out;
}

Term T(const char* text) { return parse_term(text, std::set<std::string>{"x", "x1", "x2"}); }

Trs P(const char* text) { return parse_trs(text, ParseOptions{true}); }

void huet(Check& c) {
  Trs trs = corpus::trs("huet.trs");
  Verdict v = decide(trs);
  c.expect(v.answer == Answer::No, "verdict is not NO");
  c.expect(bool(v.trace.witness), "no witness");
  if (!v.trace.witness) return;
  const PeakWitness& w = *v.trace.witness;
  c.expect(w.seed == T("f(c,c)"), "seed " + w.seed.to_string());
  c.expect(std::set<Term>{w.left.end(), w.right.end()} == std::set<Term>{T("a"), T("b")}, "ends are not a and b");
  c.expect(verify_witness(trs, w), "witness does not replay");
  c.expect(verify_trace(v.trace), "trace does not verify");
}

void disjoint_union(Check& c) {
  Trs trs = corpus::trs("disjoint_union.trs");
  Verdict v = decide(trs);
  c.expect(v.answer == Answer::Yes, "verdict is not YES");
  c.expect(v.trace.technique == "modular", "top technique " + v.trace.technique);
  c.expect(v.trace.components && rule_sets(*v.trace.components) == RuleSets{{1}, {2, 3, 4, 5, 6}},
           "components differ");
  c.expect(v.trace.children.size() == 2, "not two children");
  if (v.trace.children.size() != 2) return;
  const ProofNode& r1 = v.trace.children[0];
  const ProofNode& r2 = v.trace.children[1];
  c.expect(r1.technique == "knuth-bendix" && r1.answer == Answer::Yes, "R1 not by Knuth-Bendix");
  c.expect(r1.certificate["critical_pairs"].empty(), "R1 has critical pairs");
  c.expect(r2.technique == "knuth-bendix" && r2.answer == Answer::Yes, "R2 not by Knuth-Bendix");
  c.expect(!r2.joins.empty(), "R2 has no joins");
  for (const JoinedPair& j : r2.joins) {
    std::set<Term> sides{canonical_variables(j.pair.left), canonical_variables(j.pair.right)};
    c.expect(sides == std::set<Term>{T("I"), canonical_variables(T("H(x)"))}, "unexpected critical pair");
    c.expect(j.join.meet == T("K"), "pair not joined at K");
  }
  c.expect(verify_trace(v.trace), "trace does not verify");
}

void four_rules(Check& c) {
  Trs trs = corpus::trs("four_rules.trs");
  Verdict v = decide(trs);
  c.expect(v.answer == Answer::Yes, "verdict is not YES");
  c.expect(v.trace.technique == "persistence-os", "top technique " + v.trace.technique);
  c.expect(v.trace.license && v.trace.license->license == License::BoundedDuplicating, "license");
  c.expect(v.trace.license && v.trace.license->bounded_duplication &&
               v.trace.license->bounded_duplication->method == BoundedDuplicationCertificate::Method::NonDuplicating,
           "bounded duplication is not by non-duplication");
  c.expect(v.trace.components && rule_sets(*v.trace.components) == RuleSets{{1, 2, 3}, {3, 4}, {3}},
           "components differ");
  c.expect(verify_trace(v.trace), "trace does not verify");

  ComponentSet ms = sort_components(trs, infer_many_sorted(trs));
  c.expect(!ms.proper(trs.size()), "many-sorted components are proper");
  RuleSets all = rule_sets(ms);
  c.expect(all.count({1, 2, 3, 4}) == 1, "no many-sorted component holds every rule");
  DecideOptions o;
  o.method = Method::PersistMs;
  c.expect(decide(trs, o).answer == Answer::Maybe, "many-sorted persistence decided the system");
}

void mot_order(Check& c) {
  Trs trs = corpus::trs("collapse.trs");
  SortAttachment attached = parse_attachment(corpus::read("collapse.sorts"));
  auto license = persistence_license(trs, attached);
  c.expect(license && license->license == License::LeftLinear, "license is not left-linear");
  c.expect(rule_sets(sort_components(trs, attached)) == RuleSets{{1, 3}, {2, 3}, {3}}, "components differ");

  DecideOptions o;
  o.method = Method::PersistOs;
  Verdict v = decide(trs, o);
  c.expect(v.answer == Answer::Yes, "verdict is not YES");
  c.expect(v.trace.license && v.trace.license->license == License::LeftLinear, "decide license");
  c.expect(v.trace.components && rule_sets(*v.trace.components) == RuleSets{{1, 3}, {2, 3}, {3}},
           "decide components differ");
  c.expect(verify_trace(v.trace), "trace does not verify");
  c.expect(decide(trs).answer == Answer::Yes, "auto verdict is not YES");

  o.licenses = {License::StronglyCompatible};
  Verdict strong = decide(trs, o);
  c.expect(strong.answer == Answer::Maybe, "strong-only run decided the system");
  auto s = infer_order_sorted(trs, true);
  c.expect(bool(s), "no strongly compatible attachment");
  if (s) {
    c.expect(check_compatibility(trs, *s, CompatibilityMode::Strong).ok, "inferred attachment not strong");
    c.expect(rule_sets(sort_components(trs, *s)).count({1, 2, 3}) == 1, "no component holds every rule");
  }
}

void counterexample(Check& c) {
  auto problem = corpus::problem("star_only.trs");
  SortAttachment s = parse_attachment(*problem.attachment_text);
  c.expect(check_compatibility(problem.trs, s, CompatibilityMode::Star).ok, "not compatible-star");
  c.expect(!check_compatibility(problem.trs, s, CompatibilityMode::Strong).ok, "strongly compatible");
  c.expect(!persistence_license(problem.trs, s), "a license was granted");
  DecideOptions o;
  o.attachment = s;
  Verdict v = decide(problem.trs, o);
  c.expect(v.answer == Answer::No, "verdict is not NO");
  c.expect(bool(v.trace.witness), "no witness");
  if (!v.trace.witness) return;
  const PeakWitness& w = *v.trace.witness;
  c.expect(w.seed == T("i(f(c),f(c))"), "seed " + w.seed.to_string());
  c.expect(std::set<Term>{w.left.end(), w.right.end()} == std::set<Term>{T("a"), T("b")}, "ends are not a and b");
  c.expect(w.left.steps.size() <= 6 && w.right.steps.size() <= 6, "peak deeper than 6");
  c.expect(verify_witness(problem.trs, w), "witness does not replay");
}

void currying(Check& c) {
  Trs r = corpus::trs("curry.trs");
  c.expect(curry_trs(r) == P("(VAR x)(RULES @(@(f^0,x),x) -> @(@(f^0,a),b))"), "Cu(R) differs");
  Trs u = P("(VAR x1 x2)(RULES @(f^0,x1) -> f^1(x1) @(f^1(x1),x2) -> f(x1,x2))");
  c.expect(uncurry_rules(r.signature()) == u, "U differs");
  c.expect(partial_parametrization(r) ==
               P("(VAR x x1 x2)(RULES f(x,x) -> f(a,b) @(f^0,x1) -> f^1(x1) @(f^1(x1),x2) -> f(x1,x2))"),
           "PP(R) differs");
  c.expect(u_normal_form(r.signature(), T("@(@(@(f^0,x),x),x)")) == T("@(f(x,x),x)"), "U-normal form differs");
}

void bounded_duplication(Check& c) {
  Trs dup = P("(VAR x)(RULES f(x,x) -> g(x,x,x))");
  auto cert = prove_bounded_duplicating(dup, 3);
  c.expect(cert && verify_bounded_duplicating(dup, *cert), "no certificate for f(x,x) -> g(x,x,x)");
  PolyInterpretation poly;
  poly.set("f", LinearPoly{{2, 2}, 0});
  poly.set("g", LinearPoly{{1, 1, 1}, 0});
  poly.set(std::string(kDiamond), LinearPoly{{1}, 1});
  BoundedDuplicationCertificate given{BoundedDuplicationCertificate::Method::Polynomial, poly};
  c.expect(verify_bounded_duplicating(dup, given), "the given interpretation does not verify");
  c.expect(!prove_bounded_duplicating(P("(VAR x)(RULES f(a,x) -> f(x,x))"), 3), "f(a,x) -> f(x,x) certified");
}

DisjointScheme union_scheme() {
  return DisjointScheme(corpus::trs("disjoint_union.trs").signature(), {"f", "a"}, {"G", "H", "I", "J", "K"});
}

void table_two(Check& c) {
  struct Row {
    const char* term;
    const char* base;
    std::vector<const char*> talls;
    std::size_t imbalance;
  };
  std::vector<Row> rows{{"f(G(a),G(a))", "f(□,□)", {"G(a)", "G(a)"}, 1},
                        {"f(H(a),G(a))", "f(□,□)", {"H(a)", "G(a)"}, 2},
                        {"f(J,G(a))", "f(J,□)", {"G(a)"}, 1},
                        {"f(K,K)", "f(K,K)", {}, 0}};
  DisjointScheme scheme = union_scheme();
  for (const Row& row : rows) {
    std::string at = std::string(" in row ") + row.term;
    c.expect(max_top(scheme, T(row.term)) == T("f(□,□)"), "max-top" + at);
    auto d = base_decompose(scheme, T(row.term), 2);
    c.expect(d.base == T(row.base), "base context" + at);
    std::vector<Term> talls;
    for (const char* t : row.talls) talls.push_back(T(t));
    c.expect(d.tall_aliens == talls, "base sequence" + at);
    c.expect(imbalance(d.tall_aliens) == row.imbalance, "imbalance" + at);
  }
}

bool has(const std::vector<Violation>& vs, Condition cond) {
  return std::any_of(vs.begin(), vs.end(), [cond](const Violation& v) { return v.condition == cond; });
}

void falsifier(Check& c) {
  PatternScheme l6 = parse_patterns(corpus::read("layer6.pat"));
  Trs w = corpus::trs("rank_w.trs");
  auto vw = falsify_conditions(l6, w, FalsifyOptions{5});
  c.expect(has(vw, Condition::W), "no W violation for f(g(x)) -> g(x)");
  for (const Violation& v : vw) c.expect(verify_violation(l6, w, v), "violation does not re-verify");

  Trs c1 = corpus::trs("rank_c1.trs");
  auto vc = falsify_conditions(l6, c1, FalsifyOptions{6});
  c.expect(has(vc, Condition::C1), "no C1 violation for f(g(h(x))) -> g(x)");
  c.expect(!has(vc, Condition::W), "W violation for f(g(h(x))) -> g(x)");
  for (const Violation& v : vc) c.expect(verify_violation(l6, c1, v), "violation does not re-verify");

  c.expect(falsify_conditions(union_scheme(), corpus::trs("disjoint_union.trs"), FalsifyOptions{4}).empty(),
           "violation on the disjoint scheme");
}

void properties(Check& c) {
  for (const props::Result& r : props::criterion_suites()) {
    if (!r.ok()) c.expect(false, r.summary());
  }
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Check&)> run;
  };
  std::vector<Criterion> criteria{
      {"Huet's system is NO with a replaying peak from f(c,c)", huet},
      {"disjoint union splits modularly into two Knuth-Bendix components", disjoint_union},
      {"four-rule example by order-sorted persistence, bounded-duplication license", four_rules},
      {"collapse example by left-linear persistence; strong license degenerates", mot_order},
      {"compatible-star counterexample is NO without a license", counterexample},
      {"currying outputs and U-normal form", currying},
      {"bounded duplication certificates", bounded_duplication},
      {"properties for r = 2", table_two},
      {"layer condition falsifier", falsifier},
      {"property suites", properties},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.expect(secs < 10.0, "took " + std::to_string(secs) + " s");
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].name;
    std::cout << " (" << static_cast<long>(secs * 1000) << " ms)";
    if (!c.ok) std::cout << ": " << c.notes.str();
    std::cout << "\n";
    failed += !c.ok;
  }
  return failed == 0 ? 0 : 1;
}
