#include <doctest.h>

#include <algorithm>

#include "confdec/cops.hpp"
#include "confdec/error.hpp"
#include "confdec/rewrite.hpp"
#include "corpus.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace confdec;

namespace {

const std::set<std::string> kVars{"x", "y", "z", "u", "v"};

Term T(const char* text) { return parse_term(text, kVars); }

const char* kHuet = "(VAR x)(RULES f(x,x) -> a f(x,g(x)) -> b c -> g(c))";
const char* kR2 = "(VAR x)(RULES G(x) -> I I -> K G(x) -> H(x) H(x) -> J J -> K)";

const std::vector<std::string> kCorpus{"huet.trs",         "disjoint_union.trs", "four_rules.trs", "collapse.trs",
                                       "star_only.trs",    "sort_restricted.trs", "curry.trs",     "rank_w.trs",
                                       "rank_c1.trs",      "layer_split.trs",     "quasi_ground.trs",
                                       "orthogonal.trs",   "loop.trs"};

Trs random_trs(std::mt19937& rng, std::size_t rules) {
  Signature sig{{"f", 2}, {"g", 1}, {"a", 0}};
  gen::TermGen lhs_gen(sig, {"x", "y"}, rng());
  std::vector<Rule> out;
  while (out.size() < rules) {
    Term l = lhs_gen.term(5);
    if (l.is_variable()) continue;
    gen::TermGen rhs_gen(sig, variables(l), rng());
    out.emplace_back(l, rhs_gen.term(4));
  }
  return Trs(std::move(out));
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("match") {
    auto s = match(T("f(x,x)"), T("f(c,c)"));
    REQUIRE(s);
    CHECK(*s->lookup("x") == T("c"));
    s = match(T("f(x,g(x))"), T("f(c,g(c))"));
    REQUIRE(s);
    CHECK(*s->lookup("x") == T("c"));
    CHECK_FALSE(match(T("f(x,x)"), T("f(a,b)")));
    // The hole is an ordinary constant for matching.
    CHECK(match(T("f(x)"), T("f(□)")));
    CHECK_FALSE(match(T("f(a)"), T("f(□)")));
  }

  TEST_CASE("unify") {
    auto s = unify(T("f(x,a)"), T("f(b,y)"));
    REQUIRE(s);
    CHECK(*s->lookup("x") == T("b"));
    CHECK(*s->lookup("y") == T("a"));
    CHECK_FALSE(unify(T("x"), T("g(x)")));
    CHECK_FALSE(unify(T("f(x,x)"), T("f(y,g(y))")));
    CHECK_FALSE(oracle::unify(T("f(x,x)"), T("f(y,g(y))")));
  }

  TEST_CASE("merge and order on contexts") {
    CHECK(merge_contexts(T("□"), T("f(□,□)")) == T("f(□,□)"));
    CHECK(merge_contexts(T("g(□)"), T("g(c)")) == T("g(c)"));
    CHECK(merge_contexts(T("f(□,g(□))"), T("f(□,g(c))")) == T("f(□,g(c))"));
    CHECK_FALSE(merge_contexts(T("f(□)"), T("g(□)")));
    CHECK(context_leq(T("f(□,□)"), T("f(a,□)")));
    CHECK_FALSE(context_leq(T("f(a,□)"), T("f(□,□)")));
  }

  TEST_CASE("fill holes") {
    std::vector<Term> two{T("c"), T("g(c)")};
    CHECK(fill_holes(T("f(□,□)"), two) == T("f(c,g(c))"));
    std::vector<Term> one{T("f(x,a)")};
    CHECK(fill_holes(T("□"), one) == T("f(x,a)"));
    std::vector<Term> ga{T("G(a)")};
    CHECK(fill_holes(T("f(J,□)"), ga) == T("f(J,G(a))"));
    CHECK_THROWS_AS(fill_holes(T("f(□,□)"), ga), ArityError);
  }

  TEST_CASE("holeify") {
    CHECK(holeify(T("f(x,g(y))")) == T("f(□,g(□))"));
    CHECK(holeify(T("f(□,x)")) == T("f(□,□)"));
    CHECK(holeify(T("h(c,x)")) == T("h(c,□)"));
  }

  TEST_CASE("rewrite steps") {
    Trs loop = parse_trs("(RULES c -> g(c))");
    auto steps = rewrite_steps(loop, T("f(c,c)"));
    REQUIRE(steps.size() == 2);
    CHECK(steps[0].position == Position{1});
    CHECK(steps[0].result == T("f(g(c),c)"));
    CHECK(steps[1].position == Position{2});
    CHECK(steps[1].result == T("f(c,g(c))"));

    Trs huet = parse_trs(kHuet);
    steps = rewrite_steps(huet, T("f(c,c)"));
    CHECK(std::any_of(steps.begin(), steps.end(),
                      [](const Step& s) { return s.position.empty() && s.rule == 0 && s.result == T("a"); }));
    CHECK(rewrite_steps(huet, T("x")).empty());
  }

  TEST_CASE("normal forms") {
    Trs huet = parse_trs(kHuet);
    auto nf = normal_forms(huet, T("f(c,c)"), 3);
    CHECK(nf.forms.count(T("a")));
    CHECK(nf.forms.count(T("b")));
    auto trivial = normal_forms(Trs{}, T("f(x,a)"), 4);
    CHECK(trivial.forms == std::set<Term>{T("f(x,a)")});
    CHECK(trivial.complete);
    auto none = normal_forms(parse_trs("(RULES c -> g(c))"), T("c"), 2);
    CHECK(none.forms.empty());
    CHECK_FALSE(none.complete);
  }

  TEST_CASE("critical pairs") {
    CHECK(critical_pairs(parse_trs(kHuet)).empty());
    CHECK(critical_pairs(parse_trs("(VAR x)(RULES h(x) -> x)")).empty());
    auto cps = critical_pairs(parse_trs(kR2));
    REQUIRE(cps.size() == 2);
    std::set<std::pair<Term, Term>> got;
    for (const auto& cp : cps) got.emplace(canonical_variables(cp.left), canonical_variables(cp.right));
    Term h = canonical_variables(T("H(x)"));
    CHECK(got.count({T("I"), h}) == 1);
    CHECK(got.count({h, T("I")}) == 1);
  }

  TEST_CASE("join search") {
    Trs r2 = parse_trs(kR2);
    auto w = join_search(r2, T("I"), T("H(x)"), 3);
    REQUIRE(w);
    CHECK(w->meet == T("K"));
    CHECK(replay(r2, w->left.start, w->left.steps));
    CHECK(replay(r2, w->right.start, w->right.steps));
    auto same = join_search(r2, T("G(a)"), T("G(a)"), 0);
    REQUIRE(same);
    CHECK(same->left.steps.empty());
    CHECK(same->right.steps.empty());
    CHECK_FALSE(join_search(parse_trs(kHuet), T("a"), T("b"), 8));
  }

  TEST_CASE("rule properties") {
    auto dup = rule_flags(Rule(T("f(x,x)"), T("g(x,x,x)")));
    CHECK(dup.duplicating);
    auto k = rule_flags(Rule(T("k(x,x)"), T("k(x,x)")));
    CHECK_FALSE(k.duplicating);
    CHECK_FALSE(k.left_linear);
    CHECK(rule_flags(Rule(T("h(x)"), T("x"))).collapsing);
    auto p = rule_properties(parse_trs(kHuet));
    CHECK_FALSE(p.left_linear);
    CHECK(p.non_duplicating);
    CHECK_FALSE(p.has_collapsing);
  }

  TEST_CASE("rule invariants") {
    CHECK_THROWS_AS(Rule(T("x"), T("a")), RuleError);
    CHECK_THROWS_AS(Rule(T("f(x)"), T("y")), RuleError);
    CHECK_THROWS_AS(Rule(T("f(□)"), T("a")), RuleError);
  }

  TEST_CASE("parse problems") {
    Trs t = parse_trs("(VAR x)(RULES f(x,x) -> a)");
    REQUIRE(t.size() == 1);
    CHECK(t.rule(0).lhs() == T("f(x,x)"));
    CHECK(t.rule(0).rhs() == T("a"));

    Trs huet = corpus::trs("huet.trs");
    CHECK(huet.size() == 3);
    CHECK(huet.signature().arity("c") == 0u);
    CHECK(huet.signature().arity("f") == 2u);
    CHECK(huet.signature().arity("g") == 1u);

    CHECK_THROWS_AS(parse_trs("(VAR x)(RULES x -> a)"), ParseError);
    try {
      parse_trs("(VAR x)\n(RULES\n  f(x) -> a\n  f(x,x) -> a\n)");
      FAIL("arity clash accepted");
    } catch (const ParseError& e) {
      CHECK(e.line() == 4);
    }
    CHECK_THROWS_AS(parse_trs("(VAR x y)(RULES f(x) -> y)"), ParseError);
    CHECK_THROWS_AS(parse_trs("(RULES f(a) -> )"), ParseError);
    CHECK_THROWS_AS(parse_trs("(RULES @(a,b) -> a)"), ParseError);
    CHECK_NOTHROW(parse_trs("(RULES @(a,b) -> a)", ParseOptions{true}));
  }

  TEST_CASE("print round trip on the corpus") {
    CHECK(print_trs(Trs{}) == "(RULES )\n");
    for (const auto& name : kCorpus) {
      CAPTURE(name);
      Trs t = corpus::trs(name);
      CHECK(parse_trs(print_trs(t), ParseOptions{true}) == t);
    }
  }

  TEST_CASE("match soundness") {
    gen::TermGen g(Signature{{"f", 2}, {"g", 1}, {"a", 0}}, {"x", "y"}, 101);
    std::size_t matched = 0;
    for (int i = 0; i < 3000; ++i) {
      Term p = g.term(5);
      Term s = g.term(8);
      auto sigma = match(p, s);
      oracle::Env env;
      bool expected = oracle::match(p, s, env);
      CHECK(bool(sigma) == expected);
      if (sigma) {
        ++matched;
        CHECK(sigma->apply(p) == s);
      }
    }
    CHECK(matched > 100);
  }

  TEST_CASE("unify soundness and subsumption on all small pairs") {
    Signature sig{{"f", 2}, {"g", 1}, {"a", 0}};
    auto terms = gen::all_terms(sig, {"x", "y"}, 5, false);
    std::size_t unifiable = 0;
    for (const Term& s : terms) {
      for (const Term& t : terms) {
        auto sigma = unify(s, t);
        if (sigma) {
          ++unifiable;
          REQUIRE(sigma->apply(s) == sigma->apply(t));
          CHECK(sigma->apply(sigma->apply(s)) == sigma->apply(s));
        }
        // Unifiers built from subterms of s and t.
        std::set<Term> pool;
        for (const Term* u : {&s, &t}) {
          for (const auto& p : oracle::positions(*u)) pool.insert(oracle::at(*u, p));
        }
        for (const Term& bx : pool) {
          for (const Term& by : pool) {
            oracle::Env theta{{"x", bx}, {"y", by}};
            if (oracle::apply(theta, s) != oracle::apply(theta, t)) continue;
            REQUIRE(sigma);
            Term general = Term::function("pair", {sigma->apply(Term::variable("x")), sigma->apply(Term::variable("y"))});
            oracle::Env tau;
            CHECK(oracle::match(general, Term::function("pair", {bx, by}), tau));
          }
        }
      }
    }
    CHECK(unifiable > 1000);
  }

  TEST_CASE("split and fill round trip") {
    gen::TermGen g(Signature{{"f", 2}, {"g", 1}, {"h", 3}, {"a", 0}}, {"x"}, 202);
    std::mt19937 rng(203);
    for (int i = 0; i < 1000; ++i) {
      Term t = g.term(12);
      Term c = t;
      for (const auto& p : oracle::positions(t)) {
        if (gen::pick(rng, 4) == 0 && is_valid_position(c, p) && !subterm_at(c, p).is_hole()) {
          c = replace_at(c, p, Term::hole());
        }
      }
      REQUIRE(context_leq(c, t));
      auto parts = split_at_holes(c, t);
      CHECK(parts.size() == c.hole_count());
      CHECK(fill_holes(c, parts) == t);
    }
  }

  TEST_CASE("rewrite steps equal the naive scan on corpus terms") {
    for (const auto& name : kCorpus) {
      Trs trs = corpus::trs(name);
      for (const Term& t : gen::all_terms(trs.signature(), {"x"}, 4, false)) {
        auto fast = rewrite_steps(trs, t);
        auto slow = oracle::steps(trs, t);
        REQUIRE(fast.size() == slow.size());
        for (std::size_t i = 0; i < fast.size(); ++i) {
          CHECK(fast[i].position == slow[i].position);
          CHECK(fast[i].rule == slow[i].rule);
          CHECK(fast[i].result == slow[i].result);
        }
      }
    }
  }

  TEST_CASE("join witnesses replay") {
    std::size_t joined = 0;
    for (const auto& name : kCorpus) {
      Trs trs = corpus::trs(name);
      for (const auto& cp : critical_pairs(trs)) {
        auto w = join_search(trs, cp.left, cp.right, 4);
        if (!w) continue;
        ++joined;
        for (const Derivation* d : {&w->left, &w->right}) {
          Term cur = d->start;
          for (const Step& s : d->steps) {
            auto all = oracle::steps(trs, cur);
            CHECK(std::any_of(all.begin(), all.end(), [&](const oracle::Step& o) {
              return o.position == s.position && o.rule == s.rule && o.result == s.result;
            }));
            cur = s.result;
          }
          CHECK(cur == w->meet);
        }
        CHECK(w->left.start == cp.left);
        CHECK(w->right.start == cp.right);
      }
    }
    CHECK(joined > 0);
  }

  TEST_CASE("critical pairs equal the brute force") {
    std::mt19937 rng(301);
    auto compare = [](const Trs& trs) {
      std::set<oracle::PairKey> fast;
      for (const auto& cp : critical_pairs(trs)) {
        fast.insert(oracle::key(cp.outer_rule, cp.inner_rule, cp.position, cp.peak, cp.left, cp.right));
      }
      CHECK(fast == oracle::critical_pairs(trs));
    };
    for (const auto& name : kCorpus) compare(corpus::trs(name));
    for (int i = 0; i < 300; ++i) compare(random_trs(rng, 1 + i % 6));
  }
}
