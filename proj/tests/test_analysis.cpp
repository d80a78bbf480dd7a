#include <doctest.h>

#include "confdec/analysis.hpp"
#include "confdec/cops.hpp"
#include "confdec/error.hpp"
#include "confdec/rewrite.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace confdec;

namespace {

Trs P(const char* text) { return parse_trs(text, ParseOptions{true}); }

Trs diamond() { return Trs({diamond_rule()}); }

std::map<std::string, std::vector<long>> table_of(const PolyInterpretation& p) {
  std::map<std::string, std::vector<long>> out;
  for (const auto& [f, poly] : p.table()) {
    std::vector<long> row{poly.constant};
    row.insert(row.end(), poly.coefficients.begin(), poly.coefficients.end());
    out[f] = row;
  }
  return out;
}

/// Symbolic re-check of an interpretation, independent of the library.
bool certifies(const PolyInterpretation& p, const Trs& strict, const Trs& weak) {
  auto table = table_of(p);
  for (const auto& [f, row] : table) {
    for (std::size_t i = 1; i < row.size(); ++i) {
      if (row[i] < 1) return false;
    }
  }
  for (const Rule& r : strict.rules()) {
    if (!oracle::decreasing(table, r, 1)) return false;
  }
  for (const Rule& r : weak.rules()) {
    if (!oracle::decreasing(table, r, 0)) return false;
  }
  return true;
}

const std::vector<std::string> kCorpus{"huet.trs",      "disjoint_union.trs", "four_rules.trs",  "collapse.trs",
                                       "star_only.trs", "sort_restricted.trs", "curry.trs",      "rank_w.trs",
                                       "rank_c1.trs",   "layer_split.trs",     "quasi_ground.trs", "orthogonal.trs",
                                       "loop.trs"};

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("polynomial search") {
    Trs dup = P("(VAR x)(RULES f(x,x) -> g(x,x,x))");
    auto found = search_linear_poly(diamond(), dup, 3);
    REQUIRE(found);
    CHECK(verify_interpretation(*found, diamond(), dup));
    CHECK(certifies(*found, diamond(), dup));

    PolyInterpretation given;
    given.set("f", LinearPoly{{2, 2}, 0});
    given.set("g", LinearPoly{{1, 1, 1}, 0});
    given.set(std::string(kDiamond), LinearPoly{{1}, 1});
    CHECK(verify_interpretation(given, diamond(), dup));
    CHECK(certifies(given, diamond(), dup));

    auto alone = search_linear_poly(diamond(), Trs{}, 3);
    REQUIRE(alone);
    CHECK(certifies(*alone, diamond(), Trs{}));

    CHECK_FALSE(search_linear_poly(diamond(), P("(VAR x)(RULES f(a,x) -> f(x,x))"), 3));
  }

  TEST_CASE("interpretation checks reject bad certificates") {
    Trs dup = P("(VAR x)(RULES f(x,x) -> g(x,x,x))");
    PolyInterpretation weak;
    weak.set("f", LinearPoly{{1, 1}, 0});
    weak.set("g", LinearPoly{{1, 1, 1}, 0});
    weak.set(std::string(kDiamond), LinearPoly{{1}, 1});
    std::string reason;
    CHECK_FALSE(verify_interpretation(weak, diamond(), dup, &reason));
    CHECK_FALSE(reason.empty());
    PolyInterpretation zero;
    zero.set(std::string(kDiamond), LinearPoly{{0}, 1});
    CHECK_FALSE(verify_interpretation(zero, diamond(), Trs{}));
  }

  TEST_CASE("bounded duplication") {
    Trs dup = P("(VAR x)(RULES f(x,x) -> g(x,x,x))");
    auto c = prove_bounded_duplicating(dup, 3);
    REQUIRE(c);
    CHECK(c->method == BoundedDuplicationCertificate::Method::Polynomial);
    CHECK(verify_bounded_duplicating(dup, *c));

    auto nd = prove_bounded_duplicating(corpus::trs("four_rules.trs"), 3);
    REQUIRE(nd);
    CHECK(nd->method == BoundedDuplicationCertificate::Method::NonDuplicating);

    CHECK_FALSE(prove_bounded_duplicating(P("(VAR x)(RULES f(a,x) -> f(x,x))"), 3));
    CHECK_THROWS_AS(prove_bounded_duplicating(P("(VAR x)(RULES ◇(x) -> x)"), 3), SignatureCollisionError);
  }

  TEST_CASE("non-duplicating corpus systems are bounded duplicating") {
    std::size_t seen = 0;
    for (const auto& name : kCorpus) {
      Trs t = corpus::trs(name);
      if (!rule_properties(t).non_duplicating) continue;
      ++seen;
      CAPTURE(name);
      auto c = prove_bounded_duplicating(t, 3);
      REQUIRE(c);
      CHECK(verify_bounded_duplicating(t, *c));
    }
    CHECK(seen >= 8);
  }

  TEST_CASE("lexicographic path order") {
    Trs r2 = P("(VAR x)(RULES G(x) -> I I -> K G(x) -> H(x) H(x) -> J J -> K)");
    auto prec = lpo_termination(r2);
    REQUIRE(prec);
    for (auto [f, g] : std::vector<std::pair<const char*, const char*>>{
             {"G", "H"}, {"G", "I"}, {"H", "J"}, {"I", "K"}, {"J", "K"}}) {
      CHECK(prec->greater(f, g));
    }
    for (const Rule& r : r2.rules()) CHECK(oracle::lpo(r.lhs(), r.rhs(), prec->pairs()));

    auto sub = lpo_termination(P("(VAR x)(RULES f(x,x) -> x)"));
    CHECK(sub);
    CHECK_FALSE(lpo_termination(P("(RULES c -> g(c))")));
  }

  TEST_CASE("every precedence found orients its rules") {
    std::size_t found = 0;
    for (const auto& name : kCorpus) {
      Trs t = corpus::trs(name);
      auto prec = lpo_termination(t);
      if (!prec) continue;
      ++found;
      for (const Rule& r : t.rules()) {
        CHECK(oracle::lpo(r.lhs(), r.rhs(), prec->pairs()));
        CHECK(lpo_greater(r.lhs(), r.rhs(), *prec));
      }
    }
    CHECK(found >= 6);
  }

  TEST_CASE("lpo agrees with the textbook definition") {
    Signature sig{{"f", 2}, {"g", 1}, {"a", 0}};
    SymbolPrecedence p;
    p.add("f", "g");
    p.add("g", "a");
    std::vector<std::pair<std::string, std::string>> pairs = p.pairs();
    std::vector<Term> terms;
    for (const auto& f : std::vector<std::string>{"x", "y"}) terms.push_back(Term::variable(f));
    std::set<std::string> vars{"x", "y"};
    for (const char* text : {"a", "g(x)", "g(a)", "f(x,y)", "f(y,x)", "f(a,x)", "g(g(x))", "f(g(x),y)",
                             "f(x,g(y))", "g(f(x,y))", "f(f(x,y),a)", "f(x,f(x,y))"}) {
      terms.push_back(parse_term(text, vars));
    }
    for (const Term& s : terms) {
      for (const Term& t : terms) CHECK(lpo_greater(s, t, p) == oracle::lpo(s, t, pairs));
    }
  }
}
