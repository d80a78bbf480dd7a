#include "confdec/analysis.hpp"

#include <functional>
#include <sstream>

#include "confdec/error.hpp"
#include "confdec/rewrite.hpp"

namespace confdec {

const LinearPoly* PolyInterpretation::get(const std::string& f) const {
  auto it = table_.find(f);
  return it == table_.end() ? nullptr : &it->second;
}

PolyInterpretation::Value PolyInterpretation::evaluate(const Term& t) const {
  Value v;
  if (t.is_variable()) {
    v.coefficients[t.name()] = 1;
    return v;
  }
  const LinearPoly* p = get(t.name());
  if (!p || p->coefficients.size() != t.arity()) throw Error("no interpretation for " + t.name());
  v.constant = p->constant;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    Value a = evaluate(t.arg(i));
    for (const auto& [x, c] : a.coefficients) v.coefficients[x] += p->coefficients[i] * c;
    v.constant += p->coefficients[i] * a.constant;
  }
  return v;
}

std::string PolyInterpretation::to_string() const {
  std::ostringstream out;
  bool first_entry = true;
  for (const auto& [f, p] : table_) {
    if (!first_entry) out << ", ";
    first_entry = false;
    out << f << " = ";
    bool first = true;
    for (std::size_t i = 0; i < p.coefficients.size(); ++i) {
      if (!first) out << " + ";
      first = false;
      if (p.coefficients[i] != 1) out << p.coefficients[i];
      out << "x" << i + 1;
    }
    if (p.constant != 0 || first) out << (first ? "" : " + ") << p.constant;
  }
  return out.str();
}

namespace {

/// lhs ≥ rhs coefficientwise; the constant must drop by at least `gap`.
bool decreases(const PolyInterpretation::Value& l, const PolyInterpretation::Value& r, long gap) {
  for (const auto& [x, c] : r.coefficients) {
    auto it = l.coefficients.find(x);
    if ((it == l.coefficients.end() ? 0 : it->second) < c) return false;
  }
  return l.constant - r.constant >= gap;
}

bool rule_decreases(const PolyInterpretation& p, const Rule& rule, long gap) {
  return decreases(p.evaluate(rule.lhs()), p.evaluate(rule.rhs()), gap);
}

Signature joint_signature(const Trs& a, const Trs& b) {
  Signature s = a.signature();
  s.merge(b.signature());
  return s;
}

}  // namespace

bool verify_interpretation(const PolyInterpretation& p, const Trs& strict, const Trs& weak, std::string* reason) {
  auto fail = [reason](std::string m) {
    if (reason) *reason = std::move(m);
    return false;
  };
  Signature sig = joint_signature(strict, weak);
  for (const Symbol& f : sig.symbols()) {
    const LinearPoly* lp = p.get(f.name);
    if (!lp || lp->coefficients.size() != f.arity) return fail("no interpretation for " + f.name);
    for (long c : lp->coefficients) {
      if (c < 1) return fail("argument coefficient of " + f.name + " is below 1");
    }
    if (lp->constant < 0) return fail("negative constant for " + f.name);
  }
  for (const Rule& r : strict.rules()) {
    if (!rule_decreases(p, r, 1)) return fail("strict rule " + r.to_string() + " does not decrease");
  }
  for (const Rule& r : weak.rules()) {
    if (!rule_decreases(p, r, 0)) return fail("weak rule " + r.to_string() + " increases");
  }
  return true;
}

std::optional<PolyInterpretation> search_linear_poly(const Trs& strict, const Trs& weak, long bound,
                                                     std::size_t node_budget) {
  if (bound < 1) return std::nullopt;
  std::vector<Symbol> symbols = joint_signature(strict, weak).symbols();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < symbols.size(); ++i) index[symbols[i].name] = i;

  // A rule is checked as soon as its last symbol (in search order) is fixed.
  struct Check {
    const Rule* rule;
    long gap;
  };
  std::vector<std::vector<Check>> ready(symbols.size());
  auto schedule = [&](const Trs& trs, long gap) {
    for (const Rule& r : trs.rules()) {
      std::size_t last = 0;
      for (const Term* side : {&r.lhs(), &r.rhs()}) {
        for (const std::string& f : function_symbols(*side)) last = std::max(last, index.at(f));
      }
      ready[last].push_back({&r, gap});
    }
  };
  schedule(strict, 1);
  schedule(weak, 0);

  PolyInterpretation current;
  std::size_t budget = node_budget;
  std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
    if (i == symbols.size()) return true;
    const Symbol& f = symbols[i];
    LinearPoly p;
    p.coefficients.assign(f.arity, 1);
    for (;;) {
      for (p.constant = 0; p.constant <= bound; ++p.constant) {
        if (budget-- == 0) return false;
        current.set(f.name, p);
        bool ok = true;
        for (const Check& c : ready[i]) {
          if (!rule_decreases(current, *c.rule, c.gap)) {
            ok = false;
            break;
          }
        }
        if (ok && assign(i + 1)) return true;
        if (budget == 0) return false;
      }
      // Next coefficient vector in lexicographic order.
      std::size_t k = 0;
      while (k < f.arity && p.coefficients[k] == bound) p.coefficients[k++] = 1;
      if (k == f.arity) break;
      ++p.coefficients[k];
    }
    return false;
  };
  if (!assign(0)) return std::nullopt;
  if (!verify_interpretation(current, strict, weak)) return std::nullopt;
  return current;
}

Rule diamond_rule() {
  Term x = Term::variable("x");
  return Rule(Term::function(std::string(kDiamond), {x}), x);
}

std::optional<BoundedDuplicationCertificate> prove_bounded_duplicating(const Trs& trs, long bound) {
  if (trs.signature().contains(std::string(kDiamond))) {
    throw SignatureCollisionError("the marker symbol is already used by the system");
  }
  if (rule_properties(trs).non_duplicating) {
    return BoundedDuplicationCertificate{BoundedDuplicationCertificate::Method::NonDuplicating, std::nullopt};
  }
  auto p = search_linear_poly(Trs({diamond_rule()}), trs, bound);
  if (!p) return std::nullopt;
  return BoundedDuplicationCertificate{BoundedDuplicationCertificate::Method::Polynomial, std::move(p)};
}

bool verify_bounded_duplicating(const Trs& trs, const BoundedDuplicationCertificate& c) {
  if (c.method == BoundedDuplicationCertificate::Method::NonDuplicating) return rule_properties(trs).non_duplicating;
  return c.interpretation && verify_interpretation(*c.interpretation, Trs({diamond_rule()}), trs);
}

// LPO ------------------------------------------------------------------------------

namespace {

bool reaches(const std::vector<std::pair<std::string, std::string>>& pairs, const std::string& from,
             const std::string& to) {
  std::vector<std::string> stack{from};
  std::set<std::string> seen{from};
  while (!stack.empty()) {
    std::string f = stack.back();
    stack.pop_back();
    for (const auto& [a, b] : pairs) {
      if (a != f) continue;
      if (b == to) return true;
      if (seen.insert(b).second) stack.push_back(b);
    }
  }
  return false;
}

bool contains_variable(const Term& t, const std::string& x) {
  for (const std::string& y : variables(t)) {
    if (y == x) return true;
  }
  return false;
}

}  // namespace

bool SymbolPrecedence::add(const std::string& f, const std::string& g) {
  if (f == g || reaches(pairs_, g, f)) return false;
  pairs_.emplace_back(f, g);
  return true;
}

bool SymbolPrecedence::greater(const std::string& f, const std::string& g) const {
  return f != g && reaches(pairs_, f, g);
}

bool lpo_greater(const Term& s, const Term& t, const SymbolPrecedence& prec) {
  if (s.is_variable()) return false;
  if (t.is_variable()) return contains_variable(s, t.name());
  for (const Term& si : s.args()) {
    if (si == t || lpo_greater(si, t, prec)) return true;
  }
  auto dominates_args = [&] {
    for (const Term& tj : t.args()) {
      if (!lpo_greater(s, tj, prec)) return false;
    }
    return true;
  };
  if (s.name() == t.name() && s.arity() == t.arity()) {
    for (std::size_t i = 0; i < s.arity(); ++i) {
      if (s.arg(i) == t.arg(i)) continue;
      return lpo_greater(s.arg(i), t.arg(i), prec) && dominates_args();
    }
    return false;
  }
  return prec.greater(s.name(), t.name()) && dominates_args();
}

namespace {

/// Continuation-passing LPO that extends the precedence on demand and
/// backtracks over the alternatives of the definition.
class LpoSearch {
 public:
  using K = std::function<bool()>;

  explicit LpoSearch(std::size_t budget) : budget_(budget) {}

  bool exhausted() const { return budget_ == 0; }
  const std::vector<std::pair<std::string, std::string>>& pairs() const { return pairs_; }

  bool gt(const Term& s, const Term& t, const K& k) {
    if (budget_ == 0) return false;
    --budget_;
    if (s.is_variable()) return false;
    if (t.is_variable()) return contains_variable(s, t.name()) && k();
    for (const Term& si : s.args()) {
      if (si == t ? k() : gt(si, t, k)) return true;
    }
    if (s.name() == t.name() && s.arity() == t.arity()) {
      for (std::size_t i = 0; i < s.arity(); ++i) {
        if (s.arg(i) == t.arg(i)) continue;
        return gt(s.arg(i), t.arg(i), [&] { return all_gt(s, t, 0, k); });
      }
      return false;
    }
    const std::string& f = s.name();
    const std::string& g = t.name();
    if (f != g && reaches(pairs_, f, g)) return all_gt(s, t, 0, k);
    if (f == g || reaches(pairs_, g, f)) return false;
    pairs_.emplace_back(f, g);
    bool ok = all_gt(s, t, 0, k);
    if (!ok) pairs_.pop_back();
    return ok;
  }

 private:
  bool all_gt(const Term& s, const Term& t, std::size_t j, const K& k) {
    if (j == t.arity()) return k();
    return gt(s, t.arg(j), [&] { return all_gt(s, t, j + 1, k); });
  }

  std::size_t budget_;
  std::vector<std::pair<std::string, std::string>> pairs_;
};

}  // namespace

std::optional<SymbolPrecedence> lpo_termination(const Trs& trs, std::size_t node_budget) {
  LpoSearch search(node_budget);
  std::function<bool(std::size_t)> orient = [&](std::size_t i) -> bool {
    if (i == trs.size()) return true;
    return search.gt(trs.rule(i).lhs(), trs.rule(i).rhs(), [&] { return orient(i + 1); });
  };
  if (!orient(0)) return std::nullopt;
  SymbolPrecedence prec;
  for (const auto& [f, g] : search.pairs()) prec.add(f, g);
  for (const Rule& r : trs.rules()) {
    if (!lpo_greater(r.lhs(), r.rhs(), prec)) return std::nullopt;
  }
  return prec;
}

}  // namespace confdec
