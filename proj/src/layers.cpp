#include "confdec/layers.hpp"

#include <algorithm>
#include <unordered_set>

#include "confdec/cops.hpp"
#include "confdec/curry.hpp"
#include "confdec/error.hpp"
#include "confdec/rewrite.hpp"

namespace confdec {

namespace {

/// Non-hole nodes; strictly increases along ⊏.
std::size_t weight(const Term& c) { return c.size() - c.hole_count(); }

bool is_leaf_wildcard(const Term& t) { return t.is_variable() || t.is_hole(); }

/// The unique ⊑-maximum of `layers`, or an error when there is none.
Term unique_maximum(const std::vector<Term>& layers, const Term& t) {
  if (layers.empty()) throw NoTopError("no non-empty top of " + t.to_string());
  const Term* best = &layers.front();
  for (const Term& c : layers) {
    if (weight(c) > weight(*best)) best = &c;
  }
  for (const Term& c : layers) {
    if (!context_leq(c, *best)) {
      throw NonUniqueTopError("tops " + c.to_string() + " and " + best->to_string() + " of " + t.to_string() +
                              " have no common layer above them");
    }
  }
  return *best;
}

/// Every context C ⊑ t. Throws OracleBoundError beyond `budget` prefixes.
std::vector<Term> prefixes(const Term& t, std::size_t budget) {
  if (t.is_hole()) return {t};
  if (t.is_variable()) return {Term::hole(), t};
  std::vector<std::vector<Term>> combos{{}};
  for (const Term& a : t.args()) {
    std::vector<Term> sub = prefixes(a, budget);
    std::vector<std::vector<Term>> next;
    if (combos.size() * sub.size() > budget) throw OracleBoundError("too many prefixes of " + t.to_string());
    next.reserve(combos.size() * sub.size());
    for (const auto& c : combos) {
      for (const Term& s : sub) {
        next.push_back(c);
        next.back().push_back(s);
      }
    }
    combos = std::move(next);
  }
  std::vector<Term> out{Term::hole()};
  out.reserve(combos.size() + 1);
  for (auto& c : combos) out.push_back(Term::function(t.name(), std::move(c)));
  return out;
}

constexpr std::size_t kPrefixBudget = std::size_t{1} << 22;

}  // namespace

// DisjointScheme ----------------------------------------------------------------------

DisjointScheme::DisjointScheme(Signature signature, std::set<std::string> f1, std::set<std::string> f2)
    : signature_(std::move(signature)), f1_(std::move(f1)), f2_(std::move(f2)) {
  for (const std::string& f : f1_) {
    if (f2_.count(f)) throw Error("symbol " + f + " occurs in both parts of a disjoint scheme");
  }
}

int DisjointScheme::color(const std::string& symbol) const {
  if (f1_.count(symbol)) return 1;
  if (f2_.count(symbol)) return 2;
  return 0;
}

bool DisjointScheme::contains(const Term& c) const {
  int seen = 0;
  for (const std::string& f : function_symbols(c)) {
    int k = color(f);
    if (k == 0 || (seen != 0 && k != seen)) return false;
    seen = k;
  }
  return true;
}

Term DisjointScheme::monochromatic_prefix(const Term& t, int k) const {
  if (is_leaf_wildcard(t)) return t;
  if (color(t.name()) != k) return Term::hole();
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(monochromatic_prefix(a, k));
  return Term::function(t.name(), std::move(args));
}

Term DisjointScheme::max_top_direct(const Term& t) const {
  if (t.is_hole()) throw NoTopError("the empty context has no non-empty top");
  if (t.is_variable()) return t;
  int k = color(t.name());
  if (k == 0) throw NoTopError("symbol " + t.name() + " belongs to neither part");
  return monochromatic_prefix(t, k);
}

// SortScheme -----------------------------------------------------------------------------

SortScheme::SortScheme(SortAttachment attachment, Mode mode) : attachment_(std::move(attachment)), mode_(mode) {}

std::string SortScheme::descriptor() const {
  return mode_ == Mode::Unrestricted ? "sorted" : "sorted-restricted";
}

bool SortScheme::fits(const Term& child, const Sort& expected) const {
  if (child.is_hole()) return true;
  if (child.is_variable()) {
    if (mode_ == Mode::Unrestricted) return true;
    auto s = attachment_.variable(child.name());
    return s && attachment_.precedence().geq(expected, *s);
  }
  const SymbolType* type = attachment_.function(child.name());
  return type && type->args.size() == child.arity() && attachment_.precedence().geq(expected, type->result);
}

bool SortScheme::contains(const Term& c) const {
  if (c.is_hole()) return true;
  if (c.is_variable()) return mode_ == Mode::Unrestricted || attachment_.variable(c.name()).has_value();
  const SymbolType* type = attachment_.function(c.name());
  if (!type || type->args.size() != c.arity()) return false;
  for (std::size_t i = 0; i < c.arity(); ++i) {
    const Term& a = c.arg(i);
    if (!fits(a, type->args[i])) return false;
    if (a.is_function() && !contains(a)) return false;
  }
  return true;
}

Term SortScheme::prefix(const Term& t) const {
  if (is_leaf_wildcard(t)) return t;
  const SymbolType* type = attachment_.function(t.name());
  std::vector<Term> args;
  args.reserve(t.arity());
  for (std::size_t i = 0; i < t.arity(); ++i) {
    const Term& a = t.arg(i);
    args.push_back(fits(a, type->args[i]) ? prefix(a) : Term::hole());
  }
  return Term::function(t.name(), std::move(args));
}

Term SortScheme::max_top_direct(const Term& t) const {
  if (t.is_hole()) throw NoTopError("the empty context has no non-empty top");
  if (!contains(t.is_variable() ? t : Term::function(t.name(), std::vector<Term>(t.arity(), Term::hole())))) {
    throw NoTopError("no sorted layer is rooted at " + t.name());
  }
  return prefix(t);
}

Signature SortScheme::signature() const {
  Signature s;
  for (const auto& [f, type] : attachment_.functions()) s.add(f, type.args.size());
  return s;
}

// CurryScheme -------------------------------------------------------------------------------

CurryScheme::CurryScheme(Signature original) : original_(std::move(original)) { check_curry_names(original_); }

namespace {

struct Spine {
  const Term* head;
  std::vector<const Term*> args;  // application arguments, left to right
};

Spine unwind(const Term& t) {
  Spine s{&t, {}};
  while (s.head->is_function() && s.head->name() == kApplication && s.head->arity() == 2) {
    s.args.push_back(&s.head->arg(1));
    s.head = &s.head->arg(0);
  }
  std::reverse(s.args.begin(), s.args.end());
  return s;
}

}  // namespace

bool CurryScheme::in_l1(const Term& c) const { return max_l1(c) == c; }

Term CurryScheme::max_l1(const Term& t) const {
  if (is_leaf_wildcard(t)) return t;
  Spine spine = unwind(t);
  const Term& head = *spine.head;
  if (!head.is_function()) return Term::hole();
  auto partial = decode_partial(original_, head.name());
  if (!partial || head.arity() != partial->applied || partial->applied + spine.args.size() > partial->arity) {
    return Term::hole();
  }
  std::vector<Term> head_args;
  for (const Term& a : head.args()) head_args.push_back(max_l1(a));
  Term acc = Term::function(head.name(), std::move(head_args));
  for (const Term* a : spine.args) acc = Term::function(std::string(kApplication), {acc, max_l1(*a)});
  return acc;
}

bool CurryScheme::contains(const Term& c) const {
  if (in_l1(c)) return true;
  return c.is_function() && c.name() == kApplication && c.arity() == 2 && is_leaf_wildcard(c.arg(0)) &&
         in_l1(c.arg(1));
}

Term CurryScheme::max_top_direct(const Term& t) const {
  if (t.is_hole()) throw NoTopError("the empty context has no non-empty top");
  Term m = max_l1(t);
  if (!m.is_hole()) return m;
  if (t.name() == kApplication && t.arity() == 2) {
    Term head = t.arg(0).is_variable() ? t.arg(0) : Term::hole();
    return Term::function(std::string(kApplication), {head, max_l1(t.arg(1))});
  }
  throw NoTopError("symbol " + t.name() + " is not in the partially parametrized signature");
}

Signature CurryScheme::signature() const { return pp_signature(original_); }

// PatternScheme -------------------------------------------------------------------------------

PatternScheme::PatternScheme(std::vector<Term> patterns) : patterns_(std::move(patterns)) {}

namespace {

bool is_slot(const Term& p) { return p.is_function() && p.arity() == 0 && p.name() == kSlot; }

/// Exact instance test: slots match a single variable or hole.
bool instance_of(const Term& pattern, const Term& c) {
  if (is_slot(pattern)) return is_leaf_wildcard(c);
  if (pattern.is_hole()) return c.is_hole();
  if (!c.is_function() || c.is_hole() || c.name() != pattern.name() || c.arity() != pattern.arity()) return false;
  for (std::size_t i = 0; i < c.arity(); ++i) {
    if (!instance_of(pattern.arg(i), c.arg(i))) return false;
  }
  return true;
}

/// The largest instance of `pattern` below t, if the pattern's function part
/// lies in t.
std::optional<Term> fit(const Term& pattern, const Term& t) {
  if (is_slot(pattern)) return t.is_variable() ? t : Term::hole();
  if (pattern.is_hole()) return Term::hole();
  if (!t.is_function() || t.is_hole() || t.name() != pattern.name() || t.arity() != pattern.arity()) {
    return std::nullopt;
  }
  std::vector<Term> args;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    auto a = fit(pattern.arg(i), t.arg(i));
    if (!a) return std::nullopt;
    args.push_back(std::move(*a));
  }
  return Term::function(t.name(), std::move(args));
}

}  // namespace

bool PatternScheme::contains(const Term& c) const {
  return std::any_of(patterns_.begin(), patterns_.end(), [&c](const Term& p) { return instance_of(p, c); });
}

Term PatternScheme::max_top_direct(const Term& t) const {
  if (t.is_hole()) throw NoTopError("the empty context has no non-empty top");
  std::vector<Term> candidates;
  for (const Term& p : patterns_) {
    if (auto c = fit(p, t); c && !c->is_hole()) candidates.push_back(std::move(*c));
  }
  return unique_maximum(candidates, t);
}

Signature PatternScheme::signature() const {
  Signature s;
  for (const Term& p : patterns_) {
    for (const Position& q : function_positions(p)) {
      const Term& sub = subterm_at(p, q);
      if (!is_slot(sub)) s.add(sub.name(), sub.arity());
    }
  }
  return s;
}

PatternScheme parse_patterns(std::string_view text) {
  std::vector<Term> patterns;
  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    ++line_no;
    begin = end + 1;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    try {
      patterns.push_back(parse_term(line, [](const std::string&) { return false; }));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no, 1);
    }
  }
  return PatternScheme(std::move(patterns));
}

// Max-tops, ranks, aliens ---------------------------------------------------------------------

Term max_top(const LayerScheme& scheme, const Term& t) {
  if (t.is_hole()) throw NoTopError("the empty context has no non-empty top");
  return scheme.max_top_direct(t);
}

Term max_top_oracle(const LayerScheme& scheme, const Term& t, std::size_t size_bound) {
  if (t.size() > size_bound) {
    throw OracleBoundError("term of size " + std::to_string(t.size()) + " exceeds the oracle bound");
  }
  if (t.is_hole()) throw NoTopError("the empty context has no non-empty top");
  std::vector<Term> layers;
  for (Term& c : prefixes(t, kPrefixBudget)) {
    if (!c.is_hole() && scheme.contains(c)) layers.push_back(std::move(c));
  }
  return unique_maximum(layers, t);
}

namespace {

class RankCalculator {
 public:
  explicit RankCalculator(const LayerScheme& scheme) : scheme_(scheme) {}

  std::size_t rank(const Term& t) {
    if (t.is_hole()) return 0;
    if (auto it = memo_.find(t); it != memo_.end()) return it->second;
    Term m = max_top(scheme_, t);
    std::size_t r = 0;
    for (const Term& a : split_at_holes(m, t)) r = std::max(r, rank(a));
    memo_.emplace(t, r + 1);
    return r + 1;
  }

 private:
  const LayerScheme& scheme_;
  std::unordered_map<Term, std::size_t, TermHash> memo_;
};

}  // namespace

RankedAliens rank_and_aliens(const LayerScheme& scheme, const Term& t) {
  RankCalculator calc(scheme);
  Term m = max_top(scheme, t);
  std::vector<Term> aliens = split_at_holes(m, t);
  std::size_t r = 0;
  for (const Term& a : aliens) r = std::max(r, calc.rank(a));
  return RankedAliens{r + 1, std::move(m), std::move(aliens)};
}

std::size_t rank(const LayerScheme& scheme, const Term& t) { return RankCalculator(scheme).rank(t); }

BaseDecomposition base_decompose(const LayerScheme& scheme, const Term& t, std::size_t r) {
  RankCalculator calc(scheme);
  std::size_t rk = calc.rank(t);
  if (rk > r + 1) {
    throw RankExceededError("rank " + std::to_string(rk) + " of " + t.to_string() + " exceeds " +
                            std::to_string(r + 1));
  }
  Term m = max_top(scheme, t);
  std::vector<Term> fillers;
  std::vector<Term> talls;
  for (Term& a : split_at_holes(m, t)) {
    if (!a.is_hole() && calc.rank(a) == r) {
      talls.push_back(std::move(a));
      fillers.push_back(Term::hole());
    } else {
      fillers.push_back(std::move(a));
    }
  }
  return BaseDecomposition{r, fill_holes(m, fillers), std::move(talls)};
}

std::size_t imbalance(const std::vector<Term>& ts) {
  return std::unordered_set<Term, TermHash>(ts.begin(), ts.end()).size();
}

bool proportional(const std::vector<Term>& s, const std::vector<Term>& t) {
  if (s.size() != t.size()) {
    throw LengthMismatchError("sequences of length " + std::to_string(s.size()) + " and " +
                              std::to_string(t.size()));
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (s[i] == s[j] && t[i] != t[j]) return false;
    }
  }
  return true;
}

// Enumeration ------------------------------------------------------------------------------------

std::vector<Term> enumerate_terms(const Signature& signature, const std::vector<std::string>& variables,
                                  std::size_t max_size, bool with_hole) {
  std::vector<std::vector<Term>> by_size(max_size + 1);
  if (max_size == 0) return {};
  if (with_hole) by_size[1].push_back(Term::hole());
  for (const std::string& x : variables) by_size[1].push_back(Term::variable(x));
  for (const Symbol& f : signature.symbols()) {
    if (f.arity == 0) by_size[1].push_back(Term::function(f.name));
  }
  for (std::size_t n = 2; n <= max_size; ++n) {
    for (const Symbol& f : signature.symbols()) {
      if (f.arity == 0 || f.arity > n - 1) continue;
      // Distribute n - 1 nodes over the arguments, each getting at least one.
      std::vector<Term> args;
      auto fill = [&](auto&& self, std::size_t i, std::size_t left) -> void {
        if (i + 1 == f.arity) {
          for (const Term& a : by_size[left]) {
            args.push_back(a);
            by_size[n].push_back(Term::function(f.name, args));
            args.pop_back();
          }
          return;
        }
        for (std::size_t k = 1; k + (f.arity - i - 1) <= left; ++k) {
          for (const Term& a : by_size[k]) {
            args.push_back(a);
            self(self, i + 1, left - k);
            args.pop_back();
          }
        }
      };
      fill(fill, 0, n - 1);
    }
  }
  std::vector<Term> out;
  for (auto& v : by_size) out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  return out;
}

// Falsifier ------------------------------------------------------------------------------------------

std::string to_string(Condition c) {
  switch (c) {
    case Condition::L1:
      return "L1";
    case Condition::L2:
      return "L2";
    case Condition::L3:
      return "L3";
    case Condition::W:
      return "W";
    case Condition::C1:
      return "C1";
    case Condition::C2:
      return "C2";
  }
  return "?";
}

namespace {

bool has_nonempty_top(const LayerScheme& scheme, const Term& t) {
  for (const Term& c : prefixes(t, kPrefixBudget)) {
    if (!c.is_hole() && scheme.contains(c)) return true;
  }
  return false;
}

/// Rewrites t at p with a rule, treating holes as constants.
std::optional<Term> rewrite_at(const Trs& trs, const Term& t, const Position& p, std::size_t rule) {
  if (!is_valid_position(t, p)) return std::nullopt;
  const Term& sub = subterm_at(t, p);
  if (!sub.is_function() || sub.is_hole()) return std::nullopt;
  auto sigma = match(trs.rule(rule).lhs(), sub);
  if (!sigma) return std::nullopt;
  return replace_at(t, p, sigma->apply(trs.rule(rule).rhs()));
}

bool is_function_position(const Term& c, const Position& p) {
  if (!is_valid_position(c, p)) return false;
  const Term& sub = subterm_at(c, p);
  return sub.is_function() && !sub.is_hole();
}

/// The W/C1 outcome of mirroring a step of s at p on its max-top M.
enum class Mirror { Fine, BreaksW, BreaksC1 };

Mirror mirror(const LayerScheme& scheme, const Trs& trs, const Term& s, const Term& m, const Position& p,
              std::size_t rule) {
  auto l = rewrite_at(trs, m, p, rule);
  if (!l || !scheme.contains(*l)) return Mirror::BreaksW;
  if (l->is_hole()) return Mirror::Fine;
  auto t = rewrite_at(trs, s, p, rule);
  if (!t) return Mirror::Fine;
  Term mt = max_top(scheme, *t);
  return mt == *l ? Mirror::Fine : Mirror::BreaksC1;
}

}  // namespace

std::vector<Violation> falsify_conditions(const LayerScheme& scheme, const Trs& trs, const FalsifyOptions& options) {
  Signature sig = scheme.signature();
  sig.merge(trs.signature());
  std::vector<Term> terms = enumerate_terms(sig, options.variables, options.size_bound, false);
  std::vector<Term> contexts = enumerate_terms(sig, options.variables, options.size_bound, true);
  std::vector<Term> layers;
  for (const Term& c : contexts) {
    if (scheme.contains(c)) layers.push_back(c);
  }
  std::vector<Violation> out;

  // L1
  for (const Term& t : terms) {
    if (!has_nonempty_top(scheme, t)) {
      out.push_back({Condition::L1, {t}, {}, std::nullopt, "no non-empty top"});
      break;
    }
  }

  // L2
  [&] {
    std::size_t budget = options.cap;
    for (const Term& c : contexts) {
      for (const Position& p : hole_positions(c)) {
        bool with_hole = scheme.contains(c);
        for (const std::string& x : options.variables) {
          if (budget-- == 0) return;
          Term cx = replace_at(c, p, Term::variable(x));
          if (scheme.contains(cx) != with_hole) {
            out.push_back({Condition::L2, {c, cx}, p, std::nullopt,
                           with_hole ? "variable instance is not a layer" : "hole instance is not a layer"});
            return;
          }
        }
      }
    }
  }();

  // L3
  [&] {
    std::unordered_map<std::string, std::vector<const Term*>> by_root;
    for (const Term& n : layers) {
      if (n.is_function() && !n.is_hole()) by_root[n.name()].push_back(&n);
    }
    std::size_t budget = options.cap;
    for (const Term& l : layers) {
      for (const Position& p : function_positions(l)) {
        const Term& sub = subterm_at(l, p);
        if (sub.is_variable()) continue;
        auto it = by_root.find(sub.name());
        if (it == by_root.end()) continue;
        for (const Term* n : it->second) {
          if (budget-- == 0) return;
          auto merged = merge_contexts(sub, *n);
          if (merged && !scheme.contains(replace_at(l, p, *merged))) {
            out.push_back({Condition::L3, {l, *n}, p, std::nullopt, "merge at p leaves the layer system"});
            return;
          }
        }
      }
    }
  }();

  // W and C1
  [&] {
    bool found_w = false;
    bool found_c1 = false;
    std::size_t budget = options.cap;
    for (const Term& s : terms) {
      Term m = Term::hole();
      try {
        m = max_top(scheme, s);
      } catch (const NoTopError&) {
        continue;
      }
      for (const Step& step : rewrite_steps(trs, s)) {
        if (budget-- == 0) return;
        if (!is_function_position(m, step.position)) continue;
        Mirror r = mirror(scheme, trs, s, m, step.position, step.rule);
        if (r == Mirror::BreaksW && !found_w) {
          found_w = true;
          out.push_back({Condition::W, {s, m}, step.position, step.rule, "mirrored step leaves the layer system"});
        }
        if (r == Mirror::BreaksC1 && !found_c1) {
          found_c1 = true;
          out.push_back({Condition::C1, {s, m}, step.position, step.rule,
                         "mirrored result is neither the hole nor the max-top of the reduct"});
        }
        if (found_w && found_c1) return;
      }
    }
  }();

  // C2
  [&] {
    std::size_t budget = options.cap;
    for (const Term& n : layers) {
      for (const Term& l : prefixes(n, kPrefixBudget)) {
        if (!scheme.contains(l)) continue;
        for (const Position& p : hole_positions(l)) {
          if (budget-- == 0) return;
          const Term& fill = subterm_at(n, p);
          if (fill.is_hole()) continue;
          if (!scheme.contains(replace_at(l, p, fill))) {
            out.push_back({Condition::C2, {l, n}, p, std::nullopt, "filling one hole of L from N leaves the system"});
            return;
          }
        }
      }
    }
  }();

  return out;
}

bool verify_violation(const LayerScheme& scheme, const Trs& trs, const Violation& v) {
  const auto& w = v.witnesses;
  const Position& p = v.position;
  switch (v.condition) {
    case Condition::L1:
      return w.size() == 1 && !w[0].has_holes() && !has_nonempty_top(scheme, w[0]);
    case Condition::L2: {
      if (w.size() != 2 || !is_valid_position(w[0], p) || !subterm_at(w[0], p).is_hole()) return false;
      if (!is_valid_position(w[1], p) || !subterm_at(w[1], p).is_variable()) return false;
      if (replace_at(w[1], p, Term::hole()) != w[0]) return false;
      return scheme.contains(w[0]) != scheme.contains(w[1]);
    }
    case Condition::L3: {
      if (w.size() != 2 || !scheme.contains(w[0]) || !scheme.contains(w[1])) return false;
      if (!is_function_position(w[0], p)) return false;
      auto merged = merge_contexts(subterm_at(w[0], p), w[1]);
      return merged && !scheme.contains(replace_at(w[0], p, *merged));
    }
    case Condition::C2: {
      if (w.size() != 2 || !scheme.contains(w[0]) || !scheme.contains(w[1]) || !context_leq(w[0], w[1])) {
        return false;
      }
      if (!is_valid_position(w[0], p) || !subterm_at(w[0], p).is_hole()) return false;
      return !scheme.contains(replace_at(w[0], p, subterm_at(w[1], p)));
    }
    case Condition::W:
    case Condition::C1: {
      if (w.size() != 2 || !v.rule || *v.rule >= trs.size()) return false;
      if (max_top(scheme, w[0]) != w[1] || !is_function_position(w[1], p)) return false;
      if (!rewrite_at(trs, w[0], p, *v.rule)) return false;
      Mirror r = mirror(scheme, trs, w[0], w[1], p, *v.rule);
      return r == (v.condition == Condition::W ? Mirror::BreaksW : Mirror::BreaksC1);
    }
  }
  return false;
}

}  // namespace confdec
