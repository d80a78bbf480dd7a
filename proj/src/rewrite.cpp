#include "confdec/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <utility>

#include "confdec/error.hpp"

namespace confdec {

namespace {

bool match_into(const Term& pattern, const Term& subject, Substitution& sigma) {
  if (pattern.is_variable()) {
    if (const Term* bound = sigma.lookup(pattern.name())) return *bound == subject;
    sigma.bind(pattern.name(), subject);
    return true;
  }
  if (!subject.is_function() || pattern.name() != subject.name() ||
      pattern.arity() != subject.arity()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.arity(); ++i) {
    if (!match_into(pattern.arg(i), subject.arg(i), sigma)) return false;
  }
  return true;
}

bool occurs(const std::string& x, const Term& t) {
  if (t.is_ground()) return false;
  if (t.is_variable()) return t.name() == x;
  for (const Term& a : t.args()) {
    if (occurs(x, a)) return true;
  }
  return false;
}

}  // namespace

std::optional<Substitution> match(const Term& pattern, const Term& subject) {
  Substitution sigma;
  if (!match_into(pattern, subject, sigma)) return std::nullopt;
  return sigma;
}

std::optional<Substitution> unify(const Term& s, const Term& t) {
  Substitution sigma;
  std::vector<std::pair<Term, Term>> work{{s, t}};
  while (!work.empty()) {
    auto [a, b] = std::move(work.back());
    work.pop_back();
    a = sigma.apply(a);
    b = sigma.apply(b);
    if (a == b) continue;
    // Bind the right-hand variable first so that renamed (inner) variables are
    // eliminated in favour of the outer ones.
    if (!b.is_variable() && a.is_variable()) std::swap(a, b);
    if (b.is_variable()) {
      if (occurs(b.name(), a)) return std::nullopt;
      Substitution single;
      single.bind(b.name(), a);
      Substitution composed;
      for (const auto& [x, u] : sigma.bindings()) composed.bind(x, single.apply(u));
      composed.bind(b.name(), a);
      sigma = std::move(composed);
      continue;
    }
    if (a.name() != b.name() || a.arity() != b.arity()) return std::nullopt;
    for (std::size_t i = 0; i < a.arity(); ++i) work.emplace_back(a.arg(i), b.arg(i));
  }
  return sigma;
}

std::optional<Term> merge_contexts(const Term& c, const Term& d) {
  if (c.is_hole()) return d;
  if (d.is_hole()) return c;
  if (c.is_variable() || d.is_variable()) {
    if (c == d) return c;
    return std::nullopt;
  }
  if (c.name() != d.name() || c.arity() != d.arity()) return std::nullopt;
  if (c == d) return c;
  std::vector<Term> args;
  args.reserve(c.arity());
  for (std::size_t i = 0; i < c.arity(); ++i) {
    auto m = merge_contexts(c.arg(i), d.arg(i));
    if (!m) return std::nullopt;
    args.push_back(std::move(*m));
  }
  return Term::function(c.name(), std::move(args));
}

bool context_leq(const Term& c, const Term& d) {
  if (c.is_hole()) return true;
  if (c.is_variable()) return c == d;
  if (!d.is_function() || d.is_hole() || c.name() != d.name() || c.arity() != d.arity()) {
    return false;
  }
  if (!c.has_holes()) return c == d;
  for (std::size_t i = 0; i < c.arity(); ++i) {
    if (!context_leq(c.arg(i), d.arg(i))) return false;
  }
  return true;
}

namespace {

Term fill_from(const Term& c, std::span<const Term> fillers, std::size_t& next) {
  if (c.is_hole()) return fillers[next++];
  if (!c.has_holes()) return c;
  std::vector<Term> args;
  args.reserve(c.arity());
  for (const Term& a : c.args()) args.push_back(fill_from(a, fillers, next));
  return Term::function(c.name(), std::move(args));
}

void split_into(const Term& c, const Term& t, std::vector<Term>& out) {
  if (c.is_hole()) {
    out.push_back(t);
    return;
  }
  if (!c.has_holes()) return;
  for (std::size_t i = 0; i < c.arity(); ++i) split_into(c.arg(i), t.arg(i), out);
}

}  // namespace

Term fill_holes(const Term& c, std::span<const Term> fillers) {
  if (c.hole_count() != fillers.size()) {
    throw ArityError("context " + c.to_string() + " has " + std::to_string(c.hole_count()) +
                     " holes but " + std::to_string(fillers.size()) + " fillers were given");
  }
  std::size_t next = 0;
  return fill_from(c, fillers, next);
}

std::vector<Term> split_at_holes(const Term& c, const Term& t) {
  if (!context_leq(c, t)) {
    throw Error("context " + c.to_string() + " is not a prefix of " + t.to_string());
  }
  std::vector<Term> out;
  split_into(c, t, out);
  return out;
}

Term holeify(const Term& c) {
  if (c.is_variable()) return Term::hole();
  if (c.is_ground()) return c;
  std::vector<Term> args;
  args.reserve(c.arity());
  for (const Term& a : c.args()) args.push_back(holeify(a));
  return Term::function(c.name(), std::move(args));
}

namespace {

void steps_at(const Trs& trs, const Term& root, const Term& sub, Position& pos, std::vector<Step>& out) {
  if (sub.is_variable()) return;
  for (std::size_t r = 0; r < trs.size(); ++r) {
    const Rule& rule = trs.rule(r);
    if (rule.lhs().name() != sub.name() || rule.lhs().arity() != sub.arity()) continue;
    if (auto sigma = match(rule.lhs(), sub)) {
      out.push_back({pos, r, replace_at(root, pos, sigma->apply(rule.rhs()))});
    }
  }
  for (std::size_t i = 0; i < sub.arity(); ++i) {
    pos.push_back(static_cast<unsigned>(i + 1));
    steps_at(trs, root, sub.arg(i), pos, out);
    pos.pop_back();
  }
}

bool has_redex(const Trs& trs, const Term& t) {
  if (t.is_variable()) return false;
  for (const Rule& rule : trs.rules()) {
    if (rule.lhs().name() == t.name() && rule.lhs().arity() == t.arity() && match(rule.lhs(), t)) {
      return true;
    }
  }
  for (const Term& a : t.args()) {
    if (has_redex(trs, a)) return true;
  }
  return false;
}

}  // namespace

std::vector<Step> rewrite_steps(const Trs& trs, const Term& t) {
  std::vector<Step> out;
  Position pos;
  steps_at(trs, t, t, pos, out);
  return out;
}

bool is_normal_form(const Trs& trs, const Term& t) { return !has_redex(trs, t); }

bool replay(const Trs& trs, const Term& start, std::span<const Step> steps) {
  Term cur = start;
  for (const Step& s : steps) {
    if (s.rule >= trs.size() || !is_valid_position(cur, s.position)) return false;
    const Rule& rule = trs.rule(s.rule);
    auto sigma = match(rule.lhs(), subterm_at(cur, s.position));
    if (!sigma) return false;
    Term next = replace_at(cur, s.position, sigma->apply(rule.rhs()));
    if (next != s.result) return false;
    cur = std::move(next);
  }
  return true;
}

ReachTree::ReachTree(const Trs& trs, const Term& root, unsigned depth, std::size_t max_terms) {
  nodes_.push_back({root, 0, std::nullopt});
  index_.emplace(root, 0);
  std::size_t level_begin = 0;
  for (unsigned d = 0;; ++d) {
    std::size_t level_end = nodes_.size();
    if (level_begin == level_end) break;
    for (std::size_t i = level_begin; i < level_end; ++i) {
      // Copy: nodes_ may reallocate below.
      Term t = nodes_[i].term;
      if (d == depth) {
        if (is_normal_form(trs, t)) {
          normal_forms_.push_back(t);
        } else {
          complete_ = false;
        }
        continue;
      }
      auto steps = rewrite_steps(trs, t);
      if (steps.empty()) {
        normal_forms_.push_back(t);
        continue;
      }
      for (Step& s : steps) {
        if (index_.count(s.result)) continue;
        if (nodes_.size() >= max_terms) {
          complete_ = false;
          continue;
        }
        index_.emplace(s.result, nodes_.size());
        Term result = s.result;
        nodes_.push_back({std::move(result), i, std::move(s)});
      }
    }
    if (d == depth) break;
    level_begin = level_end;
  }
}

std::vector<Term> ReachTree::terms() const {
  std::vector<Term> out;
  out.reserve(nodes_.size());
  for (const auto& n : nodes_) out.push_back(n.term);
  return out;
}

Derivation ReachTree::derivation_to(const Term& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) throw Error("term " + t.to_string() + " not reached");
  std::vector<Step> steps;
  for (std::size_t i = it->second; i != 0; i = nodes_[i].parent) steps.push_back(*nodes_[i].via);
  std::reverse(steps.begin(), steps.end());
  return {root(), std::move(steps)};
}

NormalForms normal_forms(const Trs& trs, const Term& t, unsigned depth, std::size_t max_terms) {
  ReachTree tree(trs, t, depth, max_terms);
  NormalForms out;
  out.forms.insert(tree.normal_forms().begin(), tree.normal_forms().end());
  out.complete = tree.complete();
  return out;
}

std::optional<JoinWitness> join_search(const Trs& trs, const Term& t, const Term& u, unsigned depth,
                                       std::size_t max_terms) {
  if (t == u) return JoinWitness{{t, {}}, {u, {}}, t};
  ReachTree left(trs, t, depth, max_terms);
  ReachTree right(trs, u, depth, max_terms);
  for (const Term& v : left.terms()) {
    if (right.contains(v)) return JoinWitness{left.derivation_to(v), right.derivation_to(v), v};
  }
  return std::nullopt;
}

Term rename_apart(const Term& t, const std::set<std::string>& avoid, Substitution* renaming) {
  const auto vars = variables(t);
  std::set<std::string> taken(avoid.begin(), avoid.end());
  taken.insert(vars.begin(), vars.end());
  Substitution sigma;
  for (const auto& x : vars) {
    if (!avoid.count(x)) continue;
    std::string fresh = x + "'";
    while (taken.count(fresh)) fresh += "'";
    taken.insert(fresh);
    sigma.bind(x, Term::variable(fresh));
  }
  if (renaming) *renaming = sigma;
  return sigma.apply(t);
}

std::vector<CriticalPair> critical_pairs(const Trs& trs) {
  std::vector<CriticalPair> out;
  for (std::size_t i = 0; i < trs.size(); ++i) {
    const Rule& outer = trs.rule(i);
    auto outer_vars = variables(outer.lhs());
    std::set<std::string> avoid(outer_vars.begin(), outer_vars.end());
    for (std::size_t j = 0; j < trs.size(); ++j) {
      const Rule& inner = trs.rule(j);
      Substitution renaming;
      Term inner_lhs = rename_apart(inner.lhs(), avoid, &renaming);
      Term inner_rhs = renaming.apply(inner.rhs());
      for (const Position& p : function_positions(outer.lhs())) {
        if (i == j && p.empty()) continue;
        const Term& sub = subterm_at(outer.lhs(), p);
        if (sub.name() != inner_lhs.name() || sub.arity() != inner_lhs.arity()) continue;
        auto sigma = unify(sub, inner_lhs);
        if (!sigma) continue;
        Term peak = sigma->apply(outer.lhs());
        Term left = replace_at(peak, p, sigma->apply(inner_rhs));
        Term right = sigma->apply(outer.rhs());
        out.push_back({std::move(peak), std::move(left), std::move(right), p, i, j});
      }
    }
  }
  return out;
}

RuleFlags rule_flags(const Rule& rule) {
  RuleFlags f{};
  f.left_linear = is_linear(rule.lhs());
  f.duplicating = false;
  for (const auto& x : variables(rule.rhs())) {
    if (variable_occurrences(rule.lhs(), x) < variable_occurrences(rule.rhs(), x)) {
      f.duplicating = true;
      break;
    }
  }
  f.collapsing = rule.rhs().is_variable();
  f.ground = rule.lhs().is_ground() && rule.rhs().is_ground();
  return f;
}

TrsProperties rule_properties(const Trs& trs) {
  TrsProperties p;
  for (const Rule& r : trs.rules()) {
    RuleFlags f = rule_flags(r);
    p.left_linear = p.left_linear && f.left_linear;
    p.non_duplicating = p.non_duplicating && !f.duplicating;
    p.has_collapsing = p.has_collapsing || f.collapsing;
    p.ground = p.ground && f.ground;
    p.rules.push_back(f);
  }
  return p;
}

}  // namespace confdec
