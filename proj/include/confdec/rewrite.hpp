#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "confdec/term.hpp"

namespace confdec {

/// Syntactic matching: σ with pattern·σ = subject. Holes in the subject behave
/// like an ordinary constant.
std::optional<Substitution> match(const Term& pattern, const Term& subject);

/// Most general unifier (idempotent), with occurs check.
std::optional<Substitution> unify(const Term& s, const Term& t);

// Contexts ------------------------------------------------------------------

/// Least upper bound of two contexts under ⊑, if one exists.
std::optional<Term> merge_contexts(const Term& c, const Term& d);
/// C ⊑ D: D is obtained from C by filling some holes.
bool context_leq(const Term& c, const Term& d);
/// Replaces holes left to right. Throws ArityError on a count mismatch.
Term fill_holes(const Term& c, std::span<const Term> fillers);
/// Subterms of t at the hole positions of c, left to right. Requires c ⊑ t.
std::vector<Term> split_at_holes(const Term& c, const Term& t);
/// Replaces every variable occurrence by a hole.
Term holeify(const Term& c);

// Rewriting -----------------------------------------------------------------

struct Step {
  Position position;
  std::size_t rule;  // index into the TRS
  Term result;

  bool operator==(const Step&) const = default;
};

/// All one-step reducts, ordered by position (pre-order) then rule order.
std::vector<Step> rewrite_steps(const Trs& trs, const Term& t);
bool is_normal_form(const Trs& trs, const Term& t);

/// Checks that `steps` is a valid rewrite sequence starting at `start`.
bool replay(const Trs& trs, const Term& start, std::span<const Step> steps);

struct ReachBudget {
  unsigned depth = 8;
  std::size_t max_terms = 200000;
};

struct NormalForms {
  std::set<Term> forms;
  bool complete = true;  // false if some branch was cut by a bound
};

/// Normal forms reachable within `depth` steps (breadth first).
NormalForms normal_forms(const Trs& trs, const Term& t, unsigned depth,
                         std::size_t max_terms = ReachBudget{}.max_terms);

/// A path from a root term, reconstructed from a breadth-first search.
struct Derivation {
  Term start;
  std::vector<Step> steps;

  const Term& end() const { return steps.empty() ? start : steps.back().result; }
};

struct JoinWitness {
  Derivation left;
  Derivation right;
  Term meet;
};

/// Searches a common reduct of t and u, each side using at most `depth` steps.
std::optional<JoinWitness> join_search(const Trs& trs, const Term& t, const Term& u, unsigned depth,
                                       std::size_t max_terms = ReachBudget{}.max_terms);

/// Breadth-first reachability tree from a term. Exposes derivations to every
/// visited term.
class ReachTree {
 public:
  ReachTree(const Trs& trs, const Term& root, unsigned depth, std::size_t max_terms);

  const Term& root() const { return nodes_.front().term; }
  /// Visited terms in breadth-first order.
  std::vector<Term> terms() const;
  bool contains(const Term& t) const { return index_.count(t) != 0; }
  Derivation derivation_to(const Term& t) const;
  /// Normal forms among the visited terms, in visit order.
  const std::vector<Term>& normal_forms() const { return normal_forms_; }
  bool complete() const { return complete_; }

 private:
  struct NodeInfo {
    Term term;
    std::size_t parent;
    std::optional<Step> via;
  };
  std::vector<NodeInfo> nodes_;
  std::unordered_map<Term, std::size_t, TermHash> index_;
  std::vector<Term> normal_forms_;
  bool complete_ = true;
};

// Critical pairs ---------------------------------------------------------------

struct CriticalPair {
  Term peak;
  Term left;   // reduct by the inner rule at `position`
  Term right;  // reduct by the outer rule at the root
  Position position;
  std::size_t outer_rule;
  std::size_t inner_rule;
};

/// Renames the variables of `t` apart from `avoid` by appending primes.
Term rename_apart(const Term& t, const std::set<std::string>& avoid, Substitution* renaming = nullptr);

/// Standard critical pairs of all rule pairs, excluding root self-overlaps.
/// Order: outer rule, inner rule, position.
std::vector<CriticalPair> critical_pairs(const Trs& trs);

// Syntactic properties ------------------------------------------------------

struct RuleFlags {
  bool left_linear;
  bool duplicating;
  bool collapsing;
  bool ground;
};

struct TrsProperties {
  std::vector<RuleFlags> rules;
  bool left_linear = true;
  bool non_duplicating = true;
  bool has_collapsing = false;
  bool ground = true;
};

RuleFlags rule_flags(const Rule& rule);
TrsProperties rule_properties(const Trs& trs);

}  // namespace confdec
