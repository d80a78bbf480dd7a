#pragma once

// Slow, definitional re-implementations used to cross-check the library.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "confdec/sorts.hpp"
#include "confdec/term.hpp"

namespace oracle {

using confdec::Position;
using confdec::Term;
using confdec::Trs;
using Env = std::map<std::string, Term>;

std::vector<Position> positions(const Term& t);
const Term& at(const Term& t, const Position& p);
Term replace(const Term& t, const Position& p, const Term& s);
Term apply(const Env& env, const Term& t);

bool match(const Term& pattern, const Term& subject, Env& env);

struct Step {
  Position position;
  std::size_t rule;
  Term result;
};
/// Positions × rules × match, in that nesting order.
std::vector<Step> steps(const Trs& trs, const Term& t);

/// Robinson unification on an explicit equation list.
std::optional<Env> unify(const Term& s, const Term& t);

/// C ⊑ D by structural recursion.
bool leq(const Term& c, const Term& d);

/// Connected components of the symbol-sharing relation, by transitive closure
/// of the rule adjacency matrix.
std::vector<std::vector<std::size_t>> components(const Trs& trs);

/// (outer, inner, position, canonical peak/left/right) for every overlap.
using PairKey = std::tuple<std::size_t, std::size_t, Position, Term>;
std::set<PairKey> critical_pairs(const Trs& trs);
/// Key of a library critical pair, for comparison with the set above.
PairKey key(std::size_t outer, std::size_t inner, const Position& p, const Term& peak, const Term& left,
            const Term& right);

/// α ⊵ β by Warshall closure.
bool dominates(const confdec::SortAttachment& s, const std::string& a, const std::string& b);

/// U-normal form by rewriting with the uncurrying rules until none applies.
Term u_normal_form(const confdec::Signature& original, const Term& t);

/// s >lpo t from the textbook definition, precedence closed by Warshall.
bool lpo(const Term& s, const Term& t, const std::vector<std::pair<std::string, std::string>>& precedence);

/// Coefficients of a linear interpretation: variable -> coefficient, "" -> constant.
using Poly = std::map<std::string, long>;
Poly interpret(const std::map<std::string, std::vector<long>>& table, const Term& t);
/// Absolute positiveness: lhs - rhs has non-negative coefficients, constant ≥ gap.
bool decreasing(const std::map<std::string, std::vector<long>>& table, const confdec::Rule& r, long gap);

}  // namespace oracle
