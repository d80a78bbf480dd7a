#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace confdec {

/// Name of the reserved nullary hole symbol. Never part of a user signature.
inline constexpr std::string_view kHole = "\xE2\x96\xA1";  // U+25A1
/// Binary application symbol introduced by currying.
inline constexpr std::string_view kApplication = "@";
/// Fresh unary marker of the bounded-duplication check.
inline constexpr std::string_view kDiamond = "\xE2\x97\x87";  // U+25C7

/// Immutable first-order term with shared structure. Contexts are terms that
/// may contain the hole constant.
class Term {
 public:
  enum class Kind : unsigned char { Variable, Function };

  static Term variable(std::string name);
  static Term function(std::string name, std::vector<Term> args = {});
  static Term hole();

  Kind kind() const { return node_->kind; }
  bool is_variable() const { return node_->kind == Kind::Variable; }
  bool is_function() const { return node_->kind == Kind::Function; }
  bool is_hole() const;
  bool is_constant() const { return is_function() && node_->args.empty(); }

  const std::string& name() const { return node_->name; }
  std::size_t arity() const { return node_->args.size(); }
  std::span<const Term> args() const { return node_->args; }
  /// 0-based child access.
  const Term& arg(std::size_t i) const { return node_->args.at(i); }

  /// Number of symbol occurrences (variables and holes included).
  std::size_t size() const { return node_->size; }
  std::size_t hash() const { return node_->hash; }
  std::size_t hole_count() const { return node_->holes; }
  bool has_holes() const { return node_->holes > 0; }
  bool is_ground() const { return node_->variables == 0; }

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }
  /// Total order: by size, then structurally. Used for deterministic output.
  bool operator<(const Term& other) const;

  std::string to_string() const;

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Term> args;
    std::size_t hash;
    std::size_t size;
    std::size_t holes;
    std::size_t variables;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static int compare(const Term& a, const Term& b);

  std::shared_ptr<const Node> node_;
};

std::ostream& operator<<(std::ostream& os, const Term& t);

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// Sequence of 1-based argument indices; empty is the root.
using Position = std::vector<unsigned>;

std::string to_string(const Position& p);
bool is_prefix(const Position& p, const Position& q);

/// All positions in pre-order (which is the lexicographic order).
std::vector<Position> positions(const Term& t);
std::vector<Position> function_positions(const Term& t);  // excludes holes
std::vector<Position> hole_positions(const Term& t);
bool is_valid_position(const Term& t, const Position& p);
const Term& subterm_at(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& s);

/// Variable names in order of first occurrence (left to right).
std::vector<std::string> variables(const Term& t);
std::size_t variable_occurrences(const Term& t, const std::string& name);
bool is_linear(const Term& t);
/// Function symbol names (hole excluded) in order of first occurrence.
std::vector<std::string> function_symbols(const Term& t);

/// Finite map from variable names to terms.
class Substitution {
 public:
  Substitution() = default;

  void bind(const std::string& var, Term t);
  const Term* lookup(const std::string& var) const;
  bool contains(const std::string& var) const { return map_.count(var) != 0; }
  std::size_t size() const { return map_.size(); }
  const std::map<std::string, Term>& bindings() const { return map_; }

  Term apply(const Term& t) const;

  bool operator==(const Substitution& other) const { return map_ == other.map_; }
  std::string to_string() const;

 private:
  std::map<std::string, Term> map_;
};

struct Symbol {
  std::string name;
  std::size_t arity;

  bool operator==(const Symbol&) const = default;
};

/// Symbols with fixed arities, kept in insertion order.
class Signature {
 public:
  Signature() = default;
  Signature(std::initializer_list<Symbol> symbols);

  /// Adds a symbol; re-adding with the same arity is a no-op.
  /// Throws ArityError when the arity differs from an earlier declaration.
  void add(const std::string& name, std::size_t arity);
  void add_all(const Term& t);
  void merge(const Signature& other);

  bool contains(const std::string& name) const { return index_.count(name) != 0; }
  std::optional<std::size_t> arity(const std::string& name) const;
  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }

  bool operator==(const Signature& other) const { return symbols_ == other.symbols_; }

 private:
  std::vector<Symbol> symbols_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Rewrite rule. Construction enforces the standard variable conditions.
class Rule {
 public:
  /// Throws RuleError if lhs is a variable, contains a hole, or if rhs has
  /// variables not in lhs.
  Rule(Term lhs, Term rhs);

  const Term& lhs() const { return lhs_; }
  const Term& rhs() const { return rhs_; }

  bool operator==(const Rule& other) const { return lhs_ == other.lhs_ && rhs_ == other.rhs_; }
  std::string to_string() const;

 private:
  Term lhs_;
  Term rhs_;
};

/// Term rewrite system. Rule order is the canonical report order.
class Trs {
 public:
  Trs() = default;
  /// Signature is collected from the rules.
  explicit Trs(std::vector<Rule> rules);
  /// Throws ArityError if a rule uses a symbol inconsistently with `signature`.
  Trs(Signature signature, std::vector<Rule> rules);

  const Signature& signature() const { return signature_; }
  const std::vector<Rule>& rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }
  bool empty() const { return rules_.empty(); }
  const Rule& rule(std::size_t i) const { return rules_.at(i); }

  /// Sub-system with the given rules; signature restricted to their symbols.
  Trs subset(std::span<const std::size_t> indices) const;

  bool operator==(const Trs& other) const { return rules_ == other.rules_; }

 private:
  Signature signature_;
  std::vector<Rule> rules_;
};

/// Renames variables to x1, x2, ... in order of first occurrence.
Term canonical_variables(const Term& t);
/// Rule variant equality (equal up to a consistent variable renaming).
bool is_variant(const Rule& a, const Rule& b);

}  // namespace confdec

template <>
struct std::hash<confdec::Term> {
  std::size_t operator()(const confdec::Term& t) const { return t.hash(); }
};
