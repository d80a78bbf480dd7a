#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "confdec/term.hpp"

namespace confdec {

using Sort = std::string;

/// Strict partial order ≻ on sorts.
class Precedence {
 public:
  /// Adds a ≻ b. Throws Error if this creates a cycle.
  void add(const Sort& a, const Sort& b);
  /// a ≻ b (transitively).
  bool greater(const Sort& a, const Sort& b) const;
  /// a ⪰ b.
  bool geq(const Sort& a, const Sort& b) const { return a == b || greater(a, b); }
  bool empty() const { return edges_.empty(); }
  /// The generating pairs, in insertion order.
  const std::vector<std::pair<Sort, Sort>>& pairs() const { return edges_; }

 private:
  std::vector<std::pair<Sort, Sort>> edges_;
  std::map<Sort, std::set<Sort>> above_;  // a -> {b | a ≻ b}, transitively closed
};

struct SymbolType {
  std::vector<Sort> args;
  Sort result;

  bool operator==(const SymbolType&) const = default;
};

/// Typings of function symbols and variables over a set of sorts.
///
/// Rule variables may be scoped per rule as `x#k` (k the 1-based rule index);
/// lookups for a rule try the scoped name first, then the plain name.
class SortAttachment {
 public:
  void declare_sort(const Sort& s);
  void set_function(const std::string& f, SymbolType type);
  void set_variable(const std::string& x, const Sort& s);
  void add_precedence(const Sort& a, const Sort& b);

  const SymbolType* function(const std::string& f) const;
  std::optional<Sort> variable(const std::string& x, std::optional<std::size_t> rule = {}) const;

  const std::vector<Sort>& sorts() const { return sorts_; }
  const std::vector<std::pair<std::string, SymbolType>>& functions() const { return functions_; }
  const std::vector<std::pair<std::string, Sort>>& variables() const { return variables_; }
  const Precedence& precedence() const { return precedence_; }

  bool maximal(const Sort& s) const;

 private:
  std::vector<Sort> sorts_;
  std::vector<std::pair<std::string, SymbolType>> functions_;
  std::vector<std::pair<std::string, Sort>> variables_;
  std::map<std::string, std::size_t> function_index_;
  std::map<std::string, std::size_t> variable_index_;
  Precedence precedence_;
};

/// Name of the rule-scoped variable `x#k`.
std::string scoped_variable(const std::string& x, std::size_t rule);

/// The unique sort of t, or nothing if t is not order-sorted. With an empty
/// precedence this is many-sorted typing. `rule` selects the variable scope.
std::optional<Sort> sort_of(const SortAttachment& s, const Term& t, std::optional<std::size_t> rule = {});
bool strictly_order_sorted(const SortAttachment& s, const Term& t, std::optional<std::size_t> rule = {});

enum class CompatibilityMode { Compatible, Strong, Star };

std::string to_string(CompatibilityMode m);

struct RuleDiagnostic {
  std::size_t rule;
  bool ok;
  std::string message;
};

struct CompatibilityReport {
  bool ok = true;
  std::vector<RuleDiagnostic> rules;
};

/// Throws UntypedSymbolError when a rule symbol or variable has no typing.
CompatibilityReport check_compatibility(const Trs& trs, const SortAttachment& s, CompatibilityMode mode);

/// Most general many-sorted attachment (finest partition closed under the
/// forced equalities). Sorts are named 0, 1, ... in order of first appearance.
SortAttachment infer_many_sorted(const Trs& trs);

/// Heuristic order-sorted attachment, verified before it is returned.
std::optional<SortAttachment> infer_order_sorted(const Trs& trs, bool strong);

/// Lines `f : a1 x ... x an -> a`, `c : -> a`, `x : a`, `PREC a > b`.
std::string print_attachment(const SortAttachment& s);
/// Parses the format of print_attachment. Blank lines and `#` comments are
/// skipped. Throws ParseError.
SortAttachment parse_attachment(std::string_view text);

}  // namespace confdec
