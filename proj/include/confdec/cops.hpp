#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "confdec/term.hpp"

namespace confdec {

/// Reader/writer for the COPS `(VAR ...) (RULES ...)` problem format.
///
///   file ::= decl+
///   decl ::= "(VAR" ident* ")" | "(RULES" rule* ")" | "(COMMENT" any ")"
///   rule ::= term "->" term
///   term ::= ident | ident "(" term ("," term)* ")"
///
/// Identifiers are maximal runs without whitespace, parentheses and commas;
/// `->` always separates. Arities are fixed by first use.
struct ProblemFile {
  std::string source;
  Trs trs;
  std::vector<std::string> variables;  // as declared
  std::string comment;                 // concatenated COMMENT bodies
  /// Body of a `%sorts ... %end` block inside a COMMENT, if present.
  std::optional<std::string> attachment_text;
};

struct ParseOptions {
  /// Accept the names used by the currying transformation (`@`, `f^i`) and
  /// by the bounded-duplication check.
  bool allow_reserved = false;
};

bool is_reserved_name(std::string_view name);

/// Throws ParseError with line/column information.
ProblemFile parse_problem(std::string_view text, std::string source = "<input>",
                          ParseOptions options = {});
Trs parse_trs(std::string_view text, ParseOptions options = {});

using VariablePredicate = std::function<bool(const std::string&)>;

/// Parses a single term; identifiers satisfying `is_variable` become variables.
/// The hole may be written as `□`.
Term parse_term(std::string_view text, const VariablePredicate& is_variable);
Term parse_term(std::string_view text, const std::set<std::string>& variables);
Rule parse_rule(std::string_view text, const std::set<std::string>& variables);

/// Variables of the TRS in order of first occurrence.
std::vector<std::string> trs_variables(const Trs& trs);
/// Predicate accepting the TRS variables and their primed renamings.
VariablePredicate variable_predicate(const Trs& trs);

/// Canonical rendering; parse_trs(print_trs(R)) reproduces the rules of R.
std::string print_trs(const Trs& trs);

}  // namespace confdec
