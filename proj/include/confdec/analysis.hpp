#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "confdec/term.hpp"

namespace confdec {

/// c1*x1 + ... + cn*xn + c0 over the naturals.
struct LinearPoly {
  std::vector<long> coefficients;
  long constant = 0;

  bool operator==(const LinearPoly&) const = default;
};

/// Linear polynomial interpretation of function symbols.
class PolyInterpretation {
 public:
  void set(const std::string& f, LinearPoly p) { table_[f] = std::move(p); }
  const LinearPoly* get(const std::string& f) const;
  const std::map<std::string, LinearPoly>& table() const { return table_; }

  /// Interpretation of t as a linear polynomial in its variables.
  /// Symbols without an entry throw Error.
  struct Value {
    std::map<std::string, long> coefficients;
    long constant = 0;
  };
  Value evaluate(const Term& t) const;

  std::string to_string() const;

 private:
  std::map<std::string, LinearPoly> table_;
};

/// Independent check: argument coefficients ≥ 1; strict rules decrease
/// coefficientwise with constant difference ≥ 1; weak rules do not increase.
bool verify_interpretation(const PolyInterpretation& p, const Trs& strict, const Trs& weak,
                           std::string* reason = nullptr);

/// Exhaustive search with argument coefficients in [1, bound] and constants in
/// [0, bound]. Absence is not a refutation.
std::optional<PolyInterpretation> search_linear_poly(const Trs& strict, const Trs& weak, long bound,
                                                     std::size_t node_budget = 5'000'000);

struct BoundedDuplicationCertificate {
  enum class Method { NonDuplicating, Polynomial };
  Method method;
  std::optional<PolyInterpretation> interpretation;  // Polynomial only
};

/// The rule ◇(x) -> x.
Rule diamond_rule();

/// Throws SignatureCollisionError if ◇ is already a symbol of R.
std::optional<BoundedDuplicationCertificate> prove_bounded_duplicating(const Trs& trs, long bound = 3);
bool verify_bounded_duplicating(const Trs& trs, const BoundedDuplicationCertificate& c);

/// Strict partial order on function symbols.
class SymbolPrecedence {
 public:
  /// Adds f > g; returns false (and leaves the order unchanged) if that
  /// would create a cycle.
  bool add(const std::string& f, const std::string& g);
  bool greater(const std::string& f, const std::string& g) const;
  /// Generating pairs in insertion order.
  const std::vector<std::pair<std::string, std::string>>& pairs() const { return pairs_; }

 private:
  std::vector<std::pair<std::string, std::string>> pairs_;
};

/// s >lpo t under a fixed precedence.
bool lpo_greater(const Term& s, const Term& t, const SymbolPrecedence& prec);

/// Backtracking search for a precedence orienting every rule.
std::optional<SymbolPrecedence> lpo_termination(const Trs& trs, std::size_t node_budget = 2'000'000);

}  // namespace confdec
