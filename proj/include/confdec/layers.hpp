#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "confdec/sorts.hpp"
#include "confdec/term.hpp"

namespace confdec {

/// A layer system, given intensionally by a membership test and a direct
/// max-top algorithm. Every built-in scheme contains all of V and the hole.
class LayerScheme {
 public:
  virtual ~LayerScheme() = default;

  virtual std::string descriptor() const = 0;
  virtual bool contains(const Term& c) const = 0;
  /// The max-top of a non-empty term or context. Throws NoTopError.
  virtual Term max_top_direct(const Term& t) const = 0;
  /// Symbols used when enumerating terms for this scheme.
  virtual Signature signature() const = 0;
};

/// C(F1,V) ∪ C(F2,V) for disjoint F1, F2.
class DisjointScheme : public LayerScheme {
 public:
  /// `signature` fixes the arities; every symbol must be in exactly one part.
  DisjointScheme(Signature signature, std::set<std::string> f1, std::set<std::string> f2);

  std::string descriptor() const override { return "disjoint"; }
  bool contains(const Term& c) const override;
  Term max_top_direct(const Term& t) const override;
  Signature signature() const override { return signature_; }

  /// 1 or 2, or 0 for symbols in neither part.
  int color(const std::string& symbol) const;

 private:
  Term monochromatic_prefix(const Term& t, int color) const;

  Signature signature_;
  std::set<std::string> f1_;
  std::set<std::string> f2_;
};

/// Order-sorted (or many-sorted) contexts.
///
/// Unrestricted mode closes the sorted terms under exchanging variables and
/// holes, so both act as wildcards. Variable-restricted mode keeps variable
/// sorts and gives holes a fresh minimum sort.
class SortScheme : public LayerScheme {
 public:
  enum class Mode { Unrestricted, VariableRestricted };

  SortScheme(SortAttachment attachment, Mode mode = Mode::Unrestricted);

  std::string descriptor() const override;
  bool contains(const Term& c) const override;
  Term max_top_direct(const Term& t) const override;
  Signature signature() const override;

  const SortAttachment& attachment() const { return attachment_; }

 private:
  bool fits(const Term& child, const Sort& expected) const;
  Term prefix(const Term& t) const;

  SortAttachment attachment_;
  Mode mode_;
};

/// Layers of the partial parametrization of a TRS over `original`:
/// L1 = contexts whose U-normal form has no application symbol,
/// L2 = { @(v, L) | v ∈ V ∪ {□}, L ∈ L1 }.
class CurryScheme : public LayerScheme {
 public:
  explicit CurryScheme(Signature original);

  std::string descriptor() const override { return "curry"; }
  bool contains(const Term& c) const override;
  Term max_top_direct(const Term& t) const override;
  Signature signature() const override;

  bool in_l1(const Term& c) const;
  /// Largest prefix of t in L1 (possibly the hole).
  Term max_l1(const Term& t) const;

 private:
  Signature original_;
};

/// Finite pattern list; `_` is a slot standing for any single variable or the
/// hole, independently at each occurrence.
class PatternScheme : public LayerScheme {
 public:
  explicit PatternScheme(std::vector<Term> patterns);

  std::string descriptor() const override { return "patterns"; }
  bool contains(const Term& c) const override;
  Term max_top_direct(const Term& t) const override;
  Signature signature() const override;

  const std::vector<Term>& patterns() const { return patterns_; }

 private:
  std::vector<Term> patterns_;
};

inline constexpr std::string_view kSlot = "_";

/// Reads one pattern per line (COPS term syntax, `_` is the slot). Blank lines
/// and lines starting with `#` are skipped.
PatternScheme parse_patterns(std::string_view text);

// Max-tops, ranks, aliens ---------------------------------------------------------

/// Throws NoTopError for the hole or when the scheme has no non-empty top.
Term max_top(const LayerScheme& scheme, const Term& t);

/// Definitional max-top: enumerates every prefix of t, keeps the layers and
/// returns the unique maximal one. Throws NoTopError, NonUniqueTopError, or
/// OracleBoundError when t has more than `size_bound` nodes.
Term max_top_oracle(const LayerScheme& scheme, const Term& t, std::size_t size_bound = 40);

struct RankedAliens {
  std::size_t rank;
  Term max_top;
  std::vector<Term> aliens;  // left to right
};

/// Ranks of subterms are memoized per call. Holes count as rank 0.
RankedAliens rank_and_aliens(const LayerScheme& scheme, const Term& t);
std::size_t rank(const LayerScheme& scheme, const Term& t);

struct BaseDecomposition {
  std::size_t r;
  Term base;
  std::vector<Term> tall_aliens;
};

/// Replaces the aliens of rank exactly r by holes. Throws RankExceededError
/// when rank(t) > r + 1.
BaseDecomposition base_decompose(const LayerScheme& scheme, const Term& t, std::size_t r);

/// Number of distinct elements.
std::size_t imbalance(const std::vector<Term>& ts);
/// s ∝ t: s_i = s_j implies t_i = t_j. Throws LengthMismatchError.
bool proportional(const std::vector<Term>& s, const std::vector<Term>& t);

// Bounded enumeration ---------------------------------------------------------------

/// All terms with at most `max_size` nodes over `signature` and `variables`,
/// plus the hole as a leaf when `with_hole`. Ordered by size, then by
/// construction order.
std::vector<Term> enumerate_terms(const Signature& signature, const std::vector<std::string>& variables,
                                  std::size_t max_size, bool with_hole);

// Condition falsifier -----------------------------------------------------------------

enum class Condition { L1, L2, L3, W, C1, C2 };

std::string to_string(Condition c);

struct Violation {
  Condition condition;
  /// L1: {t}; L2: {C}; L3: {L, N}; C2: {L, N}; W and C1: {s, M}.
  std::vector<Term> witnesses;
  Position position;
  std::optional<std::size_t> rule;
  std::string detail;
};

struct FalsifyOptions {
  std::size_t size_bound = 5;
  std::vector<std::string> variables = {"x", "y", "z"};
  /// Upper bound on checked instances per condition.
  std::size_t cap = 2'000'000;
};

/// Searches counterexamples to L1, L2, L3, W, C1 and C2 among terms and
/// contexts with at most `size_bound` nodes. An empty result means that no
/// violation exists up to the bound. At most one violation is reported per
/// condition.
std::vector<Violation> falsify_conditions(const LayerScheme& scheme, const Trs& trs,
                                          const FalsifyOptions& options = {});

/// Re-evaluates the violated condition on the recorded witness.
bool verify_violation(const LayerScheme& scheme, const Trs& trs, const Violation& v);

}  // namespace confdec
