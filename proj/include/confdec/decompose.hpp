#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "confdec/analysis.hpp"
#include "confdec/sorts.hpp"
#include "confdec/term.hpp"

namespace confdec {

struct Component {
  std::string label;
  std::vector<std::size_t> rules;  // indices into the decomposed TRS, ascending
  Trs system;
};

struct ComponentSet {
  std::string technique;
  std::vector<Component> components;

  /// True when there are at least two components and none contains every
  /// rule, so the decomposition actually reduces the problem.
  bool proper(std::size_t total_rules) const;
};

/// Connected components of the "shares a function symbol" relation on rules,
/// ordered by their first rule.
ComponentSet modular_split(const Trs& trs);

/// The distinct non-empty R_α, where R_α holds the rules whose left-hand side
/// sort β satisfies α ⊵ β. Throws IncompatibleAttachmentError unless R is
/// compatible with the attachment.
ComponentSet sort_components(const Trs& trs, const SortAttachment& s);

/// α ⊵ β: reflexive-transitive closure of ≻ and result-to-argument edges.
bool sort_dominates(const SortAttachment& s, const Sort& alpha, const Sort& beta);

enum class License { LeftLinear, BoundedDuplicating, StronglyCompatible };

std::string to_string(License l);
std::optional<License> parse_license(std::string_view text);

struct LicenseResult {
  License license;
  std::optional<BoundedDuplicationCertificate> bounded_duplication;
};

/// The first license among `allowed` (in the order left-linear, bounded
/// duplicating, strongly compatible) that holds. Never consults the
/// compatible★ condition.
std::optional<LicenseResult> persistence_license(const Trs& trs, const SortAttachment& s,
                                                 const std::set<License>& allowed = {License::LeftLinear,
                                                                                     License::BoundedDuplicating,
                                                                                     License::StronglyCompatible},
                                                 long coeff_bound = 3);

// Two-system splits ---------------------------------------------------------------

/// Symbols exclusive to each side; every other symbol is shared.
struct Partition {
  std::set<std::string> only1;
  std::set<std::string> only2;
};

/// Lines `F1: f g` and `F2: h`; `#` starts a comment. Throws ParseError.
Partition parse_partition(std::string_view text);

struct CheckItem {
  std::string condition;
  std::optional<std::size_t> rule;  // index into the checked system
  bool pass;
  std::string detail;
};

struct SplitCertificate {
  std::string theorem;
  std::set<std::string> shared;
  std::set<std::string> only1;
  std::set<std::string> only2;
  std::vector<CheckItem> checks;

  bool pass() const;
};

/// R1 = rules over F1 = only1 ∪ B, R2 = rules over F2 = only2 ∪ B (rules over
/// B alone go to both). Rules over neither side are returned in `stray`.
struct TwoSystems {
  Trs r1;
  Trs r2;
  std::vector<std::size_t> indices1;
  std::vector<std::size_t> indices2;
  std::vector<std::size_t> stray;
};
TwoSystems split_by_partition(const Trs& trs, const Partition& p);

/// Layer-preservation conditions for R1 over F1 and R2 over F2.
SplitCertificate layer_preserving_check(const Trs& r1, const Trs& r2, const std::set<std::string>& f1,
                                        const std::set<std::string>& f2);

/// Quasi-ground conditions for R1 over F1 and R2 over F2.
SplitCertificate quasi_ground_check(const Trs& r1, const Trs& r2, const std::set<std::string>& f1,
                                    const std::set<std::string>& f2);

nlohmann::ordered_json to_json(const SplitCertificate& c);

}  // namespace confdec
