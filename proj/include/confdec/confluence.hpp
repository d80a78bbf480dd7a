#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "confdec/analysis.hpp"
#include "confdec/decompose.hpp"
#include "confdec/rewrite.hpp"
#include "confdec/sorts.hpp"
#include "confdec/term.hpp"

namespace confdec {

enum class Answer { Yes, No, Maybe };

std::string to_string(Answer a);

/// t ←* seed →* u with t, u distinct normal forms.
struct PeakWitness {
  Term seed;
  Derivation left;
  Derivation right;
};

/// Replays both derivations and checks that the endpoints are distinct
/// normal forms of `trs`.
bool verify_witness(const Trs& trs, const PeakWitness& w);

struct JoinedPair {
  CriticalPair pair;
  JoinWitness join;
};

/// One step of a proof. Leaves are direct proofs or witnesses; inner nodes are
/// decompositions whose children prove the components.
struct ProofNode {
  std::string technique;
  Answer answer = Answer::Maybe;
  Trs system;
  nlohmann::ordered_json certificate = nlohmann::ordered_json::object();
  std::vector<ProofNode> children;

  // Typed evidence, re-checked by verify_trace.
  std::optional<PeakWitness> witness;
  std::optional<SymbolPrecedence> lpo;
  std::optional<PolyInterpretation> poly;
  std::vector<JoinedPair> joins;
  std::optional<ComponentSet> components;
  std::optional<SortAttachment> attachment;
  std::optional<LicenseResult> license;
  std::optional<SplitCertificate> split;
};

struct Verdict {
  Answer answer = Answer::Maybe;
  ProofNode trace;
};

enum class Method { Auto, Direct, Modular, PersistMs, PersistOs, LayerPreserving, QuasiGround };

std::string to_string(Method m);
std::optional<Method> parse_method(std::string_view text);

struct DecideOptions {
  unsigned join_depth = 8;
  unsigned peak_depth = 6;
  std::size_t seed_size = 5;
  long coeff_bound = 3;
  unsigned recursion_depth = 4;
  std::size_t reach_terms = 20000;  // per reachability search
  Method method = Method::Auto;
  std::optional<Partition> partition;
  std::set<License> licenses{License::LeftLinear, License::BoundedDuplicating, License::StronglyCompatible};
  /// Used instead of inference by the order-sorted step when present.
  std::optional<SortAttachment> attachment;
};

/// YES iff left-linear without critical pairs.
ProofNode prove_orthogonal(const Trs& trs);
/// YES iff termination is shown (LPO, else linear polynomials) and every
/// critical pair joins within the join depth.
ProofNode prove_knuth_bendix(const Trs& trs, const DecideOptions& options = {});
/// Searches peaks between distinct normal forms from small seed terms.
ProofNode find_non_confluence(const Trs& trs, const DecideOptions& options = {});

Verdict decide(const Trs& trs, const DecideOptions& options = {});

/// Decides R and transfers the verdict along R ⇒ PP(R) ⇒ Cu(R).
Verdict decide_curried(const Trs& trs, const DecideOptions& options = {});

/// Re-checks every node of the trace independently. On failure, `reason`
/// names the offending node.
bool verify_trace(const ProofNode& node, std::string* reason = nullptr);

}  // namespace confdec
