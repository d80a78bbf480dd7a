#include "confdec/confluence.hpp"

#include <algorithm>
#include <sstream>

#include "confdec/curry.hpp"
#include "confdec/error.hpp"
#include "confdec/layers.hpp"

namespace confdec {

using json = nlohmann::ordered_json;

std::string to_string(Answer a) {
  switch (a) {
    case Answer::Yes:
      return "YES";
    case Answer::No:
      return "NO";
    case Answer::Maybe:
      return "MAYBE";
  }
  return "?";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::Auto:
      return "auto";
    case Method::Direct:
      return "direct";
    case Method::Modular:
      return "modular";
    case Method::PersistMs:
      return "persist-ms";
    case Method::PersistOs:
      return "persist-os";
    case Method::LayerPreserving:
      return "layer-preserving";
    case Method::QuasiGround:
      return "quasi-ground";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view text) {
  for (Method m : {Method::Auto, Method::Direct, Method::Modular, Method::PersistMs, Method::PersistOs,
                   Method::LayerPreserving, Method::QuasiGround}) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

bool verify_witness(const Trs& trs, const PeakWitness& w) {
  if (w.left.start != w.seed || w.right.start != w.seed) return false;
  if (!replay(trs, w.seed, w.left.steps) || !replay(trs, w.seed, w.right.steps)) return false;
  const Term& t = w.left.end();
  const Term& u = w.right.end();
  return t != u && is_normal_form(trs, t) && is_normal_form(trs, u);
}

namespace {

json rules_json(const Trs& trs) {
  json out = json::array();
  for (const Rule& r : trs.rules()) out.push_back(r.to_string());
  return out;
}

json derivation_json(const Derivation& d) {
  json steps = json::array();
  for (const Step& s : d.steps) {
    json e;
    e["position"] = to_string(s.position);
    e["rule"] = s.rule + 1;
    e["result"] = s.result.to_string();
    steps.push_back(std::move(e));
  }
  json out;
  out["start"] = d.start.to_string();
  out["steps"] = std::move(steps);
  out["end"] = d.end().to_string();
  return out;
}

json witness_json(const PeakWitness& w) {
  json out;
  out["seed"] = w.seed.to_string();
  out["left"] = derivation_json(w.left);
  out["right"] = derivation_json(w.right);
  return out;
}

json components_json(const ComponentSet& cs) {
  json out = json::array();
  for (const Component& c : cs.components) {
    json e;
    e["label"] = c.label;
    json rules = json::array();
    for (std::size_t i : c.rules) rules.push_back(i + 1);
    e["rules"] = std::move(rules);
    out.push_back(std::move(e));
  }
  return out;
}

json attachment_json(const SortAttachment& s) {
  json out = json::array();
  std::istringstream in(print_attachment(s));
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

json license_json(const LicenseResult& l) {
  json out;
  out["license"] = to_string(l.license);
  if (l.bounded_duplication) {
    const auto& c = *l.bounded_duplication;
    if (c.method == BoundedDuplicationCertificate::Method::NonDuplicating) {
      out["method"] = "non-duplicating";
    } else {
      out["method"] = "polynomial";
      out["interpretation"] = c.interpretation->to_string();
    }
  }
  return out;
}

ProofNode leaf(std::string technique, const Trs& trs) {
  ProofNode n;
  n.technique = std::move(technique);
  n.system = trs;
  return n;
}

/// Replaces every variable by a fresh constant `#k`.
Term ground_instance(const Term& t) {
  Substitution sigma;
  std::size_t k = 0;
  for (const std::string& x : variables(t)) sigma.bind(x, Term::function("#" + std::to_string(++k)));
  return sigma.apply(t);
}

constexpr std::size_t kSeedCap = 5000;

std::vector<Trs> component_systems(const ComponentSet& cs) {
  std::vector<Trs> out;
  for (const Component& c : cs.components) out.push_back(c.system);
  return out;
}

bool has_rule(const Trs& trs, const Rule& r) {
  return std::find(trs.rules().begin(), trs.rules().end(), r) != trs.rules().end();
}

}  // namespace

ProofNode prove_orthogonal(const Trs& trs) {
  ProofNode n = leaf("orthogonal", trs);
  bool left_linear = rule_properties(trs).left_linear;
  std::size_t cps = critical_pairs(trs).size();
  n.certificate["left_linear"] = left_linear;
  n.certificate["critical_pairs"] = cps;
  n.answer = left_linear && cps == 0 ? Answer::Yes : Answer::Maybe;
  return n;
}

ProofNode prove_knuth_bendix(const Trs& trs, const DecideOptions& options) {
  ProofNode n = leaf("knuth-bendix", trs);
  json termination;
  if (auto prec = lpo_termination(trs)) {
    termination["method"] = "lpo";
    json pairs = json::array();
    for (const auto& [f, g] : prec->pairs()) pairs.push_back(f + " > " + g);
    termination["precedence"] = std::move(pairs);
    n.lpo = std::move(prec);
  } else if (auto poly = search_linear_poly(trs, Trs(), options.coeff_bound)) {
    termination["method"] = "polynomial";
    termination["interpretation"] = poly->to_string();
    n.poly = std::move(poly);
  } else {
    n.certificate["termination"] = nullptr;
    return n;
  }
  n.certificate["termination"] = std::move(termination);
  json pairs = json::array();
  for (const CriticalPair& cp : critical_pairs(trs)) {
    json e;
    e["peak"] = cp.peak.to_string();
    e["left"] = cp.left.to_string();
    e["right"] = cp.right.to_string();
    e["position"] = to_string(cp.position);
    e["rules"] = json::array({cp.outer_rule + 1, cp.inner_rule + 1});
    auto join = join_search(trs, cp.left, cp.right, options.join_depth, options.reach_terms);
    if (!join) {
      e["meet"] = nullptr;
      pairs.push_back(std::move(e));
      n.certificate["critical_pairs"] = std::move(pairs);
      n.joins.clear();
      return n;
    }
    e["meet"] = join->meet.to_string();
    e["left_steps"] = join->left.steps.size();
    e["right_steps"] = join->right.steps.size();
    pairs.push_back(std::move(e));
    n.joins.push_back({cp, std::move(*join)});
  }
  n.certificate["critical_pairs"] = std::move(pairs);
  n.answer = Answer::Yes;
  return n;
}

ProofNode find_non_confluence(const Trs& trs, const DecideOptions& options) {
  ProofNode n = leaf("non-confluence", trs);
  std::vector<Term> seeds;
  for (const CriticalPair& cp : critical_pairs(trs)) seeds.push_back(ground_instance(cp.peak));
  for (const Rule& r : trs.rules()) seeds.push_back(ground_instance(r.lhs()));
  std::vector<Term> ground = enumerate_terms(trs.signature(), {}, options.seed_size, false);
  if (ground.size() > kSeedCap) ground.erase(ground.begin() + kSeedCap, ground.end());
  seeds.insert(seeds.end(), ground.begin(), ground.end());

  std::set<Term> tried;
  for (const Term& seed : seeds) {
    if (!tried.insert(seed).second) continue;
    ReachTree tree(trs, seed, options.peak_depth, options.reach_terms);
    const auto& forms = tree.normal_forms();
    if (forms.size() < 2) continue;
    PeakWitness w{seed, tree.derivation_to(forms[0]), tree.derivation_to(forms[1])};
    n.certificate = witness_json(w);
    n.certificate["seeds_tried"] = tried.size();
    n.witness = std::move(w);
    n.answer = Answer::No;
    return n;
  }
  n.certificate["seeds_tried"] = tried.size();
  return n;
}

namespace {

class Orchestrator {
 public:
  explicit Orchestrator(const DecideOptions& options) : options_(options) {}

  ProofNode solve(const Trs& trs, Method method, unsigned depth) {
    switch (method) {
      case Method::Direct:
        return direct(trs);
      case Method::Modular:
        return modular(trs, depth);
      case Method::PersistMs:
        return persist_ms(trs, depth);
      case Method::PersistOs:
        return persist_os(trs, depth);
      case Method::LayerPreserving:
        return two_systems(trs, depth, true);
      case Method::QuasiGround:
        return two_systems(trs, depth, false);
      case Method::Auto:
        break;
    }
    std::vector<ProofNode> attempts;
    auto settle = [&attempts](ProofNode n) -> std::optional<ProofNode> {
      if (n.answer != Answer::Maybe) return n;
      attempts.push_back(std::move(n));
      return std::nullopt;
    };
    if (auto n = settle(modular(trs, depth))) return *n;
    for (ProofNode& d : direct_attempts(trs)) {
      if (auto n = settle(std::move(d))) return *n;
    }
    if (auto n = settle(persist_ms(trs, depth))) return *n;
    if (auto n = settle(persist_os(trs, depth))) return *n;
    if (options_.partition) {
      if (auto n = settle(two_systems(trs, depth, true))) return *n;
      if (auto n = settle(two_systems(trs, depth, false))) return *n;
    }
    ProofNode out = leaf("exhausted", trs);
    json tried = json::array();
    for (const ProofNode& a : attempts) tried.push_back(a.technique);
    out.certificate["methods"] = std::move(tried);
    out.children = std::move(attempts);
    return out;
  }

 private:
  std::vector<ProofNode> direct_attempts(const Trs& trs) {
    std::vector<ProofNode> out;
    out.push_back(prove_orthogonal(trs));
    if (out.back().answer != Answer::Maybe) return out;
    out.push_back(prove_knuth_bendix(trs, options_));
    if (out.back().answer != Answer::Maybe) return out;
    out.push_back(find_non_confluence(trs, options_));
    return out;
  }

  ProofNode direct(const Trs& trs) {
    std::vector<ProofNode> attempts = direct_attempts(trs);
    if (attempts.back().answer != Answer::Maybe) return std::move(attempts.back());
    ProofNode out = leaf("direct", trs);
    json tried = json::array();
    for (const ProofNode& a : attempts) tried.push_back(a.technique);
    out.certificate["methods"] = std::move(tried);
    out.children = std::move(attempts);
    return out;
  }

  static ProofNode not_applicable(std::string technique, const Trs& trs, std::string reason) {
    ProofNode n = leaf(std::move(technique), trs);
    n.certificate["applicable"] = false;
    n.certificate["reason"] = std::move(reason);
    return n;
  }

  /// Proves every component and combines the answers into `node`.
  void recurse(ProofNode& node, const std::vector<Trs>& parts, unsigned depth) {
    node.certificate["applicable"] = true;
    bool all_yes = true;
    for (const Trs& part : parts) {
      Method next = depth + 1 < options_.recursion_depth ? Method::Auto : Method::Direct;
      ProofNode child = solve(part, next, depth + 1);
      if (child.answer != Answer::Yes) all_yes = false;
      if (child.answer == Answer::No && !node.witness) {
        const PeakWitness* w = find_witness(child);
        if (w && verify_witness(node.system, *w)) node.witness = *w;
      }
      node.children.push_back(std::move(child));
    }
    if (all_yes) {
      node.answer = Answer::Yes;
    } else if (node.witness) {
      node.answer = Answer::No;
      node.certificate["witness"] = witness_json(*node.witness);
    }
  }

  static const PeakWitness* find_witness(const ProofNode& n) {
    if (n.witness) return &*n.witness;
    for (const ProofNode& c : n.children) {
      if (const PeakWitness* w = find_witness(c)) return w;
    }
    return nullptr;
  }

  ProofNode modular(const Trs& trs, unsigned depth) {
    ComponentSet cs = modular_split(trs);
    if (!cs.proper(trs.size())) return not_applicable("modular", trs, "single component");
    ProofNode n = leaf("modular", trs);
    n.certificate["components"] = components_json(cs);
    n.components = cs;
    recurse(n, component_systems(cs), depth);
    return n;
  }

  ProofNode persist_ms(const Trs& trs, unsigned depth) {
    SortAttachment s = infer_many_sorted(trs);
    ComponentSet cs = sort_components(trs, s);
    ProofNode n = leaf("persistence-ms", trs);
    n.certificate["attachment"] = attachment_json(s);
    n.certificate["license"] = "many-sorted";
    n.certificate["components"] = components_json(cs);
    n.attachment = s;
    n.components = cs;
    if (!cs.proper(trs.size())) {
      n.certificate["applicable"] = false;
      n.certificate["reason"] = "degenerate decomposition";
      return n;
    }
    recurse(n, component_systems(cs), depth);
    return n;
  }

  ProofNode persist_os(const Trs& trs, unsigned depth) {
    std::vector<std::pair<std::string, SortAttachment>> candidates;
    if (options_.attachment) {
      candidates.emplace_back("given", *options_.attachment);
    } else {
      if (auto s = infer_order_sorted(trs, false)) candidates.emplace_back("inferred", std::move(*s));
      if (auto s = infer_order_sorted(trs, true)) candidates.emplace_back("inferred-strong", std::move(*s));
    }
    json attempts = json::array();
    for (const auto& [origin, s] : candidates) {
      json attempt;
      attempt["attachment_origin"] = origin;
      attempt["attachment"] = attachment_json(s);
      std::optional<ComponentSet> cs;
      try {
        cs = sort_components(trs, s);
      } catch (const IncompatibleAttachmentError& e) {
        attempt["reason"] = std::string("incompatible attachment: ") + e.what();
        attempts.push_back(std::move(attempt));
        continue;
      }
      attempt["components"] = components_json(*cs);
      auto license = persistence_license(trs, s, options_.licenses, options_.coeff_bound);
      attempt["license"] = license ? json(license_json(*license)) : json(nullptr);
      if (!license) {
        attempt["reason"] = "no license";
      } else if (!cs->proper(trs.size())) {
        attempt["reason"] = "degenerate decomposition";
      } else {
        ProofNode n = leaf("persistence-os", trs);
        n.certificate["attachment_origin"] = origin;
        n.certificate["attachment"] = attachment_json(s);
        n.certificate["license"] = license_json(*license);
        n.certificate["components"] = components_json(*cs);
        n.attachment = s;
        n.license = license;
        n.components = cs;
        recurse(n, component_systems(*cs), depth);
        return n;
      }
      attempts.push_back(std::move(attempt));
    }
    ProofNode n = not_applicable("persistence-os", trs,
                                 candidates.empty() ? "no order-sorted attachment" : "no licensed decomposition");
    n.certificate["attempts"] = std::move(attempts);
    return n;
  }

  ProofNode two_systems(const Trs& trs, unsigned depth, bool layer_preserving) {
    std::string technique = layer_preserving ? "layer-preservation" : "quasi-ground";
    if (!options_.partition) return not_applicable(technique, trs, "no signature partition given");
    TwoSystems split = split_by_partition(trs, *options_.partition);
    std::set<std::string> f1, f2;
    for (const Symbol& f : trs.signature().symbols()) {
      if (!options_.partition->only2.count(f.name)) f1.insert(f.name);
      if (!options_.partition->only1.count(f.name)) f2.insert(f.name);
    }
    SplitCertificate cert = layer_preserving ? layer_preserving_check(split.r1, split.r2, f1, f2)
                                             : quasi_ground_check(split.r1, split.r2, f1, f2);
    ProofNode n = leaf(technique, trs);
    n.certificate["split"] = to_json(cert);
    json stray = json::array();
    for (std::size_t i : split.stray) stray.push_back(i + 1);
    n.certificate["stray_rules"] = std::move(stray);
    n.split = cert;
    if (!split.stray.empty() || !cert.pass()) {
      n.certificate["applicable"] = false;
      n.certificate["reason"] = split.stray.empty() ? "side conditions fail" : "rules mix both sides";
      return n;
    }
    if (split.r1 == trs || split.r2 == trs) {
      n.certificate["applicable"] = false;
      n.certificate["reason"] = "degenerate decomposition";
      return n;
    }
    recurse(n, {split.r1, split.r2}, depth);
    return n;
  }

  DecideOptions options_;
};

}  // namespace

Verdict decide(const Trs& trs, const DecideOptions& options) {
  Orchestrator o(options);
  ProofNode root = o.solve(trs, options.method, 0);
  Answer a = root.answer;
  return Verdict{a, std::move(root)};
}

Verdict decide_curried(const Trs& trs, const DecideOptions& options) {
  check_curry_names(trs.signature());
  Trs curried = curry_trs(trs);
  Verdict inner = decide(trs, options);
  ProofNode n = leaf("curry", curried);
  n.certificate["chain"] = json::array({"R", "PP(R)", "Cu(R)"});
  n.certificate["source"] = rules_json(trs);
  if (inner.answer == Answer::Yes) {
    n.answer = Answer::Yes;
    n.children.push_back(std::move(inner.trace));
    return Verdict{Answer::Yes, std::move(n)};
  }
  n.children.push_back(std::move(inner.trace));
  ProofNode search = find_non_confluence(curried, options);
  if (search.answer == Answer::No) {
    n.answer = Answer::No;
    n.witness = search.witness;
    n.certificate["witness"] = search.certificate;
  }
  n.children.push_back(std::move(search));
  Answer a = n.answer;
  return Verdict{a, std::move(n)};
}

namespace {

bool fail(std::string* reason, const ProofNode& n, const std::string& what) {
  if (reason) *reason = n.technique + ": " + what;
  return false;
}

std::vector<std::vector<std::size_t>> rule_sets(const ComponentSet& cs) {
  std::vector<std::vector<std::size_t>> out;
  for (const Component& c : cs.components) out.push_back(c.rules);
  return out;
}

bool children_prove(const ProofNode& n, const std::vector<Trs>& parts, std::string* reason) {
  if (n.children.size() != parts.size()) return fail(reason, n, "child count differs from the components");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!(n.children[i].system == parts[i])) return fail(reason, n, "child system differs from its component");
    if (n.children[i].answer != Answer::Yes) return fail(reason, n, "a component is not proven");
    if (!verify_trace(n.children[i], reason)) return false;
  }
  return true;
}

bool same_joined_pair(const CriticalPair& a, const CriticalPair& b) {
  return a.peak == b.peak && a.left == b.left && a.right == b.right && a.position == b.position &&
         a.outer_rule == b.outer_rule && a.inner_rule == b.inner_rule;
}

}  // namespace

bool verify_trace(const ProofNode& n, std::string* reason) {
  if (n.answer == Answer::Maybe) return true;
  if (n.answer == Answer::No) {
    if (!n.witness || !verify_witness(n.system, *n.witness)) return fail(reason, n, "witness does not replay");
    return true;
  }
  const Trs& trs = n.system;
  if (n.technique == "orthogonal") {
    if (!rule_properties(trs).left_linear || !critical_pairs(trs).empty()) return fail(reason, n, "not orthogonal");
    return true;
  }
  if (n.technique == "knuth-bendix") {
    if (n.lpo) {
      for (const Rule& r : trs.rules()) {
        if (!lpo_greater(r.lhs(), r.rhs(), *n.lpo)) return fail(reason, n, "rule not oriented: " + r.to_string());
      }
    } else if (!n.poly || !verify_interpretation(*n.poly, trs, Trs())) {
      return fail(reason, n, "termination certificate does not verify");
    }
    auto cps = critical_pairs(trs);
    if (cps.size() != n.joins.size()) return fail(reason, n, "critical pair count differs");
    for (std::size_t i = 0; i < cps.size(); ++i) {
      const JoinedPair& j = n.joins[i];
      if (!same_joined_pair(cps[i], j.pair)) return fail(reason, n, "critical pair differs");
      if (j.join.left.start != j.pair.left || j.join.right.start != j.pair.right ||
          !replay(trs, j.join.left.start, j.join.left.steps) || !replay(trs, j.join.right.start, j.join.right.steps) ||
          j.join.left.end() != j.join.meet || j.join.right.end() != j.join.meet) {
        return fail(reason, n, "join witness does not replay");
      }
    }
    return true;
  }
  if (n.technique == "modular") {
    if (!n.components || rule_sets(modular_split(trs)) != rule_sets(*n.components)) {
      return fail(reason, n, "components differ from the modular split");
    }
    return children_prove(n, component_systems(*n.components), reason);
  }
  if (n.technique == "persistence-ms" || n.technique == "persistence-os") {
    if (!n.attachment || !n.components) return fail(reason, n, "missing attachment");
    if (n.technique == "persistence-ms" && !n.attachment->precedence().empty()) {
      return fail(reason, n, "many-sorted attachment with a precedence");
    }
    try {
      if (rule_sets(sort_components(trs, *n.attachment)) != rule_sets(*n.components)) {
        return fail(reason, n, "components differ from the sort components");
      }
    } catch (const IncompatibleAttachmentError&) {
      return fail(reason, n, "attachment is not compatible");
    }
    if (n.technique == "persistence-os") {
      if (!n.license) return fail(reason, n, "missing license");
      bool ok = false;
      switch (n.license->license) {
        case License::LeftLinear:
          ok = rule_properties(trs).left_linear;
          break;
        case License::BoundedDuplicating:
          ok = n.license->bounded_duplication && verify_bounded_duplicating(trs, *n.license->bounded_duplication);
          break;
        case License::StronglyCompatible:
          ok = check_compatibility(trs, *n.attachment, CompatibilityMode::Strong).ok;
          break;
      }
      if (!ok) return fail(reason, n, "license does not verify");
    }
    return children_prove(n, component_systems(*n.components), reason);
  }
  if (n.technique == "layer-preservation" || n.technique == "quasi-ground") {
    if (!n.split || n.children.size() != 2) return fail(reason, n, "missing split certificate");
    std::set<std::string> f1 = n.split->shared, f2 = n.split->shared;
    f1.insert(n.split->only1.begin(), n.split->only1.end());
    f2.insert(n.split->only2.begin(), n.split->only2.end());
    const Trs& r1 = n.children[0].system;
    const Trs& r2 = n.children[1].system;
    SplitCertificate again = n.technique == "layer-preservation" ? layer_preserving_check(r1, r2, f1, f2)
                                                                 : quasi_ground_check(r1, r2, f1, f2);
    if (!again.pass()) return fail(reason, n, "side conditions do not re-verify");
    for (const Rule& r : trs.rules()) {
      if (!has_rule(r1, r) && !has_rule(r2, r)) return fail(reason, n, "rule lost by the split");
    }
    return children_prove(n, {r1, r2}, reason);
  }
  if (n.technique == "curry") {
    if (n.children.empty() || n.children[0].answer != Answer::Yes) return fail(reason, n, "source not proven");
    if (!(curry_trs(n.children[0].system) == trs)) return fail(reason, n, "system is not the curried source");
    return verify_trace(n.children[0], reason);
  }
  return fail(reason, n, "unknown technique claims YES");
}

}  // namespace confdec
