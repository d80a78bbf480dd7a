#include "confdec/decompose.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "confdec/error.hpp"
#include "confdec/rewrite.hpp"

namespace confdec {

bool ComponentSet::proper(std::size_t total_rules) const {
  if (components.size() < 2) return false;
  return std::none_of(components.begin(), components.end(),
                      [total_rules](const Component& c) { return c.rules.size() == total_rules; });
}

namespace {

std::set<std::string> rule_symbols(const Rule& r) {
  std::set<std::string> out;
  for (const Term* side : {&r.lhs(), &r.rhs()}) {
    for (const std::string& f : function_symbols(*side)) out.insert(f);
  }
  return out;
}

bool subset_of(const std::set<std::string>& a, const std::set<std::string>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

ComponentSet modular_split(const Trs& trs) {
  std::vector<std::size_t> parent(trs.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&parent](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  std::map<std::string, std::size_t> owner;
  for (std::size_t i = 0; i < trs.size(); ++i) {
    for (const std::string& f : rule_symbols(trs.rule(i))) {
      auto [it, fresh] = owner.emplace(f, i);
      if (!fresh) {
        std::size_t a = find(it->second), b = find(i);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  ComponentSet out{"modular", {}};
  std::map<std::size_t, std::size_t> slot;  // representative -> component
  for (std::size_t i = 0; i < trs.size(); ++i) {
    std::size_t r = find(i);
    auto [it, fresh] = slot.emplace(r, out.components.size());
    if (fresh) out.components.push_back({std::to_string(out.components.size() + 1), {}, Trs()});
    out.components[it->second].rules.push_back(i);
  }
  for (Component& c : out.components) c.system = trs.subset(c.rules);
  return out;
}

bool sort_dominates(const SortAttachment& s, const Sort& alpha, const Sort& beta) {
  if (alpha == beta || s.precedence().greater(alpha, beta)) return true;
  std::map<Sort, std::set<Sort>> edges;
  for (const auto& [f, type] : s.functions()) {
    for (const Sort& a : type.args) edges[type.result].insert(a);
  }
  for (const Sort& a : s.sorts()) {
    for (const Sort& b : s.sorts()) {
      if (s.precedence().greater(a, b)) edges[a].insert(b);
    }
  }
  std::set<Sort> seen{alpha};
  std::vector<Sort> stack{alpha};
  while (!stack.empty()) {
    Sort a = stack.back();
    stack.pop_back();
    for (const Sort& b : edges[a]) {
      if (b == beta) return true;
      if (seen.insert(b).second) stack.push_back(b);
    }
  }
  return false;
}

ComponentSet sort_components(const Trs& trs, const SortAttachment& s) {
  try {
    if (!check_compatibility(trs, s, CompatibilityMode::Compatible).ok) {
      throw IncompatibleAttachmentError("the system is not compatible with the sort attachment");
    }
  } catch (const UntypedSymbolError& e) {
    throw IncompatibleAttachmentError(e.what());
  }
  std::vector<Sort> lhs_sorts;
  for (std::size_t i = 0; i < trs.size(); ++i) lhs_sorts.push_back(*sort_of(s, trs.rule(i).lhs(), i + 1));
  ComponentSet out{"sorts", {}};
  std::set<std::vector<std::size_t>> seen;
  for (const Sort& alpha : s.sorts()) {
    std::vector<std::size_t> rules;
    for (std::size_t i = 0; i < trs.size(); ++i) {
      if (sort_dominates(s, alpha, lhs_sorts[i])) rules.push_back(i);
    }
    if (rules.empty() || !seen.insert(rules).second) continue;
    Trs system = trs.subset(rules);
    out.components.push_back({alpha, std::move(rules), std::move(system)});
  }
  return out;
}

std::string to_string(License l) {
  switch (l) {
    case License::LeftLinear:
      return "left-linear";
    case License::BoundedDuplicating:
      return "bounded-duplicating";
    case License::StronglyCompatible:
      return "strongly-compatible";
  }
  return "?";
}

std::optional<License> parse_license(std::string_view text) {
  for (License l : {License::LeftLinear, License::BoundedDuplicating, License::StronglyCompatible}) {
    if (to_string(l) == text) return l;
  }
  if (text == "strong") return License::StronglyCompatible;
  return std::nullopt;
}

std::optional<LicenseResult> persistence_license(const Trs& trs, const SortAttachment& s,
                                                 const std::set<License>& allowed, long coeff_bound) {
  if (allowed.count(License::LeftLinear) && rule_properties(trs).left_linear) {
    return LicenseResult{License::LeftLinear, std::nullopt};
  }
  if (allowed.count(License::BoundedDuplicating)) {
    try {
      if (auto c = prove_bounded_duplicating(trs, coeff_bound)) {
        return LicenseResult{License::BoundedDuplicating, std::move(c)};
      }
    } catch (const SignatureCollisionError&) {
    }
  }
  if (allowed.count(License::StronglyCompatible)) {
    try {
      if (check_compatibility(trs, s, CompatibilityMode::Strong).ok) {
        return LicenseResult{License::StronglyCompatible, std::nullopt};
      }
    } catch (const UntypedSymbolError&) {
    }
  }
  return std::nullopt;
}

// Two-system splits ------------------------------------------------------------------

Partition parse_partition(std::string_view text) {
  Partition p;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string head;
    if (!(words >> head)) continue;
    std::set<std::string>* target = nullptr;
    if (head == "F1:") target = &p.only1;
    if (head == "F2:") target = &p.only2;
    if (!target) throw ParseError("expected `F1:` or `F2:`", line_no, 1);
    for (std::string f; words >> f;) target->insert(f);
  }
  for (const std::string& f : p.only1) {
    if (p.only2.count(f)) throw ParseError("symbol " + f + " is listed in both F1 and F2", 1, 1);
  }
  return p;
}

bool SplitCertificate::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckItem& c) { return c.pass; });
}

TwoSystems split_by_partition(const Trs& trs, const Partition& p) {
  std::set<std::string> all;
  for (const Symbol& f : trs.signature().symbols()) all.insert(f.name);
  std::set<std::string> f1, f2;
  for (const std::string& f : all) {
    if (!p.only2.count(f)) f1.insert(f);
    if (!p.only1.count(f)) f2.insert(f);
  }
  TwoSystems out;
  for (std::size_t i = 0; i < trs.size(); ++i) {
    auto syms = rule_symbols(trs.rule(i));
    bool in1 = subset_of(syms, f1);
    bool in2 = subset_of(syms, f2);
    if (in1) out.indices1.push_back(i);
    if (in2) out.indices2.push_back(i);
    if (!in1 && !in2) out.stray.push_back(i);
  }
  out.r1 = trs.subset(out.indices1);
  out.r2 = trs.subset(out.indices2);
  return out;
}

namespace {

struct Parts {
  std::set<std::string> shared, only1, only2;
};

Parts parts(const std::set<std::string>& f1, const std::set<std::string>& f2) {
  Parts p;
  for (const std::string& f : f1) (f2.count(f) ? p.shared : p.only1).insert(f);
  for (const std::string& f : f2) {
    if (!f1.count(f)) p.only2.insert(f);
  }
  return p;
}

bool over(const Term& t, const std::set<std::string>& symbols) {
  for (const std::string& f : function_symbols(t)) {
    if (!symbols.count(f)) return false;
  }
  return true;
}

bool in_shared_terms(const Rule& r, const std::set<std::string>& shared) {
  return over(r.lhs(), shared) && over(r.rhs(), shared);
}

bool rooted_in(const Term& t, const std::set<std::string>& roots, const std::set<std::string>& symbols) {
  return t.is_function() && roots.count(t.name()) && over(t, symbols);
}

bool quasi_ground(const Term& t, const std::set<std::string>& shared) {
  if (t.is_variable()) return true;
  if (shared.count(t.name())) return t.is_ground();
  return std::all_of(t.args().begin(), t.args().end(), [&](const Term& a) { return quasi_ground(a, shared); });
}

bool has_variant(const Trs& trs, const Rule& r) {
  return std::any_of(trs.rules().begin(), trs.rules().end(), [&](const Rule& s) { return is_variant(r, s); });
}

}  // namespace

SplitCertificate layer_preserving_check(const Trs& r1, const Trs& r2, const std::set<std::string>& f1,
                                        const std::set<std::string>& f2) {
  Parts p = parts(f1, f2);
  SplitCertificate c{"layer-preservation", p.shared, p.only1, p.only2, {}};
  auto side = [&](const Trs& rs, const std::string& name, const std::set<std::string>& own,
                  const std::set<std::string>& fi, const Trs& other) {
    for (std::size_t i = 0; i < rs.size(); ++i) {
      const Rule& r = rs.rule(i);
      bool shared = in_shared_terms(r, p.shared);
      bool own_layer = rooted_in(r.lhs(), own, fi) && rooted_in(r.rhs(), own, fi);
      c.checks.push_back({name + " rule in T(B,V)^2 or T_D(F,V)^2", i, shared || own_layer, r.to_string()});
      if (shared) {
        c.checks.push_back({"shared rule of " + name + " occurs in the other system", i, has_variant(other, r),
                            r.to_string()});
      }
    }
  };
  side(r1, "R1", p.only1, f1, r2);
  side(r2, "R2", p.only2, f2, r1);
  return c;
}

SplitCertificate quasi_ground_check(const Trs& r1, const Trs& r2, const std::set<std::string>& f1,
                                    const std::set<std::string>& f2) {
  Parts p = parts(f1, f2);
  SplitCertificate c{"quasi-ground", p.shared, p.only1, p.only2, {}};
  auto side = [&](const Trs& rs, const std::string& name, const std::set<std::string>& fi) {
    for (std::size_t i = 0; i < rs.size(); ++i) {
      const Rule& r = rs.rule(i);
      c.checks.push_back({name + " rule over its signature", i, over(r.lhs(), fi) && over(r.rhs(), fi),
                          r.to_string()});
      c.checks.push_back({name + " root of lhs not shared", i, !p.shared.count(r.lhs().name()), r.to_string()});
      c.checks.push_back({name + " lhs quasi-ground", i, quasi_ground(r.lhs(), p.shared), r.lhs().to_string()});
      c.checks.push_back({name + " rhs quasi-ground", i, quasi_ground(r.rhs(), p.shared), r.rhs().to_string()});
    }
  };
  side(r1, "R1", f1);
  side(r2, "R2", f2);
  return c;
}

nlohmann::ordered_json to_json(const SplitCertificate& c) {
  nlohmann::ordered_json j;
  j["theorem"] = c.theorem;
  j["shared"] = c.shared;
  j["only1"] = c.only1;
  j["only2"] = c.only2;
  j["pass"] = c.pass();
  auto& checks = j["checks"] = nlohmann::ordered_json::array();
  for (const CheckItem& item : c.checks) {
    nlohmann::ordered_json e;
    e["condition"] = item.condition;
    e["rule"] = item.rule ? nlohmann::ordered_json(*item.rule) : nlohmann::ordered_json(nullptr);
    e["pass"] = item.pass;
    e["detail"] = item.detail;
    checks.push_back(std::move(e));
  }
  return j;
}

}  // namespace confdec
