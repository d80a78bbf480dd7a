#include "confdec/sorts.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "confdec/error.hpp"

namespace confdec {

void Precedence::add(const Sort& a, const Sort& b) {
  if (a == b || geq(b, a)) throw Error("precedence cycle through " + a + " and " + b);
  edges_.emplace_back(a, b);
  std::set<Sort> below = {b};
  if (auto it = above_.find(b); it != above_.end()) below.insert(it->second.begin(), it->second.end());
  std::vector<Sort> uppers = {a};
  for (const auto& [x, set] : above_) {
    if (set.count(a)) uppers.push_back(x);
  }
  for (const Sort& x : uppers) above_[x].insert(below.begin(), below.end());
}

bool Precedence::greater(const Sort& a, const Sort& b) const {
  auto it = above_.find(a);
  return it != above_.end() && it->second.count(b) != 0;
}

void SortAttachment::declare_sort(const Sort& s) {
  if (std::find(sorts_.begin(), sorts_.end(), s) == sorts_.end()) sorts_.push_back(s);
}

void SortAttachment::set_function(const std::string& f, SymbolType type) {
  for (const Sort& a : type.args) declare_sort(a);
  declare_sort(type.result);
  if (auto it = function_index_.find(f); it != function_index_.end()) {
    functions_[it->second].second = std::move(type);
    return;
  }
  function_index_[f] = functions_.size();
  functions_.emplace_back(f, std::move(type));
}

void SortAttachment::set_variable(const std::string& x, const Sort& s) {
  declare_sort(s);
  if (auto it = variable_index_.find(x); it != variable_index_.end()) {
    variables_[it->second].second = s;
    return;
  }
  variable_index_[x] = variables_.size();
  variables_.emplace_back(x, s);
}

void SortAttachment::add_precedence(const Sort& a, const Sort& b) {
  declare_sort(a);
  declare_sort(b);
  precedence_.add(a, b);
}

const SymbolType* SortAttachment::function(const std::string& f) const {
  auto it = function_index_.find(f);
  return it == function_index_.end() ? nullptr : &functions_[it->second].second;
}

std::optional<Sort> SortAttachment::variable(const std::string& x, std::optional<std::size_t> rule) const {
  if (rule) {
    if (auto it = variable_index_.find(scoped_variable(x, *rule)); it != variable_index_.end()) {
      return variables_[it->second].second;
    }
  }
  if (auto it = variable_index_.find(x); it != variable_index_.end()) return variables_[it->second].second;
  return std::nullopt;
}

bool SortAttachment::maximal(const Sort& s) const {
  return std::none_of(sorts_.begin(), sorts_.end(), [&](const Sort& g) { return precedence_.greater(g, s); });
}

std::string scoped_variable(const std::string& x, std::size_t rule) { return x + "#" + std::to_string(rule); }

std::optional<Sort> sort_of(const SortAttachment& s, const Term& t, std::optional<std::size_t> rule) {
  if (t.is_variable()) return s.variable(t.name(), rule);
  const SymbolType* type = s.function(t.name());
  if (!type || type->args.size() != t.arity()) return std::nullopt;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    auto beta = sort_of(s, t.arg(i), rule);
    if (!beta || !s.precedence().geq(type->args[i], *beta)) return std::nullopt;
  }
  return type->result;
}

namespace {

bool strict_positions(const SortAttachment& s, const Term& t, std::optional<std::size_t> rule) {
  if (t.is_variable()) return true;
  const SymbolType* type = s.function(t.name());
  for (std::size_t i = 0; i < t.arity(); ++i) {
    const Term& child = t.arg(i);
    if (child.is_variable()) {
      if (s.variable(child.name(), rule) != type->args[i]) return false;
    } else if (!strict_positions(s, child, rule)) {
      return false;
    }
  }
  return true;
}

void require_typed(const SortAttachment& s, const Term& t, std::size_t rule) {
  if (t.is_variable()) {
    if (!s.variable(t.name(), rule)) throw UntypedSymbolError("variable " + t.name() + " has no sort");
    return;
  }
  const SymbolType* type = s.function(t.name());
  if (!type) throw UntypedSymbolError("symbol " + t.name() + " has no type");
  if (type->args.size() != t.arity()) {
    throw UntypedSymbolError("type of " + t.name() + " does not match its arity");
  }
  for (const Term& a : t.args()) require_typed(s, a, rule);
}

}  // namespace

bool strictly_order_sorted(const SortAttachment& s, const Term& t, std::optional<std::size_t> rule) {
  return sort_of(s, t, rule).has_value() && strict_positions(s, t, rule);
}

std::string to_string(CompatibilityMode m) {
  switch (m) {
    case CompatibilityMode::Compatible:
      return "compatible";
    case CompatibilityMode::Strong:
      return "strong";
    case CompatibilityMode::Star:
      return "star";
  }
  return "?";
}

CompatibilityReport check_compatibility(const Trs& trs, const SortAttachment& s, CompatibilityMode mode) {
  CompatibilityReport report;
  for (std::size_t i = 0; i < trs.size(); ++i) {
    const Rule& rule = trs.rule(i);
    std::size_t k = i + 1;
    require_typed(s, rule.lhs(), k);
    require_typed(s, rule.rhs(), k);
    RuleDiagnostic d{i, true, ""};
    auto fail = [&d](std::string m) {
      if (d.ok) d.message = std::move(m);
      d.ok = false;
    };
    auto alpha = sort_of(s, rule.lhs(), k);
    auto beta = sort_of(s, rule.rhs(), k);
    if (!alpha) fail("left-hand side is not order-sorted");
    if (!beta) fail("right-hand side is not order-sorted");
    if (alpha && beta && !s.precedence().geq(*alpha, *beta)) {
      fail("sort " + *alpha + " of the left-hand side is not above sort " + *beta);
    }
    if (alpha && !strict_positions(s, rule.lhs(), k)) fail("left-hand side is not strictly order-sorted");
    if (mode == CompatibilityMode::Strong) {
      if (rule.rhs().is_variable()) {
        if (beta && !s.maximal(*beta)) fail("collapsing rule into non-maximal sort " + *beta);
      } else if (beta && !strict_positions(s, rule.rhs(), k)) {
        fail("right-hand side is not strictly order-sorted");
      }
    }
    if (mode == CompatibilityMode::Star && beta && !strict_positions(s, rule.rhs(), k)) {
      fail("right-hand side is not strictly order-sorted");
    }
    report.ok = report.ok && d.ok;
    report.rules.push_back(std::move(d));
  }
  return report;
}

namespace {

/// Sort slots of a TRS: argument and result slots of each symbol, and one
/// slot per rule variable.
class SlotTable {
 public:
  explicit SlotTable(const Trs& trs) : trs_(trs) {
    for (const Symbol& f : trs.signature().symbols()) {
      for (std::size_t i = 1; i <= f.arity; ++i) intern(f.name + "." + std::to_string(i));
      intern(f.name + ".res");
    }
    for (std::size_t k = 1; k <= trs.size(); ++k) {
      for (const std::string& x : variables(trs.rule(k - 1).lhs())) intern(scoped_variable(x, k));
    }
  }

  std::size_t size() const { return names_.size(); }
  std::size_t arg(const std::string& f, std::size_t i) const { return ids_.at(f + "." + std::to_string(i)); }
  std::size_t result(const std::string& f) const { return ids_.at(f + ".res"); }
  std::size_t var(const std::string& x, std::size_t rule) const { return ids_.at(scoped_variable(x, rule)); }
  std::size_t node(const Term& t, std::size_t rule) const {
    return t.is_variable() ? var(t.name(), rule) : result(t.name());
  }

  /// Attachment with one sort per class, named by first appearance.
  SortAttachment build(const std::function<std::size_t(std::size_t)>& find,
                       std::map<std::size_t, Sort>* names_out = nullptr) const {
    std::map<std::size_t, Sort> names;
    auto name = [&](std::size_t slot) {
      std::size_t c = find(slot);
      auto it = names.find(c);
      if (it == names.end()) it = names.emplace(c, std::to_string(names.size())).first;
      return it->second;
    };
    for (std::size_t i = 0; i < names_.size(); ++i) name(i);
    SortAttachment s;
    for (std::size_t i = 0; i < names_.size(); ++i) s.declare_sort(name(i));
    for (const Symbol& f : trs_.signature().symbols()) {
      SymbolType type;
      for (std::size_t i = 1; i <= f.arity; ++i) type.args.push_back(name(arg(f.name, i)));
      type.result = name(result(f.name));
      s.set_function(f.name, std::move(type));
    }
    for (std::size_t k = 1; k <= trs_.size(); ++k) {
      for (const std::string& x : variables(trs_.rule(k - 1).lhs())) {
        s.set_variable(scoped_variable(x, k), name(var(x, k)));
      }
    }
    if (names_out) *names_out = std::move(names);
    return s;
  }

 private:
  void intern(const std::string& n) {
    if (ids_.emplace(n, names_.size()).second) names_.push_back(n);
  }

  const Trs& trs_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> ids_;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  /// The smaller index becomes the representative. Returns true on a merge.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

/// Calls `visit(parent, i, child)` for every argument position of t.
void for_each_argument(const Term& t, const std::function<void(const Term&, std::size_t, const Term&)>& visit) {
  if (t.is_variable()) return;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    visit(t, i + 1, t.arg(i));
    for_each_argument(t.arg(i), visit);
  }
}

}  // namespace

SortAttachment infer_many_sorted(const Trs& trs) {
  SlotTable slots(trs);
  UnionFind uf(slots.size());
  for (std::size_t k = 1; k <= trs.size(); ++k) {
    const Rule& rule = trs.rule(k - 1);
    for (const Term* side : {&rule.lhs(), &rule.rhs()}) {
      for_each_argument(*side, [&](const Term& parent, std::size_t i, const Term& child) {
        uf.unite(slots.arg(parent.name(), i), slots.node(child, k));
      });
    }
    uf.unite(slots.node(rule.lhs(), k), slots.node(rule.rhs(), k));
  }
  return slots.build([&uf](std::size_t i) { return uf.find(i); });
}

std::optional<SortAttachment> infer_order_sorted(const Trs& trs, bool strong) {
  SlotTable slots(trs);
  UnionFind uf(slots.size());
  std::vector<std::pair<std::size_t, std::size_t>> geq;  // (a, b): a ⪰ b
  std::vector<std::size_t> maximal;
  for (std::size_t k = 1; k <= trs.size(); ++k) {
    const Rule& rule = trs.rule(k - 1);
    auto strict = [&](const Term& parent, std::size_t i, const Term& child) {
      if (child.is_variable()) {
        uf.unite(slots.arg(parent.name(), i), slots.node(child, k));
      } else {
        geq.emplace_back(slots.arg(parent.name(), i), slots.node(child, k));
      }
    };
    auto loose = [&](const Term& parent, std::size_t i, const Term& child) {
      geq.emplace_back(slots.arg(parent.name(), i), slots.node(child, k));
    };
    for_each_argument(rule.lhs(), strict);
    if (strong && !rule.rhs().is_variable()) {
      for_each_argument(rule.rhs(), strict);
    } else {
      for_each_argument(rule.rhs(), loose);
    }
    geq.emplace_back(slots.node(rule.lhs(), k), slots.node(rule.rhs(), k));
    if (strong && rule.rhs().is_variable()) maximal.push_back(slots.node(rule.rhs(), k));
  }

  const std::size_t n = slots.size();
  for (bool changed = true; changed;) {
    changed = false;
    // Reachability on the class graph; classes on a common cycle collapse.
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (auto [a, b] : geq) {
      std::size_t ca = uf.find(a), cb = uf.find(b);
      if (ca != cb) reach[ca][cb] = true;
    }
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!reach[i][m]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (reach[m][j]) reach[i][j] = true;
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (uf.find(i) != i) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (uf.find(j) == j && reach[i][j] && reach[j][i]) changed |= uf.unite(i, j);
      }
    }
    if (changed) continue;
    for (std::size_t m : maximal) {
      std::size_t c = uf.find(m);
      for (std::size_t d = 0; d < n; ++d) {
        if (uf.find(d) == d && d != c && reach[d][c]) changed |= uf.unite(d, c);
      }
    }
  }

  std::map<std::size_t, Sort> names;
  SortAttachment s = slots.build([&uf](std::size_t i) { return uf.find(i); }, &names);
  for (auto [a, b] : geq) {
    const Sort& sa = names.at(uf.find(a));
    const Sort& sb = names.at(uf.find(b));
    if (sa != sb && !s.precedence().greater(sa, sb)) s.add_precedence(sa, sb);
  }
  auto mode = strong ? CompatibilityMode::Strong : CompatibilityMode::Compatible;
  if (!check_compatibility(trs, s, mode).ok) return std::nullopt;
  return s;
}

std::string print_attachment(const SortAttachment& s) {
  std::ostringstream out;
  out << "SORTS";
  for (const Sort& a : s.sorts()) out << ' ' << a;
  out << '\n';
  for (const auto& [f, type] : s.functions()) {
    out << f << " :";
    for (std::size_t i = 0; i < type.args.size(); ++i) out << (i ? " x " : " ") << type.args[i];
    out << " -> " << type.result << '\n';
  }
  for (const auto& [x, a] : s.variables()) out << x << " : " << a << '\n';
  for (const auto& [a, b] : s.precedence().pairs()) out << "PREC " << a << " > " << b << '\n';
  return out.str();
}

SortAttachment parse_attachment(std::string_view text) {
  SortAttachment s;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream words(line);
    std::vector<std::string> w;
    for (std::string word; words >> word;) w.push_back(word);
    if (w.empty() || w[0][0] == '#') continue;
    auto fail = [&](const std::string& m) { throw ParseError(m, line_no, 1); };
    if (w[0] == "SORTS") {
      for (std::size_t i = 1; i < w.size(); ++i) s.declare_sort(w[i]);
      continue;
    }
    if (w[0] == "PREC") {
      if (w.size() != 4 || w[2] != ">") fail("expected PREC a > b");
      try {
        s.add_precedence(w[1], w[3]);
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        fail(e.what());
      }
      continue;
    }
    if (w.size() < 3 || w[1] != ":") fail("expected `name : type`");
    auto arrow = std::find(w.begin() + 2, w.end(), "->");
    if (arrow == w.end()) {
      if (w.size() != 3) fail("expected `x : sort`");
      s.set_variable(w[0], w[2]);
      continue;
    }
    if (arrow + 2 != w.end()) fail("expected a single result sort after ->");
    SymbolType type;
    type.result = *(arrow + 1);
    std::vector<std::string> args(w.begin() + 2, arrow);
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i % 2 == 1) {
        if (args[i] != "x") fail("expected `x` between argument sorts");
      } else {
        type.args.push_back(args[i]);
      }
    }
    if (!args.empty() && args.size() % 2 == 0) fail("dangling `x` in argument sorts");
    s.set_function(w[0], std::move(type));
  }
  return s;
}

}  // namespace confdec
