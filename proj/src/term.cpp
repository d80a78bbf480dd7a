#include "confdec/term.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "confdec/error.hpp"

namespace confdec {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::variable(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Variable;
  node->hash = mix(0x51ed27, std::hash<std::string>{}(name));
  node->name = std::move(name);
  node->size = 1;
  node->holes = 0;
  node->variables = 1;
  return Term(std::move(node));
}

Term Term::function(std::string name, std::vector<Term> args) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Function;
  std::size_t h = mix(0xf00d, std::hash<std::string>{}(name));
  std::size_t size = 1;
  std::size_t holes = 0;
  std::size_t vars = 0;
  for (const Term& a : args) {
    h = mix(h, a.hash());
    size += a.size();
    holes += a.hole_count();
    vars += a.node_->variables;
  }
  if (args.empty() && name == kHole) holes = 1;
  node->hash = mix(h, args.size());
  node->name = std::move(name);
  node->args = std::move(args);
  node->size = size;
  node->holes = holes;
  node->variables = vars;
  return Term(std::move(node));
}

Term Term::hole() {
  static const Term h = function(std::string(kHole));
  return h;
}

bool Term::is_hole() const { return is_function() && node_->args.empty() && node_->name == kHole; }

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (node_->hash != other.node_->hash || node_->size != other.node_->size) return false;
  if (node_->kind != other.node_->kind || node_->name != other.node_->name) return false;
  if (node_->args.size() != other.node_->args.size()) return false;
  for (std::size_t i = 0; i < node_->args.size(); ++i) {
    if (node_->args[i] != other.node_->args[i]) return false;
  }
  return true;
}

int Term::compare(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return 0;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  if (a.kind() != b.kind()) return a.kind() == Kind::Variable ? -1 : 1;
  if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
  if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (int c = compare(a.arg(i), b.arg(i)); c != 0) return c;
  }
  return 0;
}

bool Term::operator<(const Term& other) const { return compare(*this, other) < 0; }

std::string Term::to_string() const {
  std::string out;
  // Explicit stack keeps deep terms from exhausting the call stack.
  struct Frame {
    const Term* t;
    std::size_t next;
  };
  std::vector<Frame> stack{{this, 0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    const Term& t = *f.t;
    if (f.next == 0) out += t.name();
    if (t.arity() == 0) {
      stack.pop_back();
      continue;
    }
    if (f.next == t.arity()) {
      out += ')';
      stack.pop_back();
      continue;
    }
    out += f.next == 0 ? '(' : ',';
    const Term* child = &t.arg(f.next);
    ++f.next;
    stack.push_back({child, 0});
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Term& t) { return os << t.to_string(); }

std::string to_string(const Position& p) {
  if (p.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(p[i]);
  }
  return out;
}

bool is_prefix(const Position& p, const Position& q) {
  return p.size() <= q.size() && std::equal(p.begin(), p.end(), q.begin());
}

namespace {

template <typename Pred>
void collect_positions(const Term& t, Position& cur, std::vector<Position>& out, const Pred& keep) {
  if (keep(t)) out.push_back(cur);
  for (std::size_t i = 0; i < t.arity(); ++i) {
    cur.push_back(static_cast<unsigned>(i + 1));
    collect_positions(t.arg(i), cur, out, keep);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  collect_positions(t, cur, out, [](const Term&) { return true; });
  return out;
}

std::vector<Position> function_positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  collect_positions(t, cur, out, [](const Term& s) { return s.is_function() && !s.is_hole(); });
  return out;
}

std::vector<Position> hole_positions(const Term& t) {
  std::vector<Position> out;
  if (!t.has_holes()) return out;
  Position cur;
  collect_positions(t, cur, out, [](const Term& s) { return s.is_hole(); });
  return out;
}

bool is_valid_position(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (unsigned i : p) {
    if (i == 0 || i > cur->arity()) return false;
    cur = &cur->arg(i - 1);
  }
  return true;
}

const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (unsigned i : p) {
    if (i == 0 || i > cur->arity()) {
      throw std::out_of_range("position " + to_string(p) + " not in " + t.to_string());
    }
    cur = &cur->arg(i - 1);
  }
  return *cur;
}

namespace {

Term replace_from(const Term& t, const Position& p, std::size_t depth, const Term& s) {
  if (depth == p.size()) return s;
  unsigned i = p[depth];
  if (i == 0 || i > t.arity()) {
    throw std::out_of_range("position " + to_string(p) + " not in " + t.to_string());
  }
  std::vector<Term> args(t.args().begin(), t.args().end());
  args[i - 1] = replace_from(args[i - 1], p, depth + 1, s);
  return Term::function(t.name(), std::move(args));
}

void collect_variables(const Term& t, std::vector<std::string>& out, std::set<std::string>& seen) {
  if (t.is_ground()) return;
  if (t.is_variable()) {
    if (seen.insert(t.name()).second) out.push_back(t.name());
    return;
  }
  for (const Term& a : t.args()) collect_variables(a, out, seen);
}

}  // namespace

Term replace_at(const Term& t, const Position& p, const Term& s) { return replace_from(t, p, 0, s); }

std::vector<std::string> variables(const Term& t) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  collect_variables(t, out, seen);
  return out;
}

std::size_t variable_occurrences(const Term& t, const std::string& name) {
  if (t.is_variable()) return t.name() == name ? 1 : 0;
  std::size_t n = 0;
  for (const Term& a : t.args()) n += variable_occurrences(a, name);
  return n;
}

bool is_linear(const Term& t) {
  for (const auto& x : variables(t)) {
    if (variable_occurrences(t, x) > 1) return false;
  }
  return true;
}

std::vector<std::string> function_symbols(const Term& t) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  std::vector<const Term*> stack{&t};
  while (!stack.empty()) {
    const Term* s = stack.back();
    stack.pop_back();
    if (s->is_variable()) continue;
    if (!s->is_hole() && seen.insert(s->name()).second) out.push_back(s->name());
    for (std::size_t i = s->arity(); i-- > 0;) stack.push_back(&s->arg(i));
  }
  return out;
}

void Substitution::bind(const std::string& var, Term t) { map_.insert_or_assign(var, std::move(t)); }

const Term* Substitution::lookup(const std::string& var) const {
  auto it = map_.find(var);
  return it == map_.end() ? nullptr : &it->second;
}

Term Substitution::apply(const Term& t) const {
  if (t.is_ground() || map_.empty()) return t;
  if (t.is_variable()) {
    const Term* s = lookup(t.name());
    return s ? *s : t;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(apply(a));
  return Term::function(t.name(), std::move(args));
}

std::string Substitution::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [x, t] : map_) {
    if (!first) out += ", ";
    first = false;
    out += x + " -> " + t.to_string();
  }
  return out + "}";
}

Signature::Signature(std::initializer_list<Symbol> symbols) {
  for (const Symbol& s : symbols) add(s.name, s.arity);
}

void Signature::add(const std::string& name, std::size_t arity) {
  auto it = index_.find(name);
  if (it != index_.end()) {
    if (symbols_[it->second].arity != arity) {
      throw ArityError("symbol " + name + " used with arity " + std::to_string(arity) +
                       " but declared with arity " + std::to_string(symbols_[it->second].arity));
    }
    return;
  }
  index_.emplace(name, symbols_.size());
  symbols_.push_back({name, arity});
}

void Signature::add_all(const Term& t) {
  if (t.is_variable()) return;
  if (!t.is_hole()) add(t.name(), t.arity());
  for (const Term& a : t.args()) add_all(a);
}

void Signature::merge(const Signature& other) {
  for (const Symbol& s : other.symbols()) add(s.name, s.arity);
}

std::optional<std::size_t> Signature::arity(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return symbols_[it->second].arity;
}

Rule::Rule(Term lhs, Term rhs) : lhs_(std::move(lhs)), rhs_(std::move(rhs)) {
  if (lhs_.is_variable()) throw RuleError("left-hand side is a variable: " + to_string());
  if (lhs_.has_holes() || rhs_.has_holes()) throw RuleError("rule contains a hole: " + to_string());
  const auto lvars = variables(lhs_);
  for (const auto& x : variables(rhs_)) {
    if (std::find(lvars.begin(), lvars.end(), x) == lvars.end()) {
      throw RuleError("variable " + x + " of the right-hand side does not occur on the left: " +
                      to_string());
    }
  }
}

std::string Rule::to_string() const { return lhs_.to_string() + " -> " + rhs_.to_string(); }

Trs::Trs(std::vector<Rule> rules) : rules_(std::move(rules)) {
  for (const Rule& r : rules_) {
    signature_.add_all(r.lhs());
    signature_.add_all(r.rhs());
  }
}

Trs::Trs(Signature signature, std::vector<Rule> rules)
    : signature_(std::move(signature)), rules_(std::move(rules)) {
  for (const Rule& r : rules_) {
    signature_.add_all(r.lhs());
    signature_.add_all(r.rhs());
  }
}

Trs Trs::subset(std::span<const std::size_t> indices) const {
  std::vector<Rule> picked;
  picked.reserve(indices.size());
  for (std::size_t i : indices) picked.push_back(rules_.at(i));
  return Trs(std::move(picked));
}

namespace {

Term rename_canonical(const Term& t, std::map<std::string, std::string>& names) {
  if (t.is_variable()) {
    auto it = names.find(t.name());
    if (it == names.end()) {
      it = names.emplace(t.name(), "x" + std::to_string(names.size() + 1)).first;
    }
    return Term::variable(it->second);
  }
  if (t.is_ground()) return t;
  std::vector<Term> args;
  for (const Term& a : t.args()) args.push_back(rename_canonical(a, names));
  return Term::function(t.name(), std::move(args));
}

}  // namespace

Term canonical_variables(const Term& t) {
  std::map<std::string, std::string> names;
  return rename_canonical(t, names);
}

bool is_variant(const Rule& a, const Rule& b) {
  std::map<std::string, std::string> na;
  std::map<std::string, std::string> nb;
  Term la = rename_canonical(a.lhs(), na);
  Term lb = rename_canonical(b.lhs(), nb);
  return la == lb && rename_canonical(a.rhs(), na) == rename_canonical(b.rhs(), nb);
}

}  // namespace confdec
