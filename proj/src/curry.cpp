#include "confdec/curry.hpp"

#include <charconv>

#include "confdec/error.hpp"

namespace confdec {

std::string partial_symbol(const std::string& base, std::size_t applied, std::size_t arity) {
  if (applied >= arity) return base;
  return base + "^" + std::to_string(applied);
}

std::optional<PartialSymbol> decode_partial(const Signature& original, const std::string& name) {
  if (auto arity = original.arity(name)) return PartialSymbol{name, *arity, *arity};
  auto caret = name.rfind('^');
  if (caret == std::string::npos || caret == 0) return std::nullopt;
  std::string base = name.substr(0, caret);
  auto arity = original.arity(base);
  if (!arity) return std::nullopt;
  std::size_t applied = 0;
  const char* first = name.data() + caret + 1;
  const char* last = name.data() + name.size();
  auto [ptr, ec] = std::from_chars(first, last, applied);
  if (ec != std::errc() || ptr != last || first == last || applied >= *arity) return std::nullopt;
  return PartialSymbol{base, applied, *arity};
}

void check_curry_names(const Signature& original) {
  for (const Symbol& s : original.symbols()) {
    if (s.name == kApplication || s.name.find('^') != std::string::npos) {
      throw SignatureCollisionError("symbol " + s.name + " collides with the currying names");
    }
  }
}

Signature curried_signature(const Signature& original) {
  Signature out;
  out.add(std::string(kApplication), 2);
  for (const Symbol& s : original.symbols()) out.add(partial_symbol(s.name, 0, s.arity), 0);
  return out;
}

Signature pp_signature(const Signature& original) {
  Signature out;
  out.add(std::string(kApplication), 2);
  for (const Symbol& s : original.symbols()) {
    for (std::size_t i = 0; i <= s.arity; ++i) out.add(partial_symbol(s.name, i, s.arity), i);
  }
  return out;
}

Term curry_term(const Term& t) {
  if (t.is_variable() || t.arity() == 0) return t;
  Term acc = Term::function(partial_symbol(t.name(), 0, t.arity()));
  for (const Term& a : t.args()) {
    acc = Term::function(std::string(kApplication), {acc, curry_term(a)});
  }
  return acc;
}

Trs curry_trs(const Trs& trs) {
  check_curry_names(trs.signature());
  std::vector<Rule> rules;
  rules.reserve(trs.size());
  for (const Rule& r : trs.rules()) rules.emplace_back(curry_term(r.lhs()), curry_term(r.rhs()));
  return Trs(curried_signature(trs.signature()), std::move(rules));
}

Trs uncurry_rules(const Signature& original) {
  check_curry_names(original);
  std::vector<Rule> rules;
  for (const Symbol& s : original.symbols()) {
    for (std::size_t i = 0; i < s.arity; ++i) {
      std::vector<Term> xs;
      for (std::size_t k = 1; k <= i + 1; ++k) xs.push_back(Term::variable("x" + std::to_string(k)));
      std::vector<Term> head_args(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(i));
      Term head = Term::function(partial_symbol(s.name, i, s.arity), std::move(head_args));
      Term lhs = Term::function(std::string(kApplication), {head, xs.back()});
      Term rhs = Term::function(partial_symbol(s.name, i + 1, s.arity), xs);
      rules.emplace_back(std::move(lhs), std::move(rhs));
    }
  }
  return Trs(pp_signature(original), std::move(rules));
}

Trs partial_parametrization(const Trs& trs) {
  Trs u = uncurry_rules(trs.signature());
  std::vector<Rule> rules = trs.rules();
  rules.insert(rules.end(), u.rules().begin(), u.rules().end());
  return Trs(pp_signature(trs.signature()), std::move(rules));
}

Term u_normal_form(const Signature& original, const Term& t) {
  if (t.is_variable() || t.arity() == 0) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(u_normal_form(original, a));
  if (t.name() == kApplication && args.size() == 2 && args[0].is_function()) {
    if (auto head = decode_partial(original, args[0].name());
        head && head->applied < head->arity && args[0].arity() == head->applied) {
      std::vector<Term> spine(args[0].args().begin(), args[0].args().end());
      spine.push_back(args[1]);
      // The result is rooted by f^{i+1}, whose arguments are already normal.
      return Term::function(partial_symbol(head->base, head->applied + 1, head->arity), std::move(spine));
    }
  }
  return Term::function(t.name(), std::move(args));
}

}  // namespace confdec
