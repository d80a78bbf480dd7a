#pragma once

#include <optional>
#include <string>

#include "confdec/term.hpp"

namespace confdec {

// Currying and partial parametrization. The application symbol is `@`; the
// partial application of f to i < ari(f) arguments is `f^i`, and f applied to
// all of its arguments is f itself. Constants are left unchanged.

std::string partial_symbol(const std::string& base, std::size_t applied, std::size_t arity);

/// A symbol of the partially parametrized signature, decoded.
struct PartialSymbol {
  std::string base;
  std::size_t applied;
  std::size_t arity;  // arity of `base` in the original signature
};

/// Decodes `f^i` (or f itself) against the original signature.
std::optional<PartialSymbol> decode_partial(const Signature& original, const std::string& name);

/// Throws SignatureCollisionError if `original` already uses `@` or `f^i` names.
void check_curry_names(const Signature& original);

/// {@} ∪ {f^0 | f ∈ F} (with f^0 = f for constants).
Signature curried_signature(const Signature& original);
/// {@} ∪ {f^i | f ∈ F, 0 ≤ i ≤ ari(f)}.
Signature pp_signature(const Signature& original);

Term curry_term(const Term& t);
Trs curry_trs(const Trs& trs);
/// @(f^i(x1,...,xi), x{i+1}) -> f^{i+1}(x1,...,x{i+1}) for all f and i < ari(f).
Trs uncurry_rules(const Signature& original);
/// R ∪ U over the partially parametrized signature.
Trs partial_parametrization(const Trs& trs);

/// The unique U-normal form (innermost reduction).
Term u_normal_form(const Signature& original, const Term& t);

}  // namespace confdec
