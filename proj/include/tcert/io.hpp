#pragma once
#include "tcert/order.hpp"
#include "tcert/poly.hpp"

#include <string>

namespace tcert {

// Expression grammar:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ['^' nat]
//   atom   := integer | identifier | '(' expr ')'
// Identifiers resolve against the context (variable or parameter). The right
// operand of '/' must evaluate to a nonzero constant of the coefficient
// field. Exponents are nonnegative integer literals.
Polynomial parse_poly(const std::string& text, const CtxPtr& ctx);

// Coefficient-only expression: like parse_poly but variables are rejected.
Coefficient parse_coeff(const std::string& text, const CtxPtr& ctx);

// Deterministic rendering, terms in descending order. parse_poly of the
// result reproduces the polynomial exactly.
std::string format_poly(const Polynomial& f, const MonomialOrder& ord);
std::string format_poly(const Polynomial& f); // natural grlex

std::string format_param_poly(const ParamPoly& p, const VarContext& ctx);
std::string format_coeff(const Coefficient& c, const VarContext& ctx);
std::string format_monomial(const Exp& e, const VarContext& ctx); // "1" for the empty one
std::string rat_string(const BigRat& q);

} // namespace tcert
