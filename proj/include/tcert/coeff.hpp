#pragma once
#include "tcert/context.hpp"
#include "tcert/errors.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <vector>

namespace tcert {

using Exp = std::vector<std::int64_t>;

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
BigRat rat_pow(const BigRat& base, std::int64_t e);

// Polynomial in the declared parameters with rational coefficients.
// Exponent vectors always have length ctx.nparams(); parameter rewrites are
// applied eagerly, so stored exponents are below their rewrite bounds.
class ParamPoly {
public:
    std::map<Exp, BigRat> terms;

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const;
    // The rational value if constant (zero poly gives 0).
    BigRat constant_value() const;
    std::int64_t total_degree() const; // 0 for the zero poly

    static ParamPoly zero(const VarContext& ctx);
    static ParamPoly constant(const VarContext& ctx, const BigRat& c);
    static ParamPoly parameter(const VarContext& ctx, std::size_t idx);

    bool operator==(const ParamPoly& o) const { return terms == o.terms; }
};

// Graded-lexicographic comparison of parameter exponent vectors in
// declaration order.
std::strong_ordering pexp_compare(const Exp& a, const Exp& b);

ParamPoly pp_add(const ParamPoly& a, const ParamPoly& b);
ParamPoly pp_neg(const ParamPoly& a);
ParamPoly pp_sub(const ParamPoly& a, const ParamPoly& b);
ParamPoly pp_mul(const ParamPoly& a, const ParamPoly& b, const VarContext& ctx);
ParamPoly pp_scale(const ParamPoly& a, const BigRat& c);
// Apply parameter rewrites and drop zero coefficients.
ParamPoly pp_normalize(ParamPoly a, const VarContext& ctx);
// Substitute rational values for a subset of parameters (by index).
ParamPoly pp_eval(const ParamPoly& a, const std::map<std::size_t, BigRat>& values,
                  const VarContext& ctx);
// Remap onto another context: position i in `a` becomes position map[i].
ParamPoly pp_remap(const ParamPoly& a, const std::vector<std::size_t>& map,
                   std::size_t target_arity);
const BigRat& pp_leading_coeff(const ParamPoly& a); // under pexp_compare; a != 0

// Exact scalar: a fraction num/den of parameter polynomials in canonical
// form. Canonical means: rewrites applied; no monomial in the parameters
// divides every term of both num and den without being cancelled; integer
// content 1; the leading coefficient of den is positive. Full multivariate
// gcd cancellation is not attempted, so equal values can in principle have
// distinct representations, but a zero numerator always means the value is
// zero, which keeps every equality-with-zero verdict exact.
class Coefficient {
public:
    ParamPoly num, den;

    Coefficient() = default; // zero with empty den; use factories instead

    static Coefficient from_int(const VarContext& ctx, const BigInt& v);
    static Coefficient from_rat(const VarContext& ctx, const BigRat& v);
    static Coefficient parameter(const VarContext& ctx, std::size_t idx);
    static Coefficient make(ParamPoly num, ParamPoly den, const VarContext& ctx);

    bool is_zero() const { return num.is_zero(); }
    bool is_one() const;
    bool is_rational() const { return num.is_constant() && den.is_constant(); }
    BigRat rational_value() const; // requires is_rational()
    // Sign of the leading numerator coefficient; 0 for zero.
    int sign() const;

    bool operator==(const Coefficient& o) const { return num == o.num && den == o.den; }
};

Coefficient coeff_add(const Coefficient& a, const Coefficient& b, const VarContext& ctx);
Coefficient coeff_neg(const Coefficient& a, const VarContext& ctx);
Coefficient coeff_sub(const Coefficient& a, const Coefficient& b, const VarContext& ctx);
Coefficient coeff_mul(const Coefficient& a, const Coefficient& b, const VarContext& ctx);
Coefficient coeff_div(const Coefficient& a, const Coefficient& b, const VarContext& ctx);
Coefficient coeff_inv(const Coefficient& a, const VarContext& ctx);
Coefficient coeff_remap(const Coefficient& a, const std::vector<std::size_t>& map,
                        const VarContext& target);
Coefficient coeff_eval(const Coefficient& a, const std::map<std::size_t, BigRat>& values,
                       const VarContext& ctx);

} // namespace tcert
