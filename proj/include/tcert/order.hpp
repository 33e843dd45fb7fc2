#pragma once
#include "tcert/poly.hpp"

#include <compare>
#include <optional>
#include <utility>

namespace tcert {

// Graded order: total degree first, ties broken by the earliest position in
// the priority sequence where the exponents differ (larger wins). The
// priority sequence is a permutation of all variables.
//
// The homogenization extension compares the non-homogenizer part by the base
// graded order and uses the homogenizer exponent only as the final tiebreaker
// (larger wins), so leading monomials are unchanged by homogenizing.
class MonomialOrder {
public:
    static MonomialOrder grlex(CtxPtr ctx);
    static MonomialOrder grlex(CtxPtr ctx, const std::vector<std::string>& priority);
    static MonomialOrder homogenization(const MonomialOrder& base, CtxPtr hctx,
                                        const std::string& homogenizer);

    const CtxPtr& ctx() const { return ctx_; }
    const std::vector<std::size_t>& priority() const { return perm_; }
    std::vector<std::string> priority_names() const;

    std::strong_ordering compare(const Exp& a, const Exp& b) const;
    bool less(const Exp& a, const Exp& b) const {
        return compare(a, b) == std::strong_ordering::less;
    }

private:
    CtxPtr ctx_;
    std::vector<std::size_t> perm_; // perm_[0] = index of the highest-priority variable
    std::optional<std::size_t> hvar_; // homogenizer, excluded from the graded block
};

const Exp& leading_monomial(const Polynomial& f, const MonomialOrder& ord);
std::pair<Exp, Coefficient> leading_term(const Polynomial& f, const MonomialOrder& ord);
Polynomial leading_monomial_poly(const Polynomial& f, const MonomialOrder& ord);

Exp monomial_gcd(const Exp& a, const Exp& b);
Exp monomial_lcm(const Exp& a, const Exp& b);
bool monomial_divides(const Exp& a, const Exp& b); // a | b
bool monomials_coprime(const Exp& a, const Exp& b);

struct CoprimeReport {
    bool coprime = true;
    std::optional<std::pair<std::size_t, std::size_t>> offending; // first (i, j), i < j
};
// Pairwise coprimality of leading monomials; scans pairs in index order and
// reports the first failure.
CoprimeReport pairwise_coprime(const std::vector<Polynomial>& polys, const MonomialOrder& ord);

} // namespace tcert
