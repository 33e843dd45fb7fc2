#pragma once
#include "tcert/order.hpp"
#include "tcert/poly.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tcert {

struct Limits {
    std::uint64_t max_steps = 10000;  // divisor-subtraction steps
    std::uint64_t max_terms = 1000000; // live terms in any intermediate value
};

struct DivisionResult {
    std::vector<Polynomial> quotients;
    Polynomial remainder;
    std::uint64_t steps = 0;
};

// Deterministic multivariate division: at each step the first divisor whose
// leading monomial divides the current leading monomial is used.
DivisionResult divide(const Polynomial& f, const std::vector<Polynomial>& divisors,
                      const MonomialOrder& ord, const Limits& lim = {});

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& ord);

// Every S-polynomial reduces to zero. Coprime leading monomials are not
// assumed away; each pair is reduced. Each pair gets a fresh step budget so
// the verdict does not depend on `parallel`.
bool is_groebner(const std::vector<Polynomial>& basis, const MonomialOrder& ord,
                 const Limits& lim = {}, bool parallel = false);

// Buchberger completion, normal selection strategy: the pair with the
// smallest lcm under the order is processed first, ties by index pair. The
// result is reduced, monic, and sorted by increasing leading monomial.
std::vector<Polynomial> buchberger_complete(const std::vector<Polynomial>& gens,
                                            const MonomialOrder& ord, const Limits& lim = {});

bool ideal_member(const Polynomial& f, const std::vector<Polynomial>& gens,
                  const MonomialOrder& ord, const Limits& lim = {});

// Membership in the localization at the product of `inverted`: adjoins one
// fresh variable u per inverted element, lowest priority, with relation
// u*s - 1.
bool ideal_member_localized(const Polynomial& f, const std::vector<Polynomial>& gens,
                            const std::vector<Polynomial>& inverted, const MonomialOrder& ord,
                            const Limits& lim = {});

struct ClosureSample {
    Polynomial poly;  // over the extended context, already homogenized
    bool pass = false;
    std::int64_t power_used = -1; // exponent of the homogenizer that worked
};

struct ClosureReport {
    bool coprime = false;
    std::optional<std::pair<std::size_t, std::size_t>> offending;
    CtxPtr hctx;
    std::string homogenizer;
    std::vector<Polynomial> homogenized;
    std::vector<ClosureSample> samples;
    bool all_pass() const;
};

// When the leading monomials are pairwise coprime under a graded order, the
// homogenizations of the generators cut out the projective closure. Checks
// coprimality (failing fast with the offending pair), homogenizes with a
// fresh lowest-priority variable, re-verifies the Groebner property, and
// tests each sample h of the affine ideal by locating a power e with
// x0^e * h^hom in the homogenized ideal.
ClosureReport projective_closure_basis(const std::vector<Polynomial>& gens,
                                       const MonomialOrder& ord,
                                       const std::vector<Polynomial>& samples,
                                       const Limits& lim = {});

// One verification step of an isomorphism chain. Substitution steps map each
// lhs polynomial into the target context, multiply by the paired multiplier,
// and compare with the rhs modulo the listed relations. Membership steps
// check two-sided inclusion of the generator lists in the localization at
// `inverted`.
struct IsoSubstStep {
    std::string name;
    std::vector<Polynomial> lhs;
    std::map<std::string, Polynomial> bindings;
    std::vector<Polynomial> multipliers; // empty means all 1
    std::vector<Polynomial> relations;
    std::vector<Polynomial> rhs;
    MonomialOrder order; // on the target context
};

struct IsoMemberStep {
    std::string name;
    std::vector<Polynomial> lhs;
    std::vector<Polynomial> rhs;
    std::vector<Polynomial> inverted;
    MonomialOrder order;
};

using IsoStep = std::variant<IsoSubstStep, IsoMemberStep>;

struct IsoStepResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct IsoChainResult {
    bool ok = false;
    std::vector<IsoStepResult> steps;
};

IsoChainResult verify_iso_chain(const std::vector<IsoStep>& steps, const Limits& lim = {});

// First unused name: base, then base_2, base_3, ...
std::string fresh_name(const VarContext& ctx, const std::string& base,
                       const std::vector<std::string>& also_taken = {});

} // namespace tcert
