#pragma once
#include "tcert/certify.hpp"
#include "tcert/construct.hpp"
#include "tcert/groebner.hpp"

#include <json.hpp>

namespace tcert {

using ordered_json = nlohmann::ordered_json;

ordered_json vars_to_json(const VarContext& ctx);
ordered_json params_to_json(const VarContext& ctx);
CtxPtr ctx_from_json(const ordered_json& vars, const ordered_json& params);

// Standalone polynomial object: vars, params, terms, with the numerator and
// denominator of each coefficient as expression text.
ordered_json poly_to_json(const Polynomial& f);
Polynomial poly_from_json(const ordered_json& j);
ordered_json poly_terms_json(const Polynomial& f); // terms array only
Polynomial poly_from_terms_json(const ordered_json& terms, const CtxPtr& ctx);

ordered_json order_to_json(const MonomialOrder& ord);
MonomialOrder order_from_json(const ordered_json& j, const CtxPtr& ctx);

ordered_json recipe_to_json(const Recipe& r);
Recipe recipe_from_json(const ordered_json& j);

ordered_json family_to_json(const GeneratedFamily& fam);

ordered_json closure_report_to_json(const ClosureReport& rep);
ordered_json certificate_to_json(const Certificate& cert);
ordered_json witness_result_to_json(const WitnessResult& res);
ordered_json chain_result_to_json(const IsoChainResult& res);
ordered_json identity_report_to_json(const IdentityReport& rep);

// A polynomial system file: vars, params, optional order, and polynomials
// given as expression text or as term arrays.
struct PolySystem {
    CtxPtr ctx;
    std::vector<Polynomial> polys;
    MonomialOrder order;
};
PolySystem system_from_json(const ordered_json& j);

WitnessCheck witness_from_json(const ordered_json& j);
std::vector<IsoStep> chain_from_json(const ordered_json& j);

} // namespace tcert
