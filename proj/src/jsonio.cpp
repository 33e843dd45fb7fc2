#include "tcert/jsonio.hpp"
#include "tcert/io.hpp"

#include <algorithm>

namespace tcert {

namespace {

BigRat rat_from_string(const std::string& s) {
    try {
        return BigRat(s);
    } catch (const std::exception&) {
        throw input_error("bad rational literal: '" + s + "'");
    }
}

const ordered_json& need(const ordered_json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        throw input_error(std::string("missing field '") + key + "'");
    return *it;
}

std::string need_string(const ordered_json& j, const char* key) {
    const auto& v = need(j, key);
    if (!v.is_string())
        throw input_error(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

std::int64_t need_int(const ordered_json& j, const char* key) {
    const auto& v = need(j, key);
    if (!v.is_number_integer())
        throw input_error(std::string("field '") + key + "' must be an integer");
    return v.get<std::int64_t>();
}

Polynomial poly_from_entry(const ordered_json& v, const CtxPtr& ctx) {
    if (v.is_string()) return parse_poly(v.get<std::string>(), ctx);
    if (v.is_array()) return poly_from_terms_json(v, ctx);
    if (v.is_object() && v.contains("terms"))
        return poly_from_terms_json(v.at("terms"), ctx);
    throw input_error("a polynomial must be expression text or a term array");
}

std::vector<Polynomial> polys_from_entry(const ordered_json& j, const char* key,
                                         const CtxPtr& ctx) {
    const auto& arr = need(j, key);
    if (!arr.is_array())
        throw input_error(std::string("field '") + key + "' must be an array");
    std::vector<Polynomial> out;
    for (const auto& v : arr) out.push_back(poly_from_entry(v, ctx));
    return out;
}

} // namespace

ordered_json vars_to_json(const VarContext& ctx) {
    ordered_json arr = ordered_json::array();
    for (const auto& v : ctx.vars()) arr.push_back({{"name", v.name}, {"block", v.block}});
    return arr;
}

ordered_json params_to_json(const VarContext& ctx) {
    ordered_json arr = ordered_json::array();
    for (const auto& p : ctx.params()) {
        ordered_json rj;
        if (p.rewrite)
            rj = ordered_json{{"exp", p.rewrite->exp}, {"to", rat_string(p.rewrite->to)}};
        else
            rj = nullptr;
        arr.push_back({{"name", p.name}, {"rewrite", rj}});
    }
    return arr;
}

CtxPtr ctx_from_json(const ordered_json& vars, const ordered_json& params) {
    if (!vars.is_array()) throw input_error("'vars' must be an array");
    std::vector<VarDecl> vs;
    for (const auto& v : vars) {
        if (v.is_string()) {
            vs.push_back(VarDecl{v.get<std::string>(), 0});
        } else {
            VarDecl d;
            d.name = need_string(v, "name");
            d.block = v.contains("block") ? static_cast<int>(need_int(v, "block")) : 0;
            vs.push_back(std::move(d));
        }
    }
    std::vector<ParamDecl> ps;
    if (!params.is_null()) {
        if (!params.is_array()) throw input_error("'params' must be an array");
        for (const auto& p : params) {
            ParamDecl d;
            if (p.is_string()) {
                d.name = p.get<std::string>();
            } else {
                d.name = need_string(p, "name");
                if (p.contains("rewrite") && !p.at("rewrite").is_null()) {
                    const auto& r = p.at("rewrite");
                    d.rewrite = ParamRewrite{need_int(r, "exp"),
                                             rat_from_string(need_string(r, "to"))};
                }
            }
            ps.push_back(std::move(d));
        }
    }
    return VarContext::make(std::move(vs), std::move(ps));
}

ordered_json poly_terms_json(const Polynomial& f) {
    const auto& ctx = *f.ctx();
    MonomialOrder ord = MonomialOrder::grlex(f.ctx());
    std::vector<const Exp*> keys;
    for (const auto& [e, c] : f.terms()) keys.push_back(&e);
    std::sort(keys.begin(), keys.end(),
              [&](const Exp* a, const Exp* b) { return ord.less(*b, *a); });
    ordered_json arr = ordered_json::array();
    for (const Exp* e : keys) {
        const Coefficient& c = f.terms().at(*e);
        arr.push_back({{"exp", *e},
                       {"num", format_param_poly(c.num, ctx)},
                       {"den", format_param_poly(c.den, ctx)}});
    }
    return arr;
}

ordered_json poly_to_json(const Polynomial& f) {
    return ordered_json{{"vars", vars_to_json(*f.ctx())},
                        {"params", params_to_json(*f.ctx())},
                        {"terms", poly_terms_json(f)}};
}

Polynomial poly_from_terms_json(const ordered_json& terms, const CtxPtr& ctx) {
    if (!terms.is_array()) throw input_error("'terms' must be an array");
    Polynomial f(ctx);
    for (const auto& t : terms) {
        const auto& ej = need(t, "exp");
        if (!ej.is_array() || ej.size() != ctx->nvars())
            throw input_error("term exponent vector has the wrong length");
        Exp e;
        for (const auto& v : ej) {
            if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
                throw input_error("exponents must be nonnegative integers");
            e.push_back(v.get<std::int64_t>());
        }
        Coefficient num = parse_coeff(need_string(t, "num"), ctx);
        Coefficient den = t.contains("den") ? parse_coeff(need_string(t, "den"), ctx)
                                            : Coefficient::from_int(*ctx, 1);
        f.add_term(std::move(e), coeff_div(num, den, *ctx));
    }
    return f;
}

Polynomial poly_from_json(const ordered_json& j) {
    CtxPtr ctx = ctx_from_json(need(j, "vars"),
                               j.contains("params") ? j.at("params") : ordered_json(nullptr));
    return poly_from_terms_json(need(j, "terms"), ctx);
}

ordered_json order_to_json(const MonomialOrder& ord) {
    return ordered_json{{"priority", ord.priority_names()}};
}

MonomialOrder order_from_json(const ordered_json& j, const CtxPtr& ctx) {
    if (j.is_null()) return MonomialOrder::grlex(ctx);
    const auto& pr = need(j, "priority");
    if (!pr.is_array()) throw input_error("'priority' must be an array of names");
    std::vector<std::string> names;
    for (const auto& v : pr) {
        if (!v.is_string()) throw input_error("'priority' must be an array of names");
        names.push_back(v.get<std::string>());
    }
    return MonomialOrder::grlex(ctx, names);
}

ordered_json recipe_to_json(const Recipe& r) {
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : r.iparams) params[k] = v;
    for (const auto& [k, v] : r.vparams) params[k] = v;
    ordered_json choices{{"g", r.choice_g ? ordered_json(*r.choice_g) : ordered_json(nullptr)},
                         {"h", r.choice_h ? ordered_json(*r.choice_h) : ordered_json(nullptr)}};
    return ordered_json{
        {"family", family_name(r.family)}, {"params", params}, {"choices", choices}};
}

Recipe recipe_from_json(const ordered_json& j) {
    Recipe r;
    r.family = family_from_name(need_string(j, "family"));
    if (j.contains("params")) {
        const auto& params = j.at("params");
        if (!params.is_object()) throw input_error("'params' must be an object");
        for (auto it = params.begin(); it != params.end(); ++it) {
            if (it.value().is_number_integer()) {
                r.iparams[it.key()] = it.value().get<std::int64_t>();
            } else if (it.value().is_array()) {
                std::vector<std::int64_t> v;
                for (const auto& x : it.value()) {
                    if (!x.is_number_integer())
                        throw input_error("recipe list parameters must hold integers");
                    v.push_back(x.get<std::int64_t>());
                }
                r.vparams[it.key()] = std::move(v);
            } else {
                throw input_error("recipe parameters must be integers or integer lists");
            }
        }
    }
    if (j.contains("choices")) {
        const auto& ch = j.at("choices");
        if (ch.contains("g") && !ch.at("g").is_null())
            r.choice_g = ch.at("g").get<std::string>();
        if (ch.contains("h") && !ch.at("h").is_null())
            r.choice_h = ch.at("h").get<std::string>();
    }
    return r;
}

ordered_json family_to_json(const GeneratedFamily& fam) {
    ordered_json polys = ordered_json::array();
    for (const auto& p : fam.polys)
        polys.push_back(
            {{"text", format_poly(p, fam.order)}, {"terms", poly_terms_json(p)}});
    return ordered_json{
        {"family", family_name(fam.recipe.family)},
        {"vars", vars_to_json(*fam.ctx)},
        {"params", params_to_json(*fam.ctx)},
        {"order", order_to_json(fam.order)},
        {"polys", polys},
        {"designated",
         fam.designated.empty() ? ordered_json(nullptr) : ordered_json(fam.designated)},
        {"obstruction", format_poly(fam.obstruction, fam.order)},
        {"claims_coprime", fam.claims_coprime},
        {"multidegree", fam.multidegree},
        {"recipe", recipe_to_json(fam.recipe)}};
}

ordered_json closure_report_to_json(const ClosureReport& rep) {
    ordered_json offending;
    if (rep.offending)
        offending = ordered_json::array({rep.offending->first, rep.offending->second});
    else
        offending = nullptr;
    ordered_json vars = ordered_json::array();
    ordered_json params = ordered_json::array();
    ordered_json homog = ordered_json::array();
    ordered_json samples = ordered_json::array();
    if (rep.hctx) { // absent when the coprimality check already failed
        MonomialOrder ord = MonomialOrder::grlex(rep.hctx);
        vars = vars_to_json(*rep.hctx);
        params = params_to_json(*rep.hctx);
        for (const auto& p : rep.homogenized) homog.push_back(format_poly(p, ord));
        for (const auto& s : rep.samples)
            samples.push_back({{"poly", format_poly(s.poly, ord)}, {"pass", s.pass}});
    }
    return ordered_json{{"vars", vars},
                        {"params", params},
                        {"coprime", rep.coprime},
                        {"offending", offending},
                        {"homogenized", homog},
                        {"samples", samples}};
}

ordered_json certificate_to_json(const Certificate& cert) {
    return ordered_json{
        {"certified", cert.certified},
        {"theorem", theorem_name(cert.theorem)},
        {"witness_n", cert.witness_n ? ordered_json(*cert.witness_n) : ordered_json(nullptr)},
        {"fano_index", cert.fano_index},
        {"upper_bound",
         cert.upper_bound ? ordered_json(cert.upper_bound->str()) : ordered_json(nullptr)},
        {"caveats", cert.caveats}};
}

ordered_json witness_result_to_json(const WitnessResult& res) {
    std::string residual =
        res.residual.ctx() ? format_poly(res.residual, MonomialOrder::grlex(res.residual.ctx()))
                           : "0";
    return ordered_json{{"ok", res.ok}, {"residual", residual}, {"log", res.log}};
}

ordered_json chain_result_to_json(const IsoChainResult& res) {
    ordered_json steps = ordered_json::array();
    for (const auto& s : res.steps)
        steps.push_back({{"name", s.name}, {"ok", s.ok}, {"detail", s.detail}});
    return ordered_json{{"ok", res.ok}, {"steps", steps}};
}

ordered_json identity_report_to_json(const IdentityReport& rep) {
    return ordered_json{{"ok", rep.ok}, {"checks", rep.checks}, {"failures", rep.failures}};
}

PolySystem system_from_json(const ordered_json& j) {
    PolySystem sys;
    sys.ctx = ctx_from_json(need(j, "vars"),
                            j.contains("params") ? j.at("params") : ordered_json(nullptr));
    sys.order = order_from_json(j.contains("order") ? j.at("order") : ordered_json(nullptr),
                                sys.ctx);
    sys.polys = polys_from_entry(j, "polys", sys.ctx);
    return sys;
}

WitnessCheck witness_from_json(const ordered_json& j) {
    WitnessCheck w;
    w.ctx = ctx_from_json(need(j, "vars"),
                          j.contains("params") ? j.at("params") : ordered_json(nullptr));
    w.targets = polys_from_entry(j, "targets", w.ctx);
    const auto& binds = need(j, "bindings");
    if (!binds.is_array()) throw input_error("'bindings' must be an array");
    for (const auto& b : binds)
        w.bindings.emplace_back(need_string(b, "var"),
                                poly_from_entry(need(b, "value"), w.ctx));
    w.expect_var = need_string(j, "expect_var");
    if (j.contains("notes"))
        for (const auto& n : j.at("notes")) w.notes.push_back(n.get<std::string>());
    return w;
}

std::vector<IsoStep> chain_from_json(const ordered_json& j) {
    const auto& steps = need(j, "steps");
    if (!steps.is_array()) throw input_error("'steps' must be an array");
    std::vector<IsoStep> out;
    for (const auto& s : steps) {
        std::string kind = need_string(s, "kind");
        if (kind == "subst") {
            const auto& src = need(s, "source");
            CtxPtr sctx =
                ctx_from_json(need(src, "vars"),
                              src.contains("params") ? src.at("params") : ordered_json(nullptr));
            const auto& tgt = need(s, "target");
            CtxPtr tctx =
                ctx_from_json(need(tgt, "vars"),
                              tgt.contains("params") ? tgt.at("params") : ordered_json(nullptr));
            IsoSubstStep step;
            step.name = s.contains("name") ? s.at("name").get<std::string>() : "subst";
            step.lhs = polys_from_entry(s, "lhs", sctx);
            const auto& binds = need(s, "bindings");
            for (const auto& b : binds)
                step.bindings.emplace(need_string(b, "var"),
                                      poly_from_entry(need(b, "value"), tctx));
            if (s.contains("multipliers") && !s.at("multipliers").is_null())
                step.multipliers = polys_from_entry(s, "multipliers", tctx);
            if (s.contains("relations") && !s.at("relations").is_null())
                step.relations = polys_from_entry(s, "relations", tctx);
            step.rhs = polys_from_entry(s, "rhs", tctx);
            step.order = order_from_json(
                s.contains("order") ? s.at("order") : ordered_json(nullptr), tctx);
            out.emplace_back(std::move(step));
        } else if (kind == "member") {
            CtxPtr ctx =
                ctx_from_json(need(s, "vars"),
                              s.contains("params") ? s.at("params") : ordered_json(nullptr));
            IsoMemberStep step;
            step.name = s.contains("name") ? s.at("name").get<std::string>() : "member";
            step.lhs = polys_from_entry(s, "lhs", ctx);
            step.rhs = polys_from_entry(s, "rhs", ctx);
            if (s.contains("inverted") && !s.at("inverted").is_null())
                step.inverted = polys_from_entry(s, "inverted", ctx);
            step.order = order_from_json(
                s.contains("order") ? s.at("order") : ordered_json(nullptr), ctx);
            out.emplace_back(std::move(step));
        } else {
            throw input_error("step kind must be 'subst' or 'member'");
        }
    }
    return out;
}

} // namespace tcert
