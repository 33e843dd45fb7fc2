#include "tcert/poly.hpp"

#include <algorithm>

namespace tcert {

static void require_ctx(const CtxPtr& ctx) {
    if (!ctx) throw input_error("polynomial has no context");
}

Polynomial Polynomial::constant(CtxPtr ctx, const BigRat& v) {
    require_ctx(ctx);
    Polynomial p(ctx);
    if (v != 0) p.terms_.emplace(Exp(ctx->nvars(), 0), Coefficient::from_rat(*ctx, v));
    return p;
}

Polynomial Polynomial::from_coeff(CtxPtr ctx, Coefficient c) {
    require_ctx(ctx);
    Polynomial p(ctx);
    if (!c.is_zero()) p.terms_.emplace(Exp(ctx->nvars(), 0), std::move(c));
    return p;
}

Polynomial Polynomial::variable(CtxPtr ctx, std::size_t idx, std::int64_t power) {
    require_ctx(ctx);
    if (idx >= ctx->nvars()) throw input_error("variable index out of range");
    if (power < 0) throw input_error("negative exponent");
    Polynomial p(ctx);
    Exp e(ctx->nvars(), 0);
    e[idx] = power;
    p.terms_.emplace(std::move(e), Coefficient::from_int(*ctx, 1));
    return p;
}

Polynomial Polynomial::variable(CtxPtr ctx, const std::string& name, std::int64_t power) {
    require_ctx(ctx);
    auto idx = ctx->var_index(name);
    if (!idx) throw input_error("unknown variable: '" + name + "'");
    return variable(ctx, *idx, power);
}

Polynomial Polynomial::parameter(CtxPtr ctx, const std::string& name) {
    require_ctx(ctx);
    auto idx = ctx->param_index(name);
    if (!idx) throw input_error("unknown parameter: '" + name + "'");
    return from_coeff(ctx, Coefficient::parameter(*ctx, *idx));
}

Polynomial Polynomial::term(CtxPtr ctx, Exp e, Coefficient c) {
    require_ctx(ctx);
    if (e.size() != ctx->nvars()) throw input_error("exponent arity mismatch");
    for (auto x : e)
        if (x < 0) throw input_error("negative exponent");
    Polynomial p(ctx);
    if (!c.is_zero()) p.terms_.emplace(std::move(e), std::move(c));
    return p;
}

void Polynomial::add_term(Exp e, const Coefficient& c) {
    require_ctx(ctx_);
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(std::move(e), c);
        return;
    }
    Coefficient s = coeff_add(it->second, c, *ctx_);
    if (s.is_zero())
        terms_.erase(it);
    else
        it->second = std::move(s);
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (!same_context(ctx_, o.ctx_)) return false;
    return terms_ == o.terms_;
}

void check_same_context(const Polynomial& a, const Polynomial& b, const char* where) {
    if (!same_context(a.ctx(), b.ctx()))
        throw input_error(std::string("context mismatch in ") + where);
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    check_same_context(a, b, "addition");
    Polynomial r = a;
    for (const auto& [e, c] : b.terms()) r.add_term(e, c);
    return r;
}

Polynomial operator-(const Polynomial& a) {
    Polynomial r(a.ctx());
    for (const auto& [e, c] : a.terms()) r.add_term(e, coeff_neg(c, *a.ctx()));
    return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_same_context(a, b, "multiplication");
    Polynomial r(a.ctx());
    const auto& ctx = *a.ctx();
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) {
            Exp e(ea.size());
            for (std::size_t i = 0; i < ea.size(); ++i) e[i] = checked_add(ea[i], eb[i]);
            r.add_term(std::move(e), coeff_mul(ca, cb, ctx));
        }
    return r;
}

Polynomial poly_pow(const Polynomial& a, std::int64_t e) {
    if (e < 0) throw input_error("negative exponent");
    Polynomial acc = Polynomial::constant(a.ctx(), 1);
    Polynomial sq = a;
    std::int64_t k = e;
    while (k > 0) {
        if (k & 1) acc = acc * sq;
        k >>= 1;
        if (k) sq = sq * sq;
    }
    return acc;
}

Polynomial scale(const Polynomial& a, const Coefficient& c) {
    Polynomial r(a.ctx());
    if (c.is_zero()) return r;
    for (const auto& [e, v] : a.terms()) r.add_term(e, coeff_mul(v, c, *a.ctx()));
    return r;
}

Polynomial scale(const Polynomial& a, const BigRat& c) {
    return scale(a, Coefficient::from_rat(*a.ctx(), c));
}

std::int64_t term_total_degree(const Exp& e) {
    std::int64_t s = 0;
    for (auto x : e) s = checked_add(s, x);
    return s;
}

Degrees degrees(const Polynomial& f) {
    Degrees d;
    const auto& ctx = *f.ctx();
    int nb = std::max(ctx.block_count(), f.is_zero() ? 0 : 1);
    d.by_block.assign(static_cast<std::size_t>(nb), std::nullopt);
    if (f.is_zero()) return d;
    std::int64_t total = -1;
    std::vector<std::int64_t> bd(static_cast<std::size_t>(nb), -1);
    for (const auto& [e, c] : f.terms()) {
        std::int64_t s = term_total_degree(e);
        if (s > total) total = s;
        std::vector<std::int64_t> bs(static_cast<std::size_t>(nb), 0);
        for (std::size_t i = 0; i < e.size(); ++i)
            bs[static_cast<std::size_t>(ctx.vars()[i].block)] =
                checked_add(bs[static_cast<std::size_t>(ctx.vars()[i].block)], e[i]);
        for (std::size_t b = 0; b < bs.size(); ++b)
            if (bs[b] > bd[b]) bd[b] = bs[b];
    }
    d.total = total;
    for (std::size_t b = 0; b < bd.size(); ++b) d.by_block[b] = bd[b];
    return d;
}

std::optional<std::int64_t> degree_in_var(const Polynomial& f, std::size_t idx) {
    if (f.is_zero()) return std::nullopt;
    if (idx >= f.ctx()->nvars()) throw input_error("variable index out of range");
    std::int64_t d = 0;
    for (const auto& [e, c] : f.terms())
        if (e[idx] > d) d = e[idx];
    return d;
}

static std::vector<std::size_t> param_map_into(const VarContext& from, const VarContext& to,
                                               const char* where) {
    std::vector<std::size_t> pm(from.nparams());
    for (std::size_t j = 0; j < from.nparams(); ++j) {
        const auto& p = from.params()[j];
        auto t = to.param_index(p.name);
        if (!t) throw input_error(std::string(where) + ": parameter '" + p.name +
                                  "' absent from target context");
        if (!(to.params()[*t].rewrite == p.rewrite))
            throw input_error(std::string(where) + ": parameter '" + p.name +
                              "' has a different rewrite in the target context");
        pm[j] = *t;
    }
    return pm;
}

Polynomial substitute(const Polynomial& f, const std::map<std::string, Polynomial>& bindings,
                      CtxPtr target) {
    const auto& ctx = *f.ctx();
    CtxPtr tctx = target;
    for (const auto& [name, val] : bindings) {
        if (!ctx.var_index(name))
            throw input_error("substitute: '" + name + "' is not a variable of the polynomial");
        if (!tctx)
            tctx = val.ctx();
        else if (!same_context(tctx, val.ctx()))
            throw input_error("substitute: binding values live in different contexts");
    }
    if (!tctx) tctx = f.ctx();

    const std::size_t n = ctx.nvars();
    std::vector<const Polynomial*> bound(n, nullptr);
    std::vector<std::optional<std::size_t>> pass(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto it = bindings.find(ctx.vars()[i].name);
        if (it != bindings.end()) {
            bound[i] = &it->second;
        } else {
            pass[i] = tctx->var_index(ctx.vars()[i].name);
            if (!pass[i])
                throw input_error("substitute: unbound variable '" + ctx.vars()[i].name +
                                  "' absent from target context");
        }
    }
    auto pm = param_map_into(ctx, *tctx, "substitute");

    std::map<std::size_t, std::vector<Polynomial>> powers;
    auto power_of = [&](std::size_t i, std::int64_t e) -> const Polynomial& {
        auto& v = powers[i];
        if (v.empty()) v.push_back(Polynomial::constant(tctx, 1));
        while (static_cast<std::int64_t>(v.size()) <= e) v.push_back(v.back() * *bound[i]);
        return v[static_cast<std::size_t>(e)];
    };

    Polynomial result(tctx);
    for (const auto& [e, c] : f.terms()) {
        Exp base(tctx->nvars(), 0);
        for (std::size_t i = 0; i < n; ++i)
            if (e[i] != 0 && pass[i]) base[*pass[i]] = checked_add(base[*pass[i]], e[i]);
        Polynomial acc = Polynomial::term(tctx, std::move(base), coeff_remap(c, pm, *tctx));
        for (std::size_t i = 0; i < n; ++i)
            if (e[i] != 0 && bound[i]) acc = acc * power_of(i, e[i]);
        result = result + acc;
    }
    return result;
}

Polynomial embed(const Polynomial& f, const CtxPtr& target) {
    const auto& ctx = *f.ctx();
    if (same_context(f.ctx(), target)) {
        Polynomial r(target);
        for (const auto& [e, c] : f.terms()) r.add_term(e, c);
        return r;
    }
    std::vector<std::size_t> vm(ctx.nvars());
    for (std::size_t i = 0; i < ctx.nvars(); ++i) {
        auto t = target->var_index(ctx.vars()[i].name);
        if (!t) throw input_error("embed: variable '" + ctx.vars()[i].name +
                                  "' absent from target context");
        vm[i] = *t;
    }
    auto pm = param_map_into(ctx, *target, "embed");
    Polynomial r(target);
    for (const auto& [e, c] : f.terms()) {
        Exp t(target->nvars(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) t[vm[i]] = e[i];
        r.add_term(std::move(t), coeff_remap(c, pm, *target));
    }
    return r;
}

Polynomial with_context(const Polynomial& f, const CtxPtr& renamed) {
    if (renamed->nvars() != f.ctx()->nvars() || renamed->nparams() != f.ctx()->nparams())
        throw input_error("with_context: arity mismatch");
    Polynomial r(renamed);
    std::vector<std::size_t> pm(f.ctx()->nparams());
    for (std::size_t j = 0; j < pm.size(); ++j) pm[j] = j;
    for (const auto& [e, c] : f.terms()) r.add_term(e, coeff_remap(c, pm, *renamed));
    return r;
}

Polynomial partial_derivative(const Polynomial& f, const std::string& var) {
    auto idx = f.ctx()->var_index(var);
    if (!idx) throw input_error("unknown variable: '" + var + "'");
    Polynomial r(f.ctx());
    for (const auto& [e, c] : f.terms()) {
        if (e[*idx] == 0) continue;
        Exp d = e;
        d[*idx] -= 1;
        r.add_term(std::move(d),
                   coeff_mul(c, Coefficient::from_int(*f.ctx(), e[*idx]), *f.ctx()));
    }
    return r;
}

static CtxPtr extend_vars(const VarContext& ctx, const std::vector<VarDecl>& extra) {
    auto vars = ctx.vars();
    for (const auto& v : extra) vars.push_back(v);
    return VarContext::make(std::move(vars), ctx.params());
}

Polynomial homogenize(const Polynomial& f, const std::string& fresh_name) {
    const auto& ctx = *f.ctx();
    if (ctx.has_name(fresh_name))
        throw input_error("homogenize: name '" + fresh_name + "' already in use");
    CtxPtr hctx = extend_vars(ctx, {VarDecl{fresh_name, 0}});
    Polynomial r(hctx);
    if (f.is_zero()) return r;
    std::int64_t d = *degrees(f).total;
    for (const auto& [e, c] : f.terms()) {
        Exp t = e;
        t.push_back(d - term_total_degree(e));
        std::vector<std::size_t> pm(ctx.nparams());
        for (std::size_t j = 0; j < pm.size(); ++j) pm[j] = j;
        r.add_term(std::move(t), coeff_remap(c, pm, *hctx));
    }
    return r;
}

Polynomial homogenize_blocks(const Polynomial& f, const std::vector<std::string>& fresh_names) {
    const auto& ctx = *f.ctx();
    int nb = ctx.block_count();
    if (static_cast<int>(fresh_names.size()) != nb)
        throw input_error("homogenize_blocks: need one fresh name per block");
    std::vector<VarDecl> extra;
    for (int b = 0; b < nb; ++b) {
        if (ctx.has_name(fresh_names[static_cast<std::size_t>(b)]))
            throw input_error("homogenize_blocks: name '" +
                              fresh_names[static_cast<std::size_t>(b)] + "' already in use");
        extra.push_back(VarDecl{fresh_names[static_cast<std::size_t>(b)], b});
    }
    CtxPtr hctx = extend_vars(ctx, extra);
    Polynomial r(hctx);
    if (f.is_zero()) return r;
    auto dg = degrees(f);
    for (const auto& [e, c] : f.terms()) {
        std::vector<std::int64_t> bs(static_cast<std::size_t>(nb), 0);
        for (std::size_t i = 0; i < e.size(); ++i)
            bs[static_cast<std::size_t>(ctx.vars()[i].block)] += e[i];
        Exp t = e;
        for (int b = 0; b < nb; ++b)
            t.push_back(*dg.by_block[static_cast<std::size_t>(b)] -
                        bs[static_cast<std::size_t>(b)]);
        std::vector<std::size_t> pm(ctx.nparams());
        for (std::size_t j = 0; j < pm.size(); ++j) pm[j] = j;
        r.add_term(std::move(t), coeff_remap(c, pm, *hctx));
    }
    return r;
}

Polynomial dehomogenize(const Polynomial& f, const std::string& var) {
    const auto& ctx = *f.ctx();
    auto idx = ctx.var_index(var);
    if (!idx) throw input_error("unknown variable: '" + var + "'");
    std::vector<VarDecl> vars;
    for (std::size_t i = 0; i < ctx.nvars(); ++i)
        if (i != *idx) vars.push_back(ctx.vars()[i]);
    CtxPtr dctx = VarContext::make(std::move(vars), ctx.params());
    Polynomial r(dctx);
    std::vector<std::size_t> pm(ctx.nparams());
    for (std::size_t j = 0; j < pm.size(); ++j) pm[j] = j;
    for (const auto& [e, c] : f.terms()) {
        Exp t;
        t.reserve(e.size() - 1);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (i != *idx) t.push_back(e[i]);
        r.add_term(std::move(t), coeff_remap(c, pm, *dctx));
    }
    return r;
}

Polynomial specialize_params(const Polynomial& f, const std::map<std::string, BigRat>& values) {
    const auto& ctx = *f.ctx();
    std::map<std::size_t, BigRat> byidx;
    for (const auto& [name, v] : values) {
        auto idx = ctx.param_index(name);
        if (!idx) throw input_error("unknown parameter: '" + name + "'");
        byidx[*idx] = v;
    }
    Polynomial r(f.ctx());
    for (const auto& [e, c] : f.terms()) r.add_term(e, coeff_eval(c, byidx, ctx));
    return r;
}

static const Exp& single_monomial(const Polynomial& mono) {
    if (mono.term_count() != 1 || !mono.terms().begin()->second.is_one())
        throw input_error("expected a monomial with coefficient 1");
    return mono.terms().begin()->first;
}

bool monomial_divides_all_terms(const Polynomial& g, const Polynomial& mono) {
    check_same_context(g, mono, "monomial divisibility");
    const Exp& m = single_monomial(mono);
    if (g.is_zero()) return true;
    for (const auto& [e, c] : g.terms())
        for (std::size_t i = 0; i < m.size(); ++i)
            if (e[i] < m[i]) return false;
    return true;
}

Polynomial divide_by_monomial(const Polynomial& g, const Polynomial& mono) {
    if (!monomial_divides_all_terms(g, mono))
        throw input_error("monomial does not divide every term");
    const Exp& m = single_monomial(mono);
    Polynomial r(g.ctx());
    for (const auto& [e, c] : g.terms()) {
        Exp t = e;
        for (std::size_t i = 0; i < m.size(); ++i) t[i] -= m[i];
        r.add_term(std::move(t), c);
    }
    return r;
}

} // namespace tcert
