#include "tcert/construct.hpp"
#include "tcert/io.hpp"

#include <algorithm>
#include <set>

namespace tcert {

namespace {

const std::pair<Family, const char*> kFamilyNames[] = {
    {Family::G, "G"},
    {Family::F0, "F0"},
    {Family::BASE_N3, "BASE_N3"},
    {Family::DOUBLE_CONE, "DOUBLE_CONE"},
    {Family::STEP1, "STEP1"},
    {Family::STEP2, "STEP2"},
    {Family::STEP2_ALT_M2, "STEP2_ALT_M2"},
    {Family::CHECK_F, "CHECK_F"},
    {Family::CI_CASE_A, "CI_CASE_A"},
    {Family::CI_CASE_B, "CI_CASE_B"},
    {Family::CI_CASE_C, "CI_CASE_C"},
    {Family::CI_LOW_INDEX_A, "CI_LOW_INDEX_A"},
    {Family::CI_LOW_INDEX_B, "CI_LOW_INDEX_B"},
    {Family::CI_LOW_INDEX_C, "CI_LOW_INDEX_C"},
    {Family::PRODUCT_HYP, "PRODUCT_HYP"},
    {Family::HPT_QUARTIC, "HPT_QUARTIC"},
    {Family::HPT_QUADRICS, "HPT_QUADRICS"},
    {Family::HPT_CHART, "HPT_CHART"},
    {Family::CI_23, "CI_23"},
    {Family::CI_33, "CI_33"},
};

CtxPtr extend_ctx(const CtxPtr& ctx, const std::vector<VarDecl>& vs,
                  const std::vector<ParamDecl>& ps) {
    auto vars = ctx->vars();
    for (const auto& v : vs) vars.push_back(v);
    auto params = ctx->params();
    for (const auto& p : ps) params.push_back(p);
    return VarContext::make(std::move(vars), std::move(params));
}

std::string fresh_indexed(const VarContext& ctx, const std::string& base,
                          const std::vector<std::string>& also = {}) {
    for (int k = 1;; ++k) {
        std::string n = base + std::to_string(k);
        if (ctx.has_name(n)) continue;
        if (std::find(also.begin(), also.end(), n) != also.end()) continue;
        return n;
    }
}

std::int64_t pow2_or_throw(std::int64_t n) {
    if (n < 0 || n > 30) throw input_error("n out of supported range (2..30)");
    return std::int64_t(1) << n;
}

void assert_built(bool cond, const char* what) {
    if (!cond) throw std::logic_error(std::string("builder self-check failed: ") + what);
}

std::int64_t var_degree(const Polynomial& f, const std::vector<std::size_t>& idxs) {
    std::int64_t d = 0;
    for (const auto& [e, c] : f.terms()) {
        std::int64_t s = 0;
        for (auto i : idxs) s = checked_add(s, e[i]);
        if (s > d) d = s;
    }
    return d;
}

// Rebuild the family over a context with the same variable positions but new
// names; blocks are preserved.
GeneratedFamily rename_positions(const GeneratedFamily& fam,
                                 const std::vector<std::string>& new_names) {
    const auto& old = *fam.ctx;
    if (new_names.size() != old.nvars()) throw std::logic_error("rename arity mismatch");
    std::vector<VarDecl> vars;
    for (std::size_t i = 0; i < old.nvars(); ++i)
        vars.push_back(VarDecl{new_names[i], old.vars()[i].block});
    CtxPtr nctx = VarContext::make(std::move(vars), old.params());
    GeneratedFamily out = fam;
    out.ctx = nctx;
    out.polys.clear();
    for (const auto& p : fam.polys) out.polys.push_back(with_context(p, nctx));
    out.obstruction = with_context(fam.obstruction, nctx);
    std::vector<std::string> prio;
    for (auto i : fam.order.priority()) prio.push_back(new_names[i]);
    out.order = MonomialOrder::grlex(nctx, prio);
    auto di = old.var_index(fam.designated);
    out.designated = di ? new_names[*di] : fam.designated;
    return out;
}

// Reorder variable positions: position k of the result holds the variable at
// old position perm[k], renamed to new_names[k].
GeneratedFamily reindex_family(const GeneratedFamily& fam, const std::vector<std::size_t>& perm,
                               const std::vector<std::string>& new_names,
                               const std::vector<int>& new_blocks) {
    const auto& old = *fam.ctx;
    std::vector<VarDecl> vars;
    for (std::size_t k = 0; k < perm.size(); ++k)
        vars.push_back(VarDecl{new_names[k], new_blocks[k]});
    CtxPtr nctx = VarContext::make(std::move(vars), old.params());
    std::vector<std::size_t> old_to_new(old.nvars());
    for (std::size_t k = 0; k < perm.size(); ++k) old_to_new[perm[k]] = k;
    std::vector<std::size_t> pm(old.nparams());
    for (std::size_t j = 0; j < pm.size(); ++j) pm[j] = j;

    auto remap = [&](const Polynomial& p) {
        Polynomial r(nctx);
        for (const auto& [e, c] : p.terms()) {
            Exp t(e.size());
            for (std::size_t i = 0; i < e.size(); ++i) t[old_to_new[i]] = e[i];
            r.add_term(std::move(t), coeff_remap(c, pm, *nctx));
        }
        return r;
    };
    GeneratedFamily out = fam;
    out.ctx = nctx;
    out.polys.clear();
    for (const auto& p : fam.polys) out.polys.push_back(remap(p));
    out.obstruction = remap(fam.obstruction);
    out.order = MonomialOrder::grlex(nctx);
    auto di = old.var_index(fam.designated);
    out.designated = di ? new_names[old_to_new[*di]] : fam.designated;
    return out;
}

Polynomial one_poly(const CtxPtr& ctx) { return Polynomial::constant(ctx, 1); }

} // namespace

std::string family_name(Family f) {
    for (const auto& [k, n] : kFamilyNames)
        if (k == f) return n;
    throw std::logic_error("unknown family");
}

Family family_from_name(const std::string& name) {
    for (const auto& [k, n] : kFamilyNames)
        if (name == n) return k;
    throw input_error("unknown family name: '" + name + "'");
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    if (b <= 0) throw input_error("ceil_div by nonpositive divisor");
    if (a <= 0) throw input_error("ceil_div of nonpositive value");
    return (a + b - 1) / b;
}

Polynomial build_g(std::int64_t n, std::int64_t m) {
    if (n < 2) throw input_error("build_g requires n >= 2");
    if (m < 1) throw input_error("build_g requires m >= 1");
    pow2_or_throw(n);
    std::vector<VarDecl> vars;
    for (std::int64_t i = 1; i <= n; ++i) vars.push_back({"x" + std::to_string(i), 0});
    CtxPtr ctx = VarContext::make(std::move(vars), {ParamDecl{"pi", std::nullopt}});
    std::int64_t e = ceil_div(n + 1, m);
    Polynomial sum = Polynomial::constant(ctx, 1);
    Polynomial prod = Polynomial::constant(ctx, 1);
    for (std::int64_t i = 0; i < n; ++i) {
        sum = sum + Polynomial::variable(ctx, static_cast<std::size_t>(i), e);
        prod = prod * Polynomial::variable(ctx, static_cast<std::size_t>(i));
    }
    BigRat sign((n % 2 == 0) ? 1 : -1);
    return Polynomial::parameter(ctx, "pi") * poly_pow(sum, m) - scale(prod, sign);
}

GeneratedFamily build_f0(std::int64_t n, std::int64_t m, std::int64_t N) {
    if (n < 2) throw input_error("build_f0 requires n >= 2");
    if (m < 1) throw input_error("build_f0 requires m >= 1");
    std::int64_t cap = n + pow2_or_throw(n) - 2;
    if (N < n + 1 || N > cap)
        throw input_error("build_f0 requires n+1 <= N <= n+2^n-2 (here " +
                          std::to_string(n + 1) + ".." + std::to_string(cap) + ")");
    std::vector<VarDecl> vars;
    for (std::int64_t i = 1; i <= N; ++i) vars.push_back({"x" + std::to_string(i), 0});
    vars.push_back({"z", 0});
    CtxPtr ctx = VarContext::make(std::move(vars), {ParamDecl{"pi", std::nullopt}});

    std::int64_t e = ceil_div(n + 1, m);
    Polynomial sum = Polynomial::constant(ctx, 1);
    Polynomial prod = Polynomial::constant(ctx, 1);
    for (std::int64_t i = 0; i < n; ++i) {
        sum = sum + Polynomial::variable(ctx, static_cast<std::size_t>(i), e);
        prod = prod * Polynomial::variable(ctx, static_cast<std::size_t>(i));
    }
    BigRat sign((n % 2 == 0) ? 1 : -1);
    Polynomial f = Polynomial::parameter(ctx, "pi") * poly_pow(sum, m) - scale(prod, sign);
    for (std::int64_t j = 1; j <= N - n; ++j) {
        Polynomial cj = Polynomial::constant(ctx, 1);
        if (j == 1) {
            cj = Polynomial::variable(ctx, 0);
        } else {
            for (std::int64_t i = 0; i < n; ++i)
                if ((j >> i) & 1)
                    cj = cj * scale(Polynomial::variable(ctx, static_cast<std::size_t>(i)),
                                    BigRat(-1));
        }
        f = f + cj * Polynomial::variable(ctx, static_cast<std::size_t>(n + j - 1), m);
    }
    Polynomial zsect = scale(prod, sign) * Polynomial::variable(ctx, "z", m);
    f = f + zsect;

    assert_built(*degrees(f).total == n + m, "pencil member degree");
    Polynomial dz = partial_derivative(f, "z");
    Polynomial expect = scale(prod * Polynomial::variable(ctx, "z", m - 1), sign * BigRat(m));
    assert_built(dz == expect, "z-derivative of the pencil member");

    GeneratedFamily fam;
    fam.ctx = ctx;
    fam.polys = {f};
    fam.order = MonomialOrder::grlex(ctx);
    fam.designated = "z";
    fam.obstruction = one_poly(ctx);
    fam.claims_coprime = true;
    fam.multidegree = {n + m};
    fam.recipe.family = Family::F0;
    fam.recipe.iparams = {{"n", n}, {"m", m}, {"N", N}};
    return fam;
}

GeneratedFamily build_base_n3(std::int64_t d, std::int64_t m) {
    if (m < 1) throw input_error("build_base_n3 requires m >= 1");
    if (d < m + 2) throw input_error("build_base_n3 requires d >= m+2");
    CtxPtr ctx = VarContext::make({{"x1", 0}, {"x2", 0}, {"x3", 0}, {"z", 0}},
                                  {ParamDecl{"rho", std::nullopt}, ParamDecl{"pi", std::nullopt}});
    std::int64_t e = ceil_div(3, m);
    Polynomial x1 = Polynomial::variable(ctx, "x1");
    Polynomial x2 = Polynomial::variable(ctx, "x2");
    Polynomial sum = Polynomial::constant(ctx, 1) + Polynomial::variable(ctx, "x1", e) +
                     Polynomial::variable(ctx, "x2", e);
    Polynomial f = Polynomial::parameter(ctx, "rho") * Polynomial::variable(ctx, "x3", d) +
                   Polynomial::parameter(ctx, "pi") * poly_pow(sum, m) - x1 * x2 +
                   x1 * Polynomial::variable(ctx, "x3", m) +
                   x1 * x2 * Polynomial::variable(ctx, "z", m);
    assert_built(*degrees(f).total == d, "three-variable base degree");
    assert_built(!monomial_divides_all_terms(f, x1 * x2), "three-variable base content probe");

    GeneratedFamily fam;
    fam.ctx = ctx;
    fam.polys = {f};
    fam.order = MonomialOrder::grlex(ctx);
    fam.designated = "z";
    fam.obstruction = one_poly(ctx);
    fam.claims_coprime = true;
    fam.multidegree = {d};
    fam.recipe.family = Family::BASE_N3;
    fam.recipe.iparams = {{"d", d}, {"m", m}};
    return fam;
}

std::int64_t double_cone_budget(std::int64_t n, std::int64_t m) {
    if (n < 2 || m < 1) throw input_error("budget requires n >= 2, m >= 1");
    std::int64_t top = pow2_or_throw(n) - 2;
    std::int64_t total = 0;
    for (std::int64_t j = 1; j <= top; ++j)
        total += (n - __builtin_popcountll(static_cast<unsigned long long>(j))) / m;
    return total;
}

std::int64_t double_cone_budget_binom(std::int64_t n, std::int64_t m) {
    if (n < 2 || m < 1) throw input_error("budget requires n >= 2, m >= 1");
    pow2_or_throw(n);
    std::int64_t total = 0;
    for (std::int64_t l = 0; l < n; ++l) {
        std::int64_t c = 1;
        for (std::int64_t i = 1; i <= l; ++i) c = c * (n - i + 1) / i;
        total += c * (l / m);
    }
    return total;
}

std::int64_t double_cone_applications_at(std::int64_t n, std::int64_t m, std::int64_t j) {
    if (n < 2 || m < 1) throw input_error("budget requires n >= 2, m >= 1");
    if (j < 1 || j > pow2_or_throw(n) - 2)
        throw input_error("extra-variable index out of range");
    return (n - __builtin_popcountll(static_cast<unsigned long long>(j))) / m;
}

namespace {

struct ConeSplit {
    Polynomial b;                              // coefficient of z^m, stripped
    std::map<std::int64_t, Polynomial> a;      // by x_{j0} exponent, stripped
};

// The degree caps on the a_i are the precondition for applying the cone, so
// they are enforced on inputs only; outputs are re-checked for shape alone
// (the last admissible application may exhaust the caps).
ConeSplit cone_split(const Polynomial& f, std::size_t iz, std::size_t ij, std::int64_t m,
                     const std::string& j0, bool check_degrees) {
    ConeSplit sp;
    sp.b = Polynomial::zero(f.ctx());
    std::int64_t d = *degrees(f).total;
    for (const auto& [e, c] : f.terms()) {
        if (e[iz] == m && e[ij] == 0) {
            Exp t = e;
            t[iz] = 0;
            sp.b.add_term(std::move(t), c);
        } else if (e[iz] == 0 && e[ij] <= m) {
            Exp t = e;
            std::int64_t i = t[ij];
            t[ij] = 0;
            auto it = sp.a.find(i);
            if (it == sp.a.end()) {
                Polynomial p(f.ctx());
                p.add_term(std::move(t), c);
                sp.a.emplace(i, std::move(p));
            } else {
                it->second.add_term(std::move(t), c);
            }
        } else {
            throw input_error("term incompatible with the double cone shape at '" + j0 + "'");
        }
    }
    if (sp.b.is_zero()) throw input_error("double cone requires a nonzero z^m section");
    if (*degrees(sp.b).total != d - m)
        throw input_error("double cone requires the z^m section to have degree d-m");
    if (check_degrees) {
        for (const auto& [i, ai] : sp.a) {
            if (ai.is_zero()) continue;
            if (*degrees(ai).total > d - 2 * i)
                throw input_error("double cone coefficient at exponent " + std::to_string(i) +
                                  " exceeds degree " + std::to_string(d - 2 * i));
        }
    }
    return sp;
}

} // namespace

GeneratedFamily apply_double_cone(const GeneratedFamily& fam, const std::string& j0) {
    if (fam.polys.size() != 1)
        throw input_error("the double cone applies to a single polynomial");
    auto mit = fam.recipe.iparams.find("m");
    if (mit == fam.recipe.iparams.end())
        throw input_error("family does not carry the power parameter m");
    std::int64_t m = mit->second;
    const std::string& z = fam.designated;
    if (z.empty()) throw input_error("family has no designated variable");
    const Polynomial& f = fam.polys[0];
    const auto& ctx = *fam.ctx;
    auto ozi = ctx.var_index(z);
    auto oji = ctx.var_index(j0);
    if (!ozi || !oji || *ozi == *oji)
        throw input_error("double cone needs distinct variables '" + z + "' and '" + j0 + "'");
    std::int64_t d = *degrees(f).total;
    if (2 * m > d) throw input_error("double cone requires degree at least 2m");
    ConeSplit sp = cone_split(f, *ozi, *oji, m, j0, true);

    int k = 1;
    auto taken = [&](int kk) {
        return ctx.has_name("w" + std::to_string(kk)) ||
               ctx.has_name("lam" + std::to_string(kk)) ||
               ctx.has_name("t" + std::to_string(kk));
    };
    while (taken(k)) ++k;
    std::string wn = "w" + std::to_string(k);
    std::string ln = "lam" + std::to_string(k);
    std::string tn = "t" + std::to_string(k);
    CtxPtr nctx = extend_ctx(fam.ctx, {VarDecl{wn, ctx.vars()[*oji].block}},
                             {ParamDecl{ln, std::nullopt}, ParamDecl{tn, std::nullopt}});

    Polynomial w = Polynomial::variable(nctx, wn);
    Polynomial xj = Polynomial::variable(nctx, j0);
    Polynomial zt = Polynomial::variable(nctx, z, m);
    Coefficient lam_inv = coeff_inv(Coefficient::parameter(*nctx, *nctx->param_index(ln)), *nctx);
    Polynomial core = w * xj - Polynomial::from_coeff(nctx, lam_inv);

    Polynomial out = embed(sp.b, nctx) * zt;
    for (const auto& [i, ai] : sp.a) out = out + embed(ai, nctx) * poly_pow(core, i);
    out = out + w +
          Polynomial::from_coeff(nctx,
                                 coeff_mul(Coefficient::parameter(*nctx, *nctx->param_index(tn)),
                                           Coefficient::parameter(*nctx, *nctx->param_index(ln)),
                                           *nctx)) *
              xj;

    assert_built(*degrees(out).total == d, "double cone preserves the degree");
    cone_split(out, *nctx->var_index(z), *nctx->var_index(j0), m, j0, false); // re-recognition

    GeneratedFamily res = fam;
    res.ctx = nctx;
    res.polys = {out};
    auto prio = fam.order.priority_names();
    prio.push_back(wn);
    res.order = MonomialOrder::grlex(nctx, prio);
    res.obstruction = embed(fam.obstruction, nctx) * w;
    if (fam.recipe.family == Family::F0) {
        res.recipe.family = Family::DOUBLE_CONE;
        res.recipe.iparams["j0"] = static_cast<std::int64_t>(*oji) + 1;
        res.recipe.iparams["times"] = 1;
    } else if (fam.recipe.family == Family::DOUBLE_CONE &&
               fam.recipe.iparams.count("j0") &&
               fam.recipe.iparams.at("j0") == static_cast<std::int64_t>(*oji) + 1) {
        res.recipe.iparams["times"] += 1;
    }
    return res;
}

GeneratedFamily double_cone_full_iteration(std::int64_t n, std::int64_t m) {
    std::int64_t top = pow2_or_throw(n) - 2;
    GeneratedFamily fam = build_f0(n, m, n + top);
    std::int64_t total = 0;
    for (std::int64_t j = 1; j <= top; ++j) {
        std::int64_t k = double_cone_applications_at(n, m, j);
        for (std::int64_t rep = 0; rep < k; ++rep) {
            fam = apply_double_cone(fam, "x" + std::to_string(n + j));
            ++total;
        }
    }
    assert_built(total == double_cone_budget(n, m), "cone iteration count equals the budget");
    fam.recipe.family = Family::DOUBLE_CONE;
    fam.recipe.iparams = {{"n", n}, {"m", m}, {"N", n + top}, {"j0", 0}, {"times", total}};
    return fam;
}

HyperPair step1_pair(const Polynomial& f, int block) {
    if (f.is_zero()) throw input_error("step 1 requires a nonzero polynomial");
    std::string wn = fresh_indexed(*f.ctx(), "w");
    CtxPtr nctx = extend_ctx(f.ctx(), {VarDecl{wn, block}}, {});
    HyperPair p;
    p.ctx = nctx;
    Polynomial w = Polynomial::variable(nctx, wn);
    p.f = embed(f, nctx) + w;
    p.second = w;
    p.w_names = {wn};
    p.M = 1;
    return p;
}

HyperPair step1_pair(const HyperPair& prior, int block) {
    if (prior.M < 1) throw input_error("step 1 iteration needs a prior pair");
    std::string wn = fresh_indexed(*prior.ctx, "w");
    std::string tn = fresh_name(*prior.ctx, "t");
    CtxPtr nctx = extend_ctx(prior.ctx, {VarDecl{wn, block}}, {ParamDecl{tn, std::nullopt}});
    HyperPair p;
    p.ctx = nctx;
    Polynomial w = Polynomial::variable(nctx, wn);
    p.f = embed(prior.f, nctx) + w;
    p.second = Polynomial::parameter(nctx, tn) + w * embed(prior.second, nctx);
    p.w_names = prior.w_names;
    p.w_names.push_back(wn);
    p.t_names = prior.t_names;
    p.t_names.push_back(tn);
    p.M = prior.M + 1;
    return p;
}

namespace {

struct CompanionShape {
    Coefficient t2;
    Coefficient t1; // companion is t2 - wM*(t1 - w_{M-1} g)
    Polynomial g;
};

CompanionShape recognize_companion(const HyperPair& pair) {
    if (pair.M < 2) throw input_error("companion recognition needs M >= 2");
    const auto& ctx = *pair.ctx;
    std::size_t iM = *ctx.var_index(pair.w_names.back());
    std::size_t iM1 = *ctx.var_index(pair.w_names[pair.w_names.size() - 2]);
    Polynomial cpart(pair.ctx), lpart(pair.ctx);
    for (const auto& [e, c] : pair.second.terms()) {
        if (e[iM] == 0) {
            cpart.add_term(e, c);
        } else if (e[iM] == 1) {
            Exp t = e;
            t[iM] = 0;
            lpart.add_term(std::move(t), c);
        } else {
            throw input_error("companion is not linear in the last extension variable");
        }
    }
    if (cpart.term_count() > 1 ||
        (cpart.term_count() == 1 && term_total_degree(cpart.terms().begin()->first) != 0))
        throw input_error("companion constant part is not a scalar");
    CompanionShape sh;
    sh.t2 = cpart.is_zero() ? Coefficient::from_int(ctx, 0) : cpart.terms().begin()->second;
    // lpart = -(t1 - w_{M-1} g); its scalar piece is -t1
    Coefficient neg_t1 = Coefficient::from_int(ctx, 0);
    Polynomial rest(pair.ctx);
    for (const auto& [e, c] : lpart.terms()) {
        if (term_total_degree(e) == 0)
            neg_t1 = c;
        else
            rest.add_term(e, c);
    }
    sh.t1 = coeff_neg(neg_t1, ctx);
    Polynomial wM1 = Polynomial::variable(pair.ctx, iM1);
    if (!rest.is_zero() && !monomial_divides_all_terms(rest, wM1))
        throw input_error("companion linear part is not a multiple of the previous extension "
                          "variable");
    sh.g = rest.is_zero() ? Polynomial::zero(pair.ctx) : divide_by_monomial(rest, wM1);
    std::set<std::string> allowed(pair.w_names.begin(), std::prev(pair.w_names.end()));
    for (const auto& [e, c] : sh.g.terms())
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0 && !allowed.count(ctx.var_name(i)))
                throw input_error("companion tail uses a variable outside the extension block");
    return sh;
}

Polynomial parse_choice(const std::string& text, const CtxPtr& ctx,
                        const std::vector<std::string>& allowed_vars, std::int64_t degree,
                        const char* what) {
    Polynomial h = parse_poly(text, ctx);
    if (h.is_zero()) throw input_error(std::string(what) + " must be nonzero");
    std::set<std::string> allowed(allowed_vars.begin(), allowed_vars.end());
    for (const auto& [e, c] : h.terms())
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0 && !allowed.count(ctx->var_name(i)))
                throw input_error(std::string(what) + " may only use the extension variables");
    if (*degrees(h).total != degree)
        throw input_error(std::string(what) + " must have total degree " +
                          std::to_string(degree));
    return h;
}

} // namespace

HyperPair step2_deform(const HyperPair& pair, std::int64_t d,
                       const std::optional<std::string>& h_text) {
    if (pair.M < 2) throw input_error("the deformation step requires M >= 2");
    if (d <= pair.M) throw input_error("the deformation step requires d > M");
    recognize_companion(pair);
    std::string tn = fresh_name(*pair.ctx, "t");
    CtxPtr nctx = extend_ctx(pair.ctx, {}, {ParamDecl{tn, std::nullopt}});
    std::vector<std::string> earlier(pair.w_names.begin(), std::prev(pair.w_names.end()));
    Polynomial h = h_text
                       ? parse_choice(*h_text, nctx, earlier, d - 2, "the deformation choice h")
                       : Polynomial::variable(nctx, pair.w_names[pair.w_names.size() - 2],
                                              d - 2);
    Polynomial wM = Polynomial::variable(nctx, pair.w_names.back());
    Polynomial wM1 = Polynomial::variable(nctx, pair.w_names[pair.w_names.size() - 2]);
    Polynomial factor = (pair.M == 2) ? wM1 - Polynomial::constant(nctx, 1) : wM1;
    HyperPair out = pair;
    out.ctx = nctx;
    out.f = embed(pair.f, nctx);
    out.second = embed(pair.second, nctx) + Polynomial::parameter(nctx, tn) * wM * factor * h;
    out.t_names.push_back(tn);
    assert_built(*degrees(out.second).total == d, "deformed companion degree");
    return out;
}

HyperPair step2_alt_m2(const HyperPair& pair, std::int64_t d) {
    if (pair.M != 2) throw input_error("the two-variable alternative requires M == 2");
    if (d < 2) throw input_error("the two-variable alternative requires d >= 2");
    CompanionShape sh = recognize_companion(pair);
    std::string tn = fresh_name(*pair.ctx, "t");
    CtxPtr nctx = extend_ctx(pair.ctx, {}, {ParamDecl{tn, std::nullopt}});
    std::vector<std::size_t> pm(pair.ctx->nparams());
    for (std::size_t j = 0; j < pm.size(); ++j) pm[j] = j;
    Polynomial w1 = Polynomial::variable(nctx, pair.w_names[0]);
    Polynomial w2 = Polynomial::variable(nctx, pair.w_names[1]);
    HyperPair out = pair;
    out.ctx = nctx;
    out.f = embed(pair.f, nctx);
    out.second = Polynomial::from_coeff(nctx, coeff_remap(sh.t2, pm, *nctx)) - w1 * w2 +
                 Polynomial::parameter(nctx, tn) * poly_pow(w1, d);
    out.t_names.push_back(tn);
    assert_built(*degrees(out.second).total == d, "alternative companion degree");
    return out;
}

CheckFResult build_check_f(const Polynomial& f, std::int64_t d, std::int64_t M,
                           const CheckFOptions& opt) {
    if (M < 1 || d < M) throw input_error("the wrap requires d >= M >= 1");
    if (f.is_zero() || *degrees(f).total < 1)
        throw input_error("the wrap requires a nonconstant polynomial");
    const auto& ctx = *f.ctx();

    std::vector<std::string> wn;
    if (opt.w_names) {
        if (static_cast<std::int64_t>(opt.w_names->size()) != M)
            throw input_error("the wrap needs exactly M variable names");
        wn = *opt.w_names;
        for (const auto& n : wn)
            if (ctx.has_name(n)) throw input_error("wrap variable '" + n + "' already in use");
    } else {
        for (std::int64_t k = 0; k < M; ++k) wn.push_back(fresh_indexed(ctx, "w", wn));
    }
    int block = opt.block < 0 ? ctx.block_count() : opt.block;
    std::string t2n = fresh_name(ctx, "t2");
    std::string t1n = (M >= 2) ? fresh_name(ctx, "t1") : "";
    std::string tn = fresh_name(ctx, "t");
    std::vector<VarDecl> vs;
    for (const auto& n : wn) vs.push_back(VarDecl{n, block});
    std::vector<ParamDecl> ps{ParamDecl{t2n, std::nullopt}};
    if (M >= 2) ps.push_back(ParamDecl{t1n, std::nullopt});
    ps.push_back(ParamDecl{tn, std::nullopt});
    CtxPtr nctx = extend_ctx(f.ctx(), vs, ps);

    std::vector<std::string> earlier(wn.begin(), std::prev(wn.end()));
    Polynomial g =
        opt.g_text
            ? parse_choice(*opt.g_text, nctx, earlier, M - 1, "the wrap choice g")
            : (M == 1 ? Polynomial::constant(nctx, 1)
                      : Polynomial::variable(nctx, wn[static_cast<std::size_t>(M - 2)], M - 1));
    Polynomial h = opt.h_text
                       ? parse_choice(*opt.h_text, nctx, wn, d - 1, "the wrap choice h")
                       : (d == 1 ? Polynomial::constant(nctx, 1)
                                 : Polynomial::variable(nctx, wn.back(), d - 1));

    Polynomial wsum = Polynomial::zero(nctx);
    for (const auto& n : wn) wsum = wsum + Polynomial::variable(nctx, n);
    Polynomial wM = Polynomial::variable(nctx, wn.back());
    Polynomial delta = (M == 1) ? Polynomial::constant(nctx, 1) : Polynomial::zero(nctx);
    Polynomial t1 = (M >= 2) ? Polynomial::parameter(nctx, t1n) : Polynomial::zero(nctx);
    Polynomial inner =
        t1 - wM * g - Polynomial::parameter(nctx, tn) * (wM - delta) * h;
    Polynomial cf = Polynomial::parameter(nctx, t2n) + (embed(f, nctx) + wsum) * inner;

    std::int64_t df = *degrees(f).total;
    assert_built(*degrees(cf).total == df + d, "wrap total degree");
    std::vector<std::size_t> widx;
    for (const auto& n : wn) widx.push_back(*nctx->var_index(n));
    assert_built(var_degree(cf, widx) == d + 1, "wrap degree in the new variables");

    CheckFResult res;
    res.ctx = nctx;
    res.poly = std::move(cf);
    res.w_names = wn;
    res.t2 = t2n;
    res.t1 = t1n;
    res.t = tn;
    return res;
}

namespace {

// Pencil member plus cone applications over exactly Nx variables and z.
GeneratedFamily base_core(std::int64_t n0, std::int64_t m, std::int64_t Nx) {
    std::int64_t full = n0 + pow2_or_throw(n0) - 2;
    std::int64_t Nf = std::min(Nx, full);
    GeneratedFamily fam = build_f0(n0, m, Nf);
    std::int64_t need = Nx - Nf;
    for (std::int64_t j = 1; j <= pow2_or_throw(n0) - 2 && need > 0; ++j) {
        std::int64_t k = double_cone_applications_at(n0, m, j);
        for (std::int64_t rep = 0; rep < k && need > 0; ++rep) {
            fam = apply_double_cone(fam, "x" + std::to_string(n0 + j));
            --need;
        }
    }
    if (need > 0) throw std::logic_error("cone budget cannot fill the variable count");
    return fam;
}

// Rename to x1..x_{N_total} with the designated variable first.
GeneratedFamily rename_base(const GeneratedFamily& fam, std::int64_t N_total) {
    const auto& ctx = *fam.ctx;
    if (static_cast<std::int64_t>(ctx.nvars()) != N_total)
        throw std::logic_error("base variable count mismatch");
    std::size_t zi = *ctx.var_index(fam.designated);
    std::vector<std::size_t> perm{zi};
    for (std::size_t i = 0; i < ctx.nvars(); ++i)
        if (i != zi) perm.push_back(i);
    std::vector<std::string> names;
    std::vector<int> blocks;
    for (std::size_t k = 0; k < perm.size(); ++k) {
        names.push_back("x" + std::to_string(k + 1));
        blocks.push_back(0);
    }
    GeneratedFamily out = reindex_family(fam, perm, names, blocks);
    out.order = MonomialOrder::grlex(out.ctx);
    out.claims_coprime = true;
    return out;
}

} // namespace

GeneratedFamily base_hypersurface(std::int64_t N_total, std::int64_t d, std::int64_t n,
                                  std::int64_t m) {
    if (n < 2 || m < 1) throw input_error("base hypersurface requires n >= 2, m >= 1");
    if (N_total < 4) throw input_error("base hypersurface requires at least 4 variables");
    std::int64_t Nx = N_total - 1;
    for (std::int64_t n0 = n; n0 >= 2; --n0) {
        std::int64_t hi = n0 + pow2_or_throw(n0) - 2 + double_cone_budget(n0, m);
        if (d == n0 + m && n0 + 1 <= Nx && Nx <= hi)
            return rename_base(base_core(n0, m, Nx), N_total);
    }
    for (std::int64_t n0 = n; n0 >= 2; --n0) {
        std::int64_t hi = n0 + pow2_or_throw(n0) - 2 + double_cone_budget(n0, m);
        if (d > n0 + m && n0 + 1 <= Nx - 1 && Nx - 1 <= hi) {
            GeneratedFamily core = base_core(n0, m, Nx - 1);
            CheckFOptions opt;
            opt.block = 0;
            CheckFResult cf = build_check_f(core.polys[0], d - n0 - m, 1, opt);
            GeneratedFamily fam = core;
            fam.ctx = cf.ctx;
            fam.polys = {cf.poly};
            auto prio = core.order.priority_names();
            prio.push_back(cf.w_names[0]);
            fam.order = MonomialOrder::grlex(cf.ctx, prio);
            fam.obstruction = embed(core.obstruction, cf.ctx);
            fam.multidegree = {d};
            return rename_base(fam, N_total);
        }
    }
    if (Nx == 3 && d >= m + 2) {
        GeneratedFamily fam = build_base_n3(d, m);
        return rename_base(fam, N_total);
    }
    throw input_error("no base hypersurface branch fits N=" + std::to_string(N_total) +
                      ", d=" + std::to_string(d) + ", n=" + std::to_string(n) +
                      ", m=" + std::to_string(m));
}

namespace {

std::vector<std::int64_t> greedy_split(std::int64_t total, const std::vector<std::int64_t>& caps) {
    std::vector<std::int64_t> out(caps.size(), 2);
    std::int64_t R = total - 2 * static_cast<std::int64_t>(caps.size());
    if (R < 0) throw std::logic_error("greedy split under-allocated");
    for (std::size_t i = 0; i < caps.size() && R > 0; ++i) {
        std::int64_t add = std::min(R, caps[i] - 2);
        out[i] += add;
        R -= add;
    }
    if (R != 0) throw std::logic_error("greedy split cannot place the remainder");
    return out;
}

struct CiParts {
    CtxPtr ctx;
    std::vector<Polynomial> polys;      // first entry carries the base
    std::vector<std::string> w_names;   // to become y1..yM
    Polynomial obstruction;
    std::string designated;
};

// Attach one extension block of Mi variables to `lead` and return the block
// companion of degree di.
HyperPair attach_block(const Polynomial& lead, std::int64_t Mi, std::int64_t di) {
    HyperPair pair = step1_pair(lead);
    for (std::int64_t k = 2; k <= Mi; ++k) pair = step1_pair(pair);
    if (Mi == di) return pair;
    if (Mi == 2) return step2_alt_m2(pair, di);
    return step2_deform(pair, di);
}

GeneratedFamily finalize_ci(CiParts parts, const MonomialOrder& natural_hint,
                            std::int64_t N, std::int64_t M,
                            const std::vector<std::int64_t>& degrees, Family tag,
                            std::map<std::string, std::int64_t> iparams) {
    (void)natural_hint;
    const auto& ctx = *parts.ctx;
    if (static_cast<std::int64_t>(ctx.nvars()) != N + M)
        throw std::logic_error("assembled variable count mismatch");
    std::vector<std::string> names;
    std::size_t wi = 0;
    for (std::size_t i = 0; i < ctx.nvars(); ++i) {
        const std::string& nm = ctx.var_name(i);
        if (std::find(parts.w_names.begin(), parts.w_names.end(), nm) != parts.w_names.end()) {
            names.push_back("y" + std::to_string(++wi));
        } else {
            names.push_back(nm);
        }
    }
    if (static_cast<std::int64_t>(wi) != M)
        throw std::logic_error("extension variable count mismatch");

    GeneratedFamily fam;
    fam.ctx = parts.ctx;
    fam.polys.clear();
    for (auto& p : parts.polys) fam.polys.push_back(embed(p, parts.ctx));
    fam.order = MonomialOrder::grlex(parts.ctx);
    fam.designated = parts.designated;
    fam.obstruction = embed(parts.obstruction, parts.ctx);
    fam.multidegree = degrees;
    fam = rename_positions(fam, names);
    fam.order = MonomialOrder::grlex(fam.ctx);

    for (std::size_t i = 0; i < degrees.size(); ++i)
        assert_built(*tcert::degrees(fam.polys[i]).total == degrees[i],
                     "assembled polynomial degree");
    fam.claims_coprime = pairwise_coprime(fam.polys, fam.order).coprime;
    fam.recipe.family = tag;
    fam.recipe.iparams = std::move(iparams);
    fam.recipe.vparams = {{"degrees", degrees}};
    return fam;
}

} // namespace

GeneratedFamily assemble_ci(std::int64_t n, std::int64_t m, std::int64_t N, std::int64_t M,
                            const std::vector<std::int64_t>& degrees) {
    if (degrees.empty()) throw input_error("assemble_ci requires at least one degree");
    std::int64_t s = static_cast<std::int64_t>(degrees.size());
    for (auto d : degrees)
        if (d < 2) throw input_error("assemble_ci requires every degree >= 2");
    if (n < 2 || m < 1) throw input_error("assemble_ci requires n >= 2, m >= 1");
    if (degrees[0] < n + m) throw input_error("assemble_ci requires d1 >= n+m");
    std::int64_t sum = 0;
    for (auto d : degrees) sum += d;
    if (M < s - 1 || M > sum - n - m)
        throw input_error("assemble_ci requires s-1 <= M <= sum(d)-n-m");
    std::int64_t nhi = n + pow2_or_throw(n) - 1 + double_cone_budget(n, m);
    if (N < 4 || N > nhi)
        throw input_error("assemble_ci requires 4 <= N <= " + std::to_string(nhi));

    std::int64_t d1 = degrees[0];

    if (s == 1) {
        std::int64_t dprime = d1 - M;
        GeneratedFamily base = base_hypersurface(N, dprime, n, m);
        CiParts parts;
        parts.designated = base.designated;
        if (M == 0) {
            parts.ctx = base.ctx;
            parts.polys = {base.polys[0]};
            parts.obstruction = base.obstruction;
        } else {
            CheckFOptions opt;
            opt.block = 0;
            CheckFResult cf = build_check_f(base.polys[0], M, M, opt);
            parts.ctx = cf.ctx;
            parts.polys = {cf.poly};
            parts.w_names = cf.w_names;
            parts.obstruction = embed(base.obstruction, cf.ctx);
        }
        return finalize_ci(std::move(parts), base.order, N, M, degrees, Family::CI_CASE_A,
                           {{"n", n}, {"m", m}, {"N", N}, {"M", M}});
    }

    if (M == s - 1) {
        // One new variable per extra hypersurface, paired with a clean power.
        GeneratedFamily base = base_hypersurface(N, d1, n, m);
        const Exp& lm = leading_monomial(base.polys[0], base.order);
        std::set<std::size_t> banned;
        for (std::size_t i = 0; i < lm.size(); ++i)
            if (lm[i] > 0) banned.insert(i);
        std::vector<std::size_t> picks;
        for (std::size_t k = base.ctx->nvars(); k-- > 0 &&
                                               picks.size() + 1 < degrees.size();) {
            if (!banned.count(k)) picks.push_back(k);
        }
        while (picks.size() + 1 < degrees.size())
            picks.push_back(base.ctx->nvars() - 1); // fallback: reuse the last variable

        std::vector<std::string> yn;
        for (std::int64_t k = 0; k < M; ++k) yn.push_back(fresh_indexed(*base.ctx, "w", yn));
        std::vector<VarDecl> vs;
        for (const auto& nme : yn) vs.push_back(VarDecl{nme, 0});
        CtxPtr nctx = extend_ctx(base.ctx, vs, {});

        CiParts parts;
        parts.ctx = nctx;
        parts.designated = base.designated;
        parts.obstruction = embed(base.obstruction, nctx);
        parts.w_names = yn;
        parts.polys = {embed(base.polys[0], nctx)};
        for (std::int64_t i = 2; i <= s; ++i) {
            Polynomial gi =
                Polynomial::variable(nctx, yn[static_cast<std::size_t>(i - 2)]) +
                Polynomial::variable(nctx, base.ctx->var_name(picks[static_cast<std::size_t>(i - 2)]),
                                     degrees[static_cast<std::size_t>(i - 1)]);
            parts.polys.push_back(std::move(gi));
        }
        return finalize_ci(std::move(parts), base.order, N, M, degrees, Family::CI_CASE_C,
                           {{"n", n}, {"m", m}, {"N", N}, {"M", M}});
    }

    if (M >= 2 * s - 2) {
        std::int64_t dprime = std::min(d1, sum - M);
        std::int64_t M1 = d1 - dprime;
        GeneratedFamily base = base_hypersurface(N, dprime, n, m);
        CiParts parts;
        parts.designated = base.designated;
        parts.ctx = base.ctx;
        parts.obstruction = base.obstruction;
        Polynomial lead = base.polys[0];
        if (M1 > 0) {
            CheckFOptions opt;
            opt.block = 0;
            CheckFResult cf = build_check_f(lead, M1, M1, opt);
            parts.ctx = cf.ctx;
            parts.w_names = cf.w_names;
            parts.obstruction = embed(parts.obstruction, cf.ctx);
            lead = cf.poly;
        }
        std::vector<std::int64_t> caps(degrees.begin() + 1, degrees.end());
        std::vector<std::int64_t> split = greedy_split(M - M1, caps);
        std::vector<Polynomial> companions;
        for (std::int64_t i = 2; i <= s; ++i) {
            HyperPair pair = attach_block(lead, split[static_cast<std::size_t>(i - 2)],
                                          degrees[static_cast<std::size_t>(i - 1)]);
            lead = pair.f;
            parts.ctx = pair.ctx;
            for (const auto& nme : pair.w_names)
                if (std::find(parts.w_names.begin(), parts.w_names.end(), nme) ==
                    parts.w_names.end())
                    parts.w_names.push_back(nme);
            companions.push_back(pair.second);
        }
        parts.polys = {lead};
        for (auto& c : companions) parts.polys.push_back(embed(c, parts.ctx));
        parts.obstruction = embed(parts.obstruction, parts.ctx);
        return finalize_ci(std::move(parts), base.order, N, M, degrees, Family::CI_CASE_A,
                           {{"n", n}, {"m", m}, {"N", N}, {"M", M}});
    }

    // s <= M < 2s-2: minimal-count blocks plus a chain of power links.
    std::int64_t sprime = M + 2 - s;
    GeneratedFamily base = base_hypersurface(N, d1, n, m);
    CiParts parts;
    parts.designated = base.designated;
    parts.ctx = base.ctx;
    parts.obstruction = base.obstruction;
    Polynomial lead = base.polys[0];
    std::vector<Polynomial> companions;
    for (std::int64_t i = 2; i <= sprime; ++i) {
        HyperPair pair = step1_pair(lead);
        pair = step1_pair(pair);
        pair = step2_alt_m2(pair, degrees[static_cast<std::size_t>(i - 1)]);
        lead = pair.f;
        parts.ctx = pair.ctx;
        for (const auto& nme : pair.w_names)
            if (std::find(parts.w_names.begin(), parts.w_names.end(), nme) ==
                parts.w_names.end())
                parts.w_names.push_back(nme);
        companions.push_back(pair.second);
    }
    for (std::int64_t j = 1; j <= s - sprime; ++j) {
        std::string wn = fresh_indexed(*parts.ctx, "w", parts.w_names);
        parts.ctx = extend_ctx(parts.ctx, {VarDecl{wn, 0}}, {});
        const std::string& prev = parts.w_names[static_cast<std::size_t>(2 * sprime - 3 + j - 1)];
        Polynomial link =
            Polynomial::variable(parts.ctx, wn) +
            Polynomial::variable(parts.ctx, prev,
                                 degrees[static_cast<std::size_t>(sprime + j - 1)]);
        parts.w_names.push_back(wn);
        companions.push_back(std::move(link));
    }
    parts.polys = {embed(lead, parts.ctx)};
    for (auto& c : companions) parts.polys.push_back(embed(c, parts.ctx));
    parts.obstruction = embed(parts.obstruction, parts.ctx);
    return finalize_ci(std::move(parts), base.order, N, M, degrees, Family::CI_CASE_B,
                       {{"n", n}, {"m", m}, {"N", N}, {"M", M}});
}

namespace {

GeneratedFamily low_index_all_quadrics(const std::vector<std::int64_t>& degrees,
                                       std::int64_t M) {
    std::int64_t s = static_cast<std::int64_t>(degrees.size());
    std::int64_t s0 = 2 * s - M;
    std::vector<VarDecl> vars;
    for (std::int64_t i = 1; i <= 4 + M; ++i) vars.push_back({"x" + std::to_string(i), 0});
    std::vector<ParamDecl> params;
    std::vector<std::string> t2n, tn;
    for (std::int64_t j = 1; j <= s - s0; ++j) {
        std::string a = j == 1 ? "t2" : "t2_" + std::to_string(j);
        std::string b = j == 1 ? "t" : "t_" + std::to_string(j);
        params.push_back(ParamDecl{a, std::nullopt});
        params.push_back(ParamDecl{b, std::nullopt});
        t2n.push_back(a);
        tn.push_back(b);
    }
    CtxPtr ctx = VarContext::make(std::move(vars), std::move(params));
    auto X = [&](std::int64_t i, std::int64_t p = 1) {
        return Polynomial::variable(ctx, "x" + std::to_string(i), p);
    };
    Polynomial q1 = -(X(6) * X(5)) + X(3, 2) + X(4) - scale(X(5, 2), BigRat(2));
    Polynomial q2 = X(6) * X(5) + X(1) * X(4) + X(2, 2) - scale(X(5, 2), BigRat(2));
    Polynomial q3 = X(6) * X(7) - X(1) + X(5, 2) + X(7, 2);

    Polynomial f1 = q2;
    std::vector<Polynomial> others;
    for (std::int64_t i = 4; i <= s0; ++i) others.push_back(X(4 + i) + X(3 + i, 2));
    for (std::int64_t j = 1; j <= s - s0; ++j) {
        std::int64_t a = 4 + s0 + 2 * j - 1, b = a + 1;
        f1 = f1 + X(a) + X(b);
        Polynomial snd = Polynomial::parameter(ctx, t2n[static_cast<std::size_t>(j - 1)]) -
                         X(a) * X(b) +
                         Polynomial::parameter(ctx, tn[static_cast<std::size_t>(j - 1)]) *
                             X(a, 2);
        others.push_back(std::move(snd));
    }

    GeneratedFamily fam;
    fam.ctx = ctx;
    fam.polys = {f1, q1, q3};
    for (std::size_t k = 0; k < others.size(); ++k) fam.polys.push_back(others[k]);
    std::vector<std::string> prio;
    for (std::int64_t i = 2; i <= 4 + M; ++i) prio.push_back("x" + std::to_string(i));
    prio.push_back("x1");
    fam.order = MonomialOrder::grlex(ctx, prio);
    fam.designated = "x2";
    fam.obstruction = X(4) * X(5);
    fam.multidegree = degrees;
    for (std::size_t i = 0; i < fam.polys.size(); ++i)
        assert_built(*tcert::degrees(fam.polys[i]).total == 2, "all-quadric family degree");
    fam.claims_coprime = pairwise_coprime(fam.polys, fam.order).coprime;
    fam.recipe.family = Family::CI_LOW_INDEX_A;
    fam.recipe.iparams = {{"M", M}};
    fam.recipe.vparams = {{"degrees", degrees}};
    return fam;
}

GeneratedFamily low_index_cubic_base(const std::vector<std::int64_t>& degrees, std::int64_t M) {
    std::int64_t s = static_cast<std::int64_t>(degrees.size());
    std::int64_t s1 = std::min(s - 2, M - s);
    if (s1 < 0) s1 = 0;
    std::int64_t M0 = M - s + s1;
    std::int64_t ds = degrees.back();
    std::int64_t nchain = s - 2 - s1;

    std::vector<VarDecl> vars{{"x1", 0}, {"x2", 0}, {"x3", 0}, {"z1", 0}, {"z2", 0}, {"z3", 0}};
    for (std::int64_t k = 0; k < nchain; ++k)
        vars.push_back({"z" + std::to_string(4 + k), 0});
    CtxPtr ctx = VarContext::make(std::move(vars), {});

    auto V = [&](const char* n, std::int64_t p = 1) { return Polynomial::variable(ctx, n, p); };
    Polynomial quadric = Polynomial::constant(ctx, 1) + V("x1", 2) + V("x2", 2) -
                         scale(V("x1"), BigRat(2)) - scale(V("x2"), BigRat(2)) -
                         scale(V("x1") * V("x2"), BigRat(2));
    Polynomial f1 = V("x1") * V("z1", 2) + V("x2") * V("z2", 2) +
                    V("x1") * Polynomial::variable(ctx, "x2", 3 - ds) * V("x3") + quadric;
    Polynomial fs = V("x3") - Polynomial::variable(ctx, "x2", ds - 2) * V("z3", 2);

    CiParts parts;
    parts.ctx = ctx;
    parts.designated = "z1";
    parts.obstruction = V("x2") * V("z2") * V("z3");

    Polynomial lead = f1;
    std::vector<Polynomial> companions;
    if (s1 > 0) {
        std::vector<std::int64_t> caps(degrees.begin() + 1, degrees.begin() + 1 + s1);
        std::vector<std::int64_t> split = greedy_split(M0, caps);
        for (std::int64_t i = 2; i <= s1 + 1; ++i) {
            HyperPair pair = attach_block(lead, split[static_cast<std::size_t>(i - 2)],
                                          degrees[static_cast<std::size_t>(i - 1)]);
            lead = pair.f;
            parts.ctx = pair.ctx;
            for (const auto& nme : pair.w_names)
                if (std::find(parts.w_names.begin(), parts.w_names.end(), nme) ==
                    parts.w_names.end())
                    parts.w_names.push_back(nme);
            companions.push_back(pair.second);
        }
    }
    std::vector<Polynomial> chain;
    for (std::int64_t j = s1 + 2; j <= s - 1; ++j) {
        std::int64_t dj = degrees[static_cast<std::size_t>(j - 1)];
        Polynomial link =
            (j == s1 + 2)
                ? Polynomial::variable(parts.ctx, "z2", dj) + Polynomial::variable(parts.ctx, "z4")
                : Polynomial::variable(parts.ctx, "z" + std::to_string(j + 1 - s1), dj) +
                      Polynomial::variable(parts.ctx, "z" + std::to_string(j + 2 - s1));
        chain.push_back(std::move(link));
    }

    parts.polys = {embed(lead, parts.ctx)};
    for (auto& c : companions) parts.polys.push_back(embed(c, parts.ctx));
    for (auto& c : chain) parts.polys.push_back(embed(c, parts.ctx));
    parts.polys.push_back(embed(fs, parts.ctx));
    parts.obstruction = embed(parts.obstruction, parts.ctx);

    const auto& fctx = *parts.ctx;
    std::vector<std::string> names;
    std::size_t wi = 0;
    for (std::size_t i = 0; i < fctx.nvars(); ++i) {
        const std::string& nm = fctx.var_name(i);
        if (std::find(parts.w_names.begin(), parts.w_names.end(), nm) != parts.w_names.end())
            names.push_back("y" + std::to_string(++wi));
        else
            names.push_back(nm);
    }
    assert_built(static_cast<std::int64_t>(wi) == M0, "cubic-base extension count");

    GeneratedFamily fam;
    fam.ctx = parts.ctx;
    fam.polys = parts.polys;
    fam.designated = parts.designated;
    fam.obstruction = parts.obstruction;
    fam.multidegree = degrees;
    fam.order = MonomialOrder::grlex(parts.ctx);
    fam = rename_positions(fam, names);
    std::vector<std::string> prio{"x1", "z1", "x2", "x3", "z2", "z3"};
    for (std::int64_t k = 0; k < nchain; ++k) prio.push_back("z" + std::to_string(4 + k));
    for (std::size_t k = 1; k <= wi; ++k) prio.push_back("y" + std::to_string(k));
    fam.order = MonomialOrder::grlex(fam.ctx, prio);
    for (std::size_t i = 0; i < degrees.size(); ++i)
        assert_built(*tcert::degrees(fam.polys[i]).total == degrees[i],
                     "cubic-base family degree");
    fam.claims_coprime = pairwise_coprime(fam.polys, fam.order).coprime;
    fam.recipe.family = Family::CI_LOW_INDEX_B;
    fam.recipe.iparams = {{"M", M}};
    fam.recipe.vparams = {{"degrees", degrees}};
    return fam;
}

GeneratedFamily low_index_all_cubics(const std::vector<std::int64_t>& degrees, std::int64_t M) {
    std::int64_t s = static_cast<std::int64_t>(degrees.size());
    GeneratedFamily pair33 = fixed_example(Family::CI_33);
    CiParts parts;
    parts.ctx = pair33.ctx;
    parts.designated = pair33.designated;
    parts.obstruction = pair33.obstruction;
    Polynomial f1 = pair33.polys[0];
    Polynomial lead = pair33.polys[1];
    std::vector<Polynomial> companions;
    for (std::int64_t k = 0; k < s - 2; ++k) {
        HyperPair pair = step1_pair(lead);
        pair = step1_pair(pair);
        pair = step1_pair(pair);
        lead = pair.f;
        parts.ctx = pair.ctx;
        for (const auto& nme : pair.w_names)
            if (std::find(parts.w_names.begin(), parts.w_names.end(), nme) ==
                parts.w_names.end())
                parts.w_names.push_back(nme);
        companions.push_back(pair.second);
    }
    parts.polys = {embed(f1, parts.ctx), embed(lead, parts.ctx)};
    for (auto& c : companions) parts.polys.push_back(embed(c, parts.ctx));
    parts.obstruction = embed(parts.obstruction, parts.ctx);

    const auto& fctx = *parts.ctx;
    std::vector<std::string> names;
    std::size_t wi = 0;
    for (std::size_t i = 0; i < fctx.nvars(); ++i) {
        const std::string& nm = fctx.var_name(i);
        if (std::find(parts.w_names.begin(), parts.w_names.end(), nm) != parts.w_names.end())
            names.push_back("y" + std::to_string(++wi));
        else
            names.push_back(nm);
    }
    GeneratedFamily fam;
    fam.ctx = parts.ctx;
    fam.polys = parts.polys;
    fam.designated = parts.designated;
    fam.obstruction = parts.obstruction;
    fam.multidegree = degrees;
    fam.order = MonomialOrder::grlex(parts.ctx);
    fam = rename_positions(fam, names);
    std::vector<std::string> prio{"x1", "z1", "x2", "x3", "x4", "z2", "z3"};
    for (std::size_t k = 1; k <= wi; ++k) prio.push_back("y" + std::to_string(k));
    fam.order = MonomialOrder::grlex(fam.ctx, prio);
    for (std::size_t i = 0; i < degrees.size(); ++i)
        assert_built(*tcert::degrees(fam.polys[i]).total == degrees[i],
                     "all-cubic family degree");
    fam.claims_coprime = pairwise_coprime(fam.polys, fam.order).coprime;
    fam.recipe.family = Family::CI_LOW_INDEX_C;
    fam.recipe.iparams = {{"M", M}};
    fam.recipe.vparams = {{"degrees", degrees}};
    return fam;
}

} // namespace

GeneratedFamily assemble_ci_low_index(const std::vector<std::int64_t>& degrees_in,
                                      std::int64_t M) {
    if (degrees_in.empty()) throw input_error("low-index assembly requires degrees");
    std::vector<std::int64_t> degrees = degrees_in;
    std::sort(degrees.begin(), degrees.end(), std::greater<>());
    std::int64_t s = static_cast<std::int64_t>(degrees.size());
    for (auto d : degrees)
        if (d < 2) throw input_error("low-index assembly requires every degree >= 2");
    std::int64_t sum = 0;
    for (auto d : degrees) sum += d;
    if (M < s || M > sum - 3)
        throw input_error("low-index assembly requires s <= M <= sum(d)-3");

    if (degrees[0] >= 4) {
        if (M <= sum - 4) return assemble_ci(2, 2, 4, M, degrees);
        return assemble_ci(2, 2, 5, M - 1, degrees);
    }
    bool all2 = std::all_of(degrees.begin(), degrees.end(), [](auto d) { return d == 2; });
    bool all3 = std::all_of(degrees.begin(), degrees.end(), [](auto d) { return d == 3; });
    if (all2) return low_index_all_quadrics(degrees, M);
    if (all3 && M == 3 * s - 3) return low_index_all_cubics(degrees, M);
    return low_index_cubic_base(degrees, M);
}

GeneratedFamily assemble_product_hypersurface(std::int64_t n, std::int64_t m,
                                              const std::vector<std::int64_t>& Ms,
                                              const std::vector<std::int64_t>& ds) {
    if (Ms.empty() || Ms.size() != ds.size())
        throw input_error("product assembly needs matching block sizes and degrees");
    std::int64_t s = static_cast<std::int64_t>(Ms.size()) - 1;
    if (n < 2 || m < 1) throw input_error("product assembly requires n >= 2, m >= 1");
    std::int64_t M0 = Ms[0], d0 = ds[0];
    std::int64_t hi = n + pow2_or_throw(n) - 1 + double_cone_budget(n, m);
    if (d0 < n + m) throw input_error("product assembly requires d0 >= n+m");
    if (M0 < 4 || M0 > hi)
        throw input_error("product assembly requires 4 <= M0 <= " + std::to_string(hi));
    for (std::int64_t i = 1; i <= s; ++i) {
        if (Ms[static_cast<std::size_t>(i)] < 1)
            throw input_error("product assembly requires every block size >= 1");
        if (ds[static_cast<std::size_t>(i)] < Ms[static_cast<std::size_t>(i)] + 1)
            throw input_error("product assembly requires d_i >= M_i + 1");
    }

    GeneratedFamily base = base_hypersurface(M0, d0, n, m);
    // x1 (the designated one) becomes the last name of block 0.
    std::vector<std::size_t> perm;
    for (std::size_t i = 1; i < base.ctx->nvars(); ++i) perm.push_back(i);
    perm.push_back(0);
    std::vector<std::string> names;
    std::vector<int> blocks;
    for (std::size_t k = 0; k < perm.size(); ++k) {
        names.push_back("y0_" + std::to_string(k + 1));
        blocks.push_back(0);
    }
    GeneratedFamily fam = reindex_family(base, perm, names, blocks);

    Polynomial g = fam.polys[0];
    for (std::int64_t i = 1; i <= s; ++i) {
        CheckFOptions opt;
        opt.block = static_cast<int>(i);
        std::vector<std::string> wn;
        for (std::int64_t k = 1; k <= Ms[static_cast<std::size_t>(i)]; ++k)
            wn.push_back("y" + std::to_string(i) + "_" + std::to_string(k));
        opt.w_names = wn;
        CheckFResult cf = build_check_f(g, ds[static_cast<std::size_t>(i)] - 1,
                                        Ms[static_cast<std::size_t>(i)], opt);
        g = cf.poly;
    }

    GeneratedFamily out;
    out.ctx = g.ctx();
    out.polys = {g};
    out.order = MonomialOrder::grlex(g.ctx());
    out.designated = "y0_" + std::to_string(M0);
    out.obstruction = embed(fam.obstruction, g.ctx());
    out.claims_coprime = true;
    out.multidegree = ds;
    auto dg = degrees(g);
    assert_built(static_cast<std::int64_t>(dg.by_block.size()) == s + 1,
                 "product block count");
    for (std::int64_t i = 0; i <= s; ++i)
        assert_built(*dg.by_block[static_cast<std::size_t>(i)] ==
                         ds[static_cast<std::size_t>(i)],
                     "product block degree");
    out.recipe.family = Family::PRODUCT_HYP;
    out.recipe.iparams = {{"n", n}, {"m", m}};
    out.recipe.vparams = {{"Ms", Ms}, {"ds", ds}};
    return out;
}

namespace {

Polynomial hpt_quadric(const CtxPtr& ctx) {
    auto V = [&](const char* n, std::int64_t p = 1) { return Polynomial::variable(ctx, n, p); };
    return Polynomial::constant(ctx, 1) + V("x1", 2) + V("x2", 2) -
           scale(V("x1"), BigRat(2)) - scale(V("x2"), BigRat(2)) -
           scale(V("x1") * V("x2"), BigRat(2));
}

} // namespace

GeneratedFamily fixed_example(Family which) {
    GeneratedFamily fam;
    fam.recipe.family = which;
    switch (which) {
    case Family::HPT_QUARTIC: {
        CtxPtr ctx = VarContext::make(
            {{"x1", 0}, {"x2", 0}, {"z1", 0}, {"z2", 0}, {"z3", 0}}, {});
        auto V = [&](const char* n, std::int64_t p = 1) {
            return Polynomial::variable(ctx, n, p);
        };
        Polynomial f = V("x1") * V("z1", 2) + V("x2") * V("z2", 2) +
                       V("x1") * V("x2") * V("z3", 2) + hpt_quadric(ctx);
        fam.ctx = ctx;
        fam.polys = {f};
        fam.order = MonomialOrder::grlex(ctx);
        fam.designated = "z3";
        fam.obstruction = V("z1") * V("z2");
        fam.multidegree = {4};
        break;
    }
    case Family::HPT_QUADRICS: {
        CtxPtr ctx = VarContext::make({{"y1", 0}, {"y2", 0}, {"z1", 0}, {"z2", 0}, {"z3", 0},
                                       {"z4", 0}, {"z5", 0}},
                                      {});
        auto V = [&](const char* n, std::int64_t p = 1) {
            return Polynomial::variable(ctx, n, p);
        };
        Polynomial p1 = -V("y1") + V("z2", 2) + V("z3") * V("z4") - Polynomial::constant(ctx, 2);
        Polynomial p2 = V("y1") + V("y2") * V("z3") + V("z1", 2) - Polynomial::constant(ctx, 2);
        Polynomial p3 =
            V("y1") * V("z5") - V("y2") * V("z4") + Polynomial::constant(ctx, 1) + V("z5", 2);
        fam.ctx = ctx;
        fam.polys = {p1, p2, p3};
        fam.order = MonomialOrder::grlex(ctx);
        fam.designated = "";
        fam.obstruction = one_poly(ctx);
        fam.multidegree = {2, 2, 2};
        break;
    }
    case Family::HPT_CHART: {
        CtxPtr ctx = VarContext::make({{"x1", 0}, {"x2", 0}, {"x3", 0}, {"x4", 0}, {"x5", 0},
                                       {"x6", 0}, {"x7", 0}},
                                      {});
        auto V = [&](const char* n, std::int64_t p = 1) {
            return Polynomial::variable(ctx, n, p);
        };
        Polynomial q1 = -(V("x6") * V("x5")) + V("x3", 2) + V("x4") - scale(V("x5", 2), BigRat(2));
        Polynomial q2 = V("x6") * V("x5") + V("x1") * V("x4") + V("x2", 2) -
                        scale(V("x5", 2), BigRat(2));
        Polynomial q3 = V("x6") * V("x7") - V("x1") + V("x5", 2) + V("x7", 2);
        fam.ctx = ctx;
        fam.polys = {q1, q2, q3};
        fam.order = MonomialOrder::grlex(
            ctx, {"x2", "x3", "x4", "x5", "x6", "x7", "x1"});
        fam.designated = "x2";
        fam.obstruction = V("x4") * V("x5");
        fam.multidegree = {2, 2, 2};
        break;
    }
    case Family::CI_23: {
        CtxPtr ctx = VarContext::make(
            {{"x1", 0}, {"x2", 0}, {"x3", 0}, {"z1", 0}, {"z2", 0}, {"z3", 0}}, {});
        auto V = [&](const char* n, std::int64_t p = 1) {
            return Polynomial::variable(ctx, n, p);
        };
        Polynomial f1 = V("x3") - V("z3", 2);
        Polynomial f2 = V("x1") * V("z1", 2) + V("x2") * V("z2", 2) +
                        V("x1") * V("x2") * V("x3") + hpt_quadric(ctx);
        fam.ctx = ctx;
        fam.polys = {f1, f2};
        fam.order = MonomialOrder::grlex(ctx, {"x1", "z1", "x2", "x3", "z2", "z3"});
        fam.designated = "z1";
        fam.obstruction = V("x2") * V("z2") * V("z3");
        fam.multidegree = {2, 3};
        break;
    }
    case Family::CI_33: {
        CtxPtr ctx = VarContext::make({{"x1", 0}, {"x2", 0}, {"x3", 0}, {"x4", 0}, {"z1", 0},
                                       {"z2", 0}, {"z3", 0}},
                                      {ParamDecl{"t", std::nullopt}});
        auto V = [&](const char* n, std::int64_t p = 1) {
            return Polynomial::variable(ctx, n, p);
        };
        Polynomial f1 = Polynomial::parameter(ctx, "t") -
                        V("x4") * (V("x3") - V("z3", 2) + V("x4"));
        Polynomial f2 = V("x1") * V("z1", 2) + V("x2") * V("z2", 2) +
                        V("x1") * V("x2") * V("x3") + hpt_quadric(ctx);
        fam.ctx = ctx;
        fam.polys = {f1, f2};
        fam.order =
            MonomialOrder::grlex(ctx, {"x1", "z1", "x2", "x3", "x4", "z2", "z3"});
        fam.designated = "z1";
        fam.obstruction = V("x2") * V("z3");
        fam.multidegree = {3, 3};
        break;
    }
    default:
        throw input_error("not a fixed example: " + family_name(which));
    }
    for (std::size_t i = 0; i < fam.polys.size(); ++i)
        assert_built(*degrees(fam.polys[i]).total == fam.multidegree[i],
                     "fixed example degree");
    fam.claims_coprime = pairwise_coprime(fam.polys, fam.order).coprime;
    assert_built(fam.claims_coprime || which == Family::HPT_QUARTIC,
                 "fixed example leading monomials");
    return fam;
}

GeneratedFamily run_recipe(const Recipe& r) {
    auto geti = [&](const char* k) {
        auto it = r.iparams.find(k);
        if (it == r.iparams.end())
            throw input_error(std::string("recipe is missing parameter '") + k + "'");
        return it->second;
    };
    switch (r.family) {
    case Family::G: {
        Polynomial g = build_g(geti("n"), geti("m"));
        GeneratedFamily fam;
        fam.ctx = g.ctx();
        fam.polys = {g};
        fam.order = MonomialOrder::grlex(g.ctx());
        fam.designated = "";
        fam.obstruction = one_poly(g.ctx());
        fam.claims_coprime = true;
        fam.multidegree = {*degrees(g).total};
        fam.recipe = r;
        return fam;
    }
    case Family::F0:
        return build_f0(geti("n"), geti("m"), geti("N"));
    case Family::BASE_N3:
        return build_base_n3(geti("d"), geti("m"));
    case Family::DOUBLE_CONE: {
        std::int64_t n = geti("n"), m = geti("m"), j0 = geti("j0");
        if (j0 == 0) return double_cone_full_iteration(n, m);
        std::int64_t times = geti("times");
        GeneratedFamily fam = build_f0(n, m, geti("N"));
        for (std::int64_t k = 0; k < times; ++k)
            fam = apply_double_cone(fam, "x" + std::to_string(j0));
        return fam;
    }
    case Family::STEP1:
    case Family::STEP2:
    case Family::STEP2_ALT_M2: {
        GeneratedFamily base = build_f0(geti("n"), geti("m"), geti("N"));
        std::int64_t times = r.family == Family::STEP2_ALT_M2 ? 2 : geti("times");
        HyperPair pair = step1_pair(base.polys[0]);
        for (std::int64_t k = 2; k <= times; ++k) pair = step1_pair(pair);
        if (r.family == Family::STEP2) pair = step2_deform(pair, geti("d"), r.choice_h);
        if (r.family == Family::STEP2_ALT_M2) pair = step2_alt_m2(pair, geti("d"));
        GeneratedFamily fam;
        fam.ctx = pair.ctx;
        fam.polys = {pair.f, pair.second};
        auto prio = base.order.priority_names();
        for (const auto& nme : pair.w_names) prio.push_back(nme);
        fam.order = MonomialOrder::grlex(pair.ctx, prio);
        fam.designated = base.designated;
        fam.obstruction = embed(base.obstruction, pair.ctx);
        fam.multidegree = {*degrees(pair.f).total, *degrees(pair.second).total};
        fam.claims_coprime = pairwise_coprime(fam.polys, fam.order).coprime;
        fam.recipe = r;
        return fam;
    }
    case Family::CHECK_F: {
        GeneratedFamily base = build_f0(geti("n"), geti("m"), geti("N"));
        CheckFOptions opt;
        opt.g_text = r.choice_g;
        opt.h_text = r.choice_h;
        opt.block = 0;
        CheckFResult cf = build_check_f(base.polys[0], geti("d"), geti("M"), opt);
        GeneratedFamily fam;
        fam.ctx = cf.ctx;
        fam.polys = {cf.poly};
        auto prio = base.order.priority_names();
        for (const auto& nme : cf.w_names) prio.push_back(nme);
        fam.order = MonomialOrder::grlex(cf.ctx, prio);
        fam.designated = base.designated;
        fam.obstruction = embed(base.obstruction, cf.ctx);
        fam.multidegree = {*degrees(cf.poly).total};
        fam.claims_coprime = true;
        fam.recipe = r;
        return fam;
    }
    case Family::CI_CASE_A:
    case Family::CI_CASE_B:
    case Family::CI_CASE_C: {
        auto it = r.vparams.find("degrees");
        if (it == r.vparams.end()) throw input_error("recipe is missing 'degrees'");
        GeneratedFamily fam =
            assemble_ci(geti("n"), geti("m"), geti("N"), geti("M"), it->second);
        if (fam.recipe.family != r.family)
            throw input_error("parameters select case " + family_name(fam.recipe.family) +
                              ", not " + family_name(r.family));
        return fam;
    }
    case Family::CI_LOW_INDEX_A:
    case Family::CI_LOW_INDEX_B:
    case Family::CI_LOW_INDEX_C: {
        auto it = r.vparams.find("degrees");
        if (it == r.vparams.end()) throw input_error("recipe is missing 'degrees'");
        GeneratedFamily fam = assemble_ci_low_index(it->second, geti("M"));
        if (fam.recipe.family != r.family)
            throw input_error("parameters select case " + family_name(fam.recipe.family) +
                              ", not " + family_name(r.family));
        return fam;
    }
    case Family::PRODUCT_HYP: {
        auto ms = r.vparams.find("Ms");
        auto dsit = r.vparams.find("ds");
        if (ms == r.vparams.end() || dsit == r.vparams.end())
            throw input_error("recipe is missing 'Ms' or 'ds'");
        return assemble_product_hypersurface(geti("n"), geti("m"), ms->second, dsit->second);
    }
    default:
        return fixed_example(r.family);
    }
}

WitnessResult check_star_witness(const WitnessCheck& check) {
    WitnessResult res;
    const auto& ctx = *check.ctx;
    auto ei = ctx.var_index(check.expect_var);
    if (!ei) throw input_error("unknown residual variable '" + check.expect_var + "'");
    std::set<std::string> bound;
    for (std::size_t k = 0; k < check.bindings.size(); ++k) {
        const auto& [vn, val] = check.bindings[k];
        if (!ctx.var_index(vn)) throw input_error("binding of unknown variable '" + vn + "'");
        if (!bound.insert(vn).second)
            throw input_error("variable '" + vn + "' bound twice");
        if (!same_context(val.ctx(), check.ctx))
            throw input_error("binding value context mismatch");
    }
    for (std::size_t k = 0; k < check.bindings.size(); ++k)
        for (std::size_t j = k + 1; j < check.bindings.size(); ++j) {
            auto vi = ctx.var_index(check.bindings[k].first);
            auto dv = degree_in_var(check.bindings[j].second, *vi);
            if (dv && *dv > 0)
                throw input_error("binding of '" + check.bindings[k].first +
                                  "' reappears in the value for '" +
                                  check.bindings[j].first + "'");
        }

    std::vector<Polynomial> images = check.targets;
    for (const auto& [vn, val] : check.bindings)
        for (auto& img : images) img = substitute(img, {{vn, val}}, check.ctx);

    std::vector<std::size_t> nonzero;
    for (std::size_t i = 0; i < images.size(); ++i)
        if (!images[i].is_zero()) nonzero.push_back(i);

    res.ok = true;
    for (std::size_t i = 0; i < images.size(); ++i)
        if (images[i].is_zero())
            res.log.push_back("target " + std::to_string(i) + " vanishes");
    if (nonzero.size() != 1) {
        res.ok = false;
        res.log.push_back("expected exactly one surviving target, found " +
                          std::to_string(nonzero.size()));
        if (!nonzero.empty()) res.residual = images[nonzero[0]];
        return res;
    }
    res.residual = images[nonzero[0]];
    res.log.push_back("target " + std::to_string(nonzero[0]) + " survives");

    auto dv = degree_in_var(res.residual, *ei);
    if (!dv || *dv != 1) {
        res.ok = false;
        res.log.push_back("residual is not of degree 1 in " + check.expect_var);
        return res;
    }
    std::size_t linear_terms = 0;
    bool clean = true;
    for (const auto& [e, c] : res.residual.terms()) {
        if (e[*ei] == 0) continue;
        ++linear_terms;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != (i == *ei ? 1 : 0)) clean = false;
    }
    if (linear_terms != 1 || !clean) {
        res.ok = false;
        res.log.push_back("the degree-1 part in " + check.expect_var +
                          " is not a single clean term");
        return res;
    }
    res.log.push_back("residual is linear in " + check.expect_var +
                      " with a scalar coefficient");
    for (const auto& n : check.notes) res.log.push_back(n);
    return res;
}

WitnessCheck witness_f0(std::int64_t n, std::int64_t m, std::int64_t N) {
    GeneratedFamily fam = build_f0(n, m, N);
    std::int64_t e = ceil_div(n + 1, m);
    std::vector<ParamDecl> extra{ParamDecl{"q", std::nullopt}};
    if (e > 1) extra.push_back(ParamDecl{"zeta", ParamRewrite{e, BigRat(-1)}});
    CtxPtr ctx = extend_ctx(fam.ctx, {}, extra);

    WitnessCheck w;
    w.ctx = ctx;
    w.targets = {embed(fam.polys[0], ctx) + Polynomial::parameter(ctx, "q")};
    Polynomial x1 = Polynomial::variable(ctx, "x1");
    Polynomial v2 = (e > 1) ? Polynomial::parameter(ctx, "zeta") * x1 : scale(x1, BigRat(-1));
    w.bindings.emplace_back("x2", v2);
    for (std::int64_t i = 3; i <= n + 1; ++i)
        w.bindings.emplace_back("x" + std::to_string(i), Polynomial::constant(ctx, 1));
    for (std::int64_t i = n + 2; i <= N; ++i)
        w.bindings.emplace_back("x" + std::to_string(i), Polynomial::constant(ctx, 0));
    w.bindings.emplace_back("z", Polynomial::constant(ctx, 1));
    w.expect_var = "x1";
    w.notes = {"the generic fiber coordinate q is a fresh transcendental",
               "the branch with the fiber value in the ground field holds over the "
               "algebraic closure and is not machine-checked"};
    return w;
}

WitnessCheck witness_hpt_quartic() {
    GeneratedFamily fam = fixed_example(Family::HPT_QUARTIC);
    CtxPtr ctx = extend_ctx(fam.ctx, {}, {ParamDecl{"q", std::nullopt}});
    WitnessCheck w;
    w.ctx = ctx;
    w.targets = {embed(fam.polys[0], ctx) + Polynomial::parameter(ctx, "q")};
    w.bindings.emplace_back("x2", Polynomial::constant(ctx, 1) -
                                      Polynomial::variable(ctx, "x1"));
    w.bindings.emplace_back("z1", Polynomial::constant(ctx, 1));
    w.bindings.emplace_back("z2", Polynomial::constant(ctx, 0));
    w.bindings.emplace_back("z3", Polynomial::constant(ctx, 2));
    w.expect_var = "x1";
    w.notes = {"the generic fiber coordinate q is a fresh transcendental",
               "the branch with the fiber value in the ground field holds over the "
               "algebraic closure and is not machine-checked"};
    return w;
}

WitnessCheck witness_ci23() {
    GeneratedFamily fam = fixed_example(Family::CI_23);
    CtxPtr ctx = extend_ctx(fam.ctx, {},
                            {ParamDecl{"alpha", std::nullopt},
                             ParamDecl{"i", ParamRewrite{2, BigRat(-1)}},
                             ParamDecl{"q", std::nullopt}});
    WitnessCheck w;
    w.ctx = ctx;
    w.targets = {embed(fam.polys[1], ctx),
                 embed(fam.polys[0], ctx) + Polynomial::parameter(ctx, "q")};
    w.bindings.emplace_back("x1", Polynomial::variable(ctx, "x2") +
                                      Polynomial::constant(ctx, 1));
    w.bindings.emplace_back("x2", Polynomial::variable(ctx, "x3"));
    w.bindings.emplace_back("z1", Polynomial::parameter(ctx, "i") *
                                      Polynomial::variable(ctx, "x3"));
    w.bindings.emplace_back("z2", Polynomial::constant(ctx, 2));
    w.bindings.emplace_back("z3", Polynomial::parameter(ctx, "alpha"));
    w.expect_var = "x3";
    w.notes = {"the generic fiber coordinate q is a fresh transcendental",
               "the branch with the fiber value in the ground field holds over the "
               "algebraic closure and is not machine-checked"};
    return w;
}

std::vector<IsoStep> chain_hpt() {
    std::vector<IsoStep> steps;

    CtxPtr ctxA = VarContext::make(
        {{"x1", 0}, {"x2", 0}, {"y1", 0}, {"y2", 0}, {"y3", 0}}, {});
    CtxPtr ctxQ = VarContext::make(
        {{"x1", 0}, {"x2", 0}, {"z1", 0}, {"z2", 0}, {"z3", 0}}, {});
    Polynomial h = parse_poly("y1^2 + x1*x2*y2^2 + x2*y3^2 + "
                              "x1*(1 + x1^2 + x2^2 - 2*x1 - 2*x2 - 2*x1*x2)",
                              ctxA);
    Polynomial f = parse_poly("x1*z1^2 + x2*z2^2 + x1*x2*z3^2 + "
                              "1 + x1^2 + x2^2 - 2*x1 - 2*x2 - 2*x1*x2",
                              ctxQ);
    IsoSubstStep s1;
    s1.name = "square-root substitution divides out the front coordinate";
    s1.lhs = {h};
    s1.bindings = {{"y1", parse_poly("x1*z1", ctxQ)},
                   {"y2", parse_poly("z2", ctxQ)},
                   {"y3", parse_poly("x1*z3", ctxQ)}};
    s1.rhs = {Polynomial::variable(ctxQ, "x1") * f};
    s1.order = MonomialOrder::grlex(ctxQ);
    steps.emplace_back(std::move(s1));

    CtxPtr ctx9 = VarContext::make({{"y1", 0}, {"y2", 0}, {"z1", 0}, {"z2", 0}, {"z3", 0},
                                    {"z4", 0}, {"z5", 0}, {"x1", 0}, {"x2", 0}},
                                   {});
    IsoMemberStep s2;
    s2.name = "graph ideals of the quadric triple and the quartic match away from z3 = 0";
    s2.lhs = {parse_poly("-y1 + z2^2 + z3*z4 - 2", ctx9),
              parse_poly("y1 + y2*z3 + z1^2 - 2", ctx9),
              parse_poly("y1*z5 - y2*z4 + 1 + z5^2", ctx9),
              parse_poly("x1*z3 - z4", ctx9),
              parse_poly("x2 - x1 - z5", ctx9)};
    s2.rhs = {parse_poly("x1*z1^2 + x2*z2^2 + x1*x2*z3^2 + "
                         "1 + x1^2 + x2^2 - 2*x1 - 2*x2 - 2*x1*x2",
                         ctx9),
              parse_poly("z4 - x1*z3", ctx9),
              parse_poly("z5 - x2 + x1", ctx9),
              parse_poly("y1 - (z2^2 + z3*z4 - 2)", ctx9),
              parse_poly("y2*z3 - (4 - z2^2 - z3*z4 - z1^2)", ctx9)};
    s2.inverted = {Polynomial::variable(ctx9, "z3")};
    s2.order = MonomialOrder::grlex(ctx9);
    steps.emplace_back(std::move(s2));
    return steps;
}

std::vector<IsoStep> chain_chart() {
    std::vector<IsoStep> steps;
    GeneratedFamily chart = fixed_example(Family::HPT_CHART);
    CtxPtr ctx8 = VarContext::make({{"y1", 0}, {"y2", 0}, {"z1", 0}, {"z2", 0}, {"z3", 0},
                                    {"z4", 0}, {"z5", 0}, {"u", 0}},
                                   {});
    Polynomial p1 = parse_poly("-y1 + z2^2 + z3*z4 - 2", ctx8);
    Polynomial p2 = parse_poly("y1 + y2*z3 + z1^2 - 2", ctx8);
    Polynomial p3 = parse_poly("y1*z5 - y2*z4 + 1 + z5^2", ctx8);
    std::map<std::string, Polynomial> bind = {
        {"x1", parse_poly("y2*u", ctx8)}, {"x2", parse_poly("z1*u", ctx8)},
        {"x3", parse_poly("z2*u", ctx8)}, {"x4", parse_poly("z3*u", ctx8)},
        {"x5", parse_poly("u", ctx8)},    {"x6", parse_poly("y1*u", ctx8)},
        {"x7", parse_poly("z5*u", ctx8)}};

    IsoSubstStep s1;
    s1.name = "chart substitution recovers the quadric triple after clearing z4^2";
    s1.lhs = chart.polys;
    s1.bindings = bind;
    Polynomial z4sq = Polynomial::variable(ctx8, "z4", 2);
    s1.multipliers = {z4sq, z4sq, z4sq};
    s1.relations = {parse_poly("u*z4 - 1", ctx8)};
    s1.rhs = {p1, p2, p3};
    s1.order = MonomialOrder::grlex(ctx8);
    steps.emplace_back(s1);

    IsoMemberStep s2;
    s2.name = "cleared chart equations and the quadric triple agree away from z4 = 0";
    s2.lhs = {p1, p2, p3, parse_poly("u*z4 - 1", ctx8)};
    s2.rhs = {substitute(chart.polys[0], bind, ctx8) * z4sq,
              substitute(chart.polys[1], bind, ctx8) * z4sq,
              substitute(chart.polys[2], bind, ctx8) * z4sq,
              parse_poly("u*z4 - 1", ctx8)};
    s2.inverted = {Polynomial::variable(ctx8, "z4")};
    s2.order = MonomialOrder::grlex(ctx8);
    steps.emplace_back(std::move(s2));
    return steps;
}

} // namespace tcert
