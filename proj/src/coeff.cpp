#include "tcert/coeff.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <limits>

namespace tcert {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw input_error("exponent overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw input_error("exponent overflow");
    return r;
}

BigRat rat_pow(const BigRat& base, std::int64_t e) {
    if (e < 0) throw input_error("negative exponent");
    BigRat acc(1), sq(base);
    std::int64_t k = e;
    while (k > 0) {
        if (k & 1) acc *= sq;
        k >>= 1;
        if (k) sq *= sq;
    }
    return acc;
}

bool ParamPoly::is_constant() const {
    if (terms.empty()) return true;
    if (terms.size() != 1) return false;
    for (auto e : terms.begin()->first)
        if (e != 0) return false;
    return true;
}

BigRat ParamPoly::constant_value() const {
    if (terms.empty()) return BigRat(0);
    if (!is_constant()) throw input_error("parameter polynomial is not constant");
    return terms.begin()->second;
}

std::int64_t ParamPoly::total_degree() const {
    std::int64_t d = 0;
    for (const auto& [e, c] : terms) {
        std::int64_t s = 0;
        for (auto x : e) s = checked_add(s, x);
        if (s > d) d = s;
    }
    return d;
}

ParamPoly ParamPoly::zero(const VarContext&) { return ParamPoly{}; }

ParamPoly ParamPoly::constant(const VarContext& ctx, const BigRat& c) {
    ParamPoly p;
    if (c != 0) p.terms[Exp(ctx.nparams(), 0)] = c;
    return p;
}

ParamPoly ParamPoly::parameter(const VarContext& ctx, std::size_t idx) {
    if (idx >= ctx.nparams()) throw input_error("parameter index out of range");
    Exp e(ctx.nparams(), 0);
    e[idx] = 1;
    ParamPoly p;
    p.terms[e] = BigRat(1);
    return pp_normalize(std::move(p), ctx);
}

std::strong_ordering pexp_compare(const Exp& a, const Exp& b) {
    std::int64_t da = 0, db = 0;
    for (auto x : a) da = checked_add(da, x);
    for (auto x : b) db = checked_add(db, x);
    if (da != db) return da < db ? std::strong_ordering::less : std::strong_ordering::greater;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
        if (a[i] != b[i])
            return a[i] < b[i] ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

ParamPoly pp_add(const ParamPoly& a, const ParamPoly& b) {
    ParamPoly r = a;
    for (const auto& [e, c] : b.terms) {
        auto it = r.terms.find(e);
        if (it == r.terms.end()) {
            r.terms.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) r.terms.erase(it);
        }
    }
    return r;
}

ParamPoly pp_neg(const ParamPoly& a) {
    ParamPoly r = a;
    for (auto& [e, c] : r.terms) c = -c;
    return r;
}

ParamPoly pp_sub(const ParamPoly& a, const ParamPoly& b) { return pp_add(a, pp_neg(b)); }

ParamPoly pp_mul(const ParamPoly& a, const ParamPoly& b, const VarContext& ctx) {
    ParamPoly r;
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            Exp e(ea.size());
            for (std::size_t i = 0; i < ea.size(); ++i) e[i] = checked_add(ea[i], eb[i]);
            auto [it, fresh] = r.terms.emplace(std::move(e), ca * cb);
            if (!fresh) {
                it->second += ca * cb;
                if (it->second == 0) r.terms.erase(it);
            }
        }
    return pp_normalize(std::move(r), ctx);
}

ParamPoly pp_scale(const ParamPoly& a, const BigRat& c) {
    ParamPoly r;
    if (c == 0) return r;
    r = a;
    for (auto& [e, v] : r.terms) v *= c;
    return r;
}

ParamPoly pp_normalize(ParamPoly a, const VarContext& ctx) {
    bool any = false;
    for (std::size_t j = 0; j < ctx.nparams(); ++j)
        if (ctx.params()[j].rewrite) { any = true; break; }
    if (!any) {
        for (auto it = a.terms.begin(); it != a.terms.end();)
            it = (it->second == 0) ? a.terms.erase(it) : std::next(it);
        return a;
    }
    ParamPoly r;
    for (auto& [e0, c0] : a.terms) {
        if (c0 == 0) continue;
        Exp e = e0;
        BigRat c = c0;
        for (std::size_t j = 0; j < e.size(); ++j) {
            const auto& rw = ctx.params()[j].rewrite;
            if (rw && e[j] >= rw->exp) {
                std::int64_t q = e[j] / rw->exp;
                e[j] %= rw->exp;
                c *= rat_pow(rw->to, q);
            }
        }
        if (c == 0) continue;
        auto [it, fresh] = r.terms.emplace(std::move(e), c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) r.terms.erase(it);
        }
    }
    return r;
}

ParamPoly pp_eval(const ParamPoly& a, const std::map<std::size_t, BigRat>& values,
                  const VarContext& ctx) {
    ParamPoly r;
    for (const auto& [e0, c0] : a.terms) {
        Exp e = e0;
        BigRat c = c0;
        for (const auto& [idx, val] : values) {
            if (idx >= e.size()) throw input_error("parameter index out of range");
            if (e[idx] != 0) {
                c *= rat_pow(val, e[idx]);
                e[idx] = 0;
            }
        }
        if (c == 0) continue;
        auto [it, fresh] = r.terms.emplace(std::move(e), c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) r.terms.erase(it);
        }
    }
    return pp_normalize(std::move(r), ctx);
}

ParamPoly pp_remap(const ParamPoly& a, const std::vector<std::size_t>& map,
                   std::size_t target_arity) {
    ParamPoly r;
    for (const auto& [e0, c] : a.terms) {
        Exp e(target_arity, 0);
        for (std::size_t i = 0; i < e0.size(); ++i) {
            if (e0[i] == 0) continue;
            if (i >= map.size() || map[i] >= target_arity)
                throw input_error("parameter remap out of range");
            e[map[i]] = checked_add(e[map[i]], e0[i]);
        }
        auto [it, fresh] = r.terms.emplace(std::move(e), c);
        if (!fresh) it->second += c;
    }
    for (auto it = r.terms.begin(); it != r.terms.end();)
        it = (it->second == 0) ? r.terms.erase(it) : std::next(it);
    return r;
}

const BigRat& pp_leading_coeff(const ParamPoly& a) {
    if (a.terms.empty()) throw input_error("leading coefficient of zero");
    const Exp* best = nullptr;
    const BigRat* bc = nullptr;
    for (const auto& [e, c] : a.terms)
        if (!best || pexp_compare(e, *best) == std::strong_ordering::greater) {
            best = &e;
            bc = &c;
        }
    return *bc;
}

namespace {

// Divide every exponent vector by the common monomial factor of num and den,
// clear rational denominators, divide out integer content, and make the
// denominator's leading coefficient positive.
void canonicalize(ParamPoly& num, ParamPoly& den, const VarContext& ctx) {
    num = pp_normalize(std::move(num), ctx);
    den = pp_normalize(std::move(den), ctx);
    if (den.is_zero()) throw input_error("zero denominator in coefficient");
    if (num.is_zero()) {
        den = ParamPoly::constant(ctx, BigRat(1));
        return;
    }
    const std::size_t np = ctx.nparams();
    Exp common(np, std::numeric_limits<std::int64_t>::max());
    auto shrink = [&](const ParamPoly& p) {
        for (const auto& [e, c] : p.terms)
            for (std::size_t i = 0; i < np; ++i)
                if (e[i] < common[i]) common[i] = e[i];
    };
    shrink(num);
    shrink(den);
    bool nontrivial = false;
    for (std::size_t i = 0; i < np; ++i)
        if (common[i] > 0) nontrivial = true;
    if (nontrivial) {
        auto strip = [&](ParamPoly& p) {
            ParamPoly q;
            for (const auto& [e, c] : p.terms) {
                Exp f = e;
                for (std::size_t i = 0; i < np; ++i) f[i] -= common[i];
                q.terms.emplace(std::move(f), c);
            }
            p = std::move(q);
        };
        strip(num);
        strip(den);
    }
    BigInt l(1);
    auto lcm_in = [&](const ParamPoly& p) {
        for (const auto& [e, c] : p.terms)
            l = boost::multiprecision::lcm(l, BigInt(boost::multiprecision::denominator(c)));
    };
    lcm_in(num);
    lcm_in(den);
    BigInt g(0);
    auto apply = [&](ParamPoly& p) {
        for (auto& [e, c] : p.terms) {
            c *= BigRat(l);
            g = boost::multiprecision::gcd(g, BigInt(boost::multiprecision::numerator(c)));
        }
    };
    apply(num);
    apply(den);
    if (g > 1) {
        BigRat inv = BigRat(1) / BigRat(g);
        for (auto& [e, c] : num.terms) c *= inv;
        for (auto& [e, c] : den.terms) c *= inv;
    }
    if (pp_leading_coeff(den) < 0) {
        num = pp_neg(num);
        den = pp_neg(den);
    }
}

} // namespace

Coefficient Coefficient::from_int(const VarContext& ctx, const BigInt& v) {
    return from_rat(ctx, BigRat(v));
}

Coefficient Coefficient::from_rat(const VarContext& ctx, const BigRat& v) {
    Coefficient c;
    c.num = ParamPoly::constant(ctx, v);
    c.den = ParamPoly::constant(ctx, BigRat(1));
    canonicalize(c.num, c.den, ctx);
    return c;
}

Coefficient Coefficient::parameter(const VarContext& ctx, std::size_t idx) {
    Coefficient c;
    c.num = ParamPoly::parameter(ctx, idx);
    c.den = ParamPoly::constant(ctx, BigRat(1));
    canonicalize(c.num, c.den, ctx);
    return c;
}

Coefficient Coefficient::make(ParamPoly num, ParamPoly den, const VarContext& ctx) {
    Coefficient c;
    c.num = std::move(num);
    c.den = std::move(den);
    canonicalize(c.num, c.den, ctx);
    return c;
}

bool Coefficient::is_one() const {
    return is_rational() && rational_value() == 1;
}

BigRat Coefficient::rational_value() const {
    return num.constant_value() / den.constant_value();
}

int Coefficient::sign() const {
    if (num.is_zero()) return 0;
    return pp_leading_coeff(num) < 0 ? -1 : 1;
}

Coefficient coeff_add(const Coefficient& a, const Coefficient& b, const VarContext& ctx) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den == b.den) return Coefficient::make(pp_add(a.num, b.num), a.den, ctx);
    return Coefficient::make(
        pp_add(pp_mul(a.num, b.den, ctx), pp_mul(b.num, a.den, ctx)),
        pp_mul(a.den, b.den, ctx), ctx);
}

Coefficient coeff_neg(const Coefficient& a, const VarContext& ctx) {
    return Coefficient::make(pp_neg(a.num), a.den, ctx);
}

Coefficient coeff_sub(const Coefficient& a, const Coefficient& b, const VarContext& ctx) {
    return coeff_add(a, coeff_neg(b, ctx), ctx);
}

Coefficient coeff_mul(const Coefficient& a, const Coefficient& b, const VarContext& ctx) {
    if (a.is_zero() || b.is_zero()) return Coefficient::from_int(ctx, 0);
    return Coefficient::make(pp_mul(a.num, b.num, ctx), pp_mul(a.den, b.den, ctx), ctx);
}

Coefficient coeff_div(const Coefficient& a, const Coefficient& b, const VarContext& ctx) {
    if (b.is_zero()) throw input_error("division by zero coefficient");
    return Coefficient::make(pp_mul(a.num, b.den, ctx), pp_mul(a.den, b.num, ctx), ctx);
}

Coefficient coeff_inv(const Coefficient& a, const VarContext& ctx) {
    return coeff_div(Coefficient::from_int(ctx, 1), a, ctx);
}

Coefficient coeff_remap(const Coefficient& a, const std::vector<std::size_t>& map,
                        const VarContext& target) {
    return Coefficient::make(pp_remap(a.num, map, target.nparams()),
                             pp_remap(a.den, map, target.nparams()), target);
}

Coefficient coeff_eval(const Coefficient& a, const std::map<std::size_t, BigRat>& values,
                       const VarContext& ctx) {
    ParamPoly n = pp_eval(a.num, values, ctx);
    ParamPoly d = pp_eval(a.den, values, ctx);
    if (d.is_zero()) throw input_error("parameter specialization makes a denominator vanish");
    return Coefficient::make(std::move(n), std::move(d), ctx);
}

} // namespace tcert
