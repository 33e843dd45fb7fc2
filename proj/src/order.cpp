#include "tcert/order.hpp"

#include <set>

namespace tcert {

MonomialOrder MonomialOrder::grlex(CtxPtr ctx) {
    MonomialOrder o;
    o.ctx_ = std::move(ctx);
    o.perm_.resize(o.ctx_->nvars());
    for (std::size_t i = 0; i < o.perm_.size(); ++i) o.perm_[i] = i;
    return o;
}

MonomialOrder MonomialOrder::grlex(CtxPtr ctx, const std::vector<std::string>& priority) {
    MonomialOrder o;
    o.ctx_ = std::move(ctx);
    if (priority.size() != o.ctx_->nvars())
        throw input_error("order priority must list every variable exactly once");
    std::set<std::size_t> seen;
    for (const auto& name : priority) {
        auto idx = o.ctx_->var_index(name);
        if (!idx) throw input_error("order priority names unknown variable '" + name + "'");
        if (!seen.insert(*idx).second)
            throw input_error("order priority repeats variable '" + name + "'");
        o.perm_.push_back(*idx);
    }
    return o;
}

MonomialOrder MonomialOrder::homogenization(const MonomialOrder& base, CtxPtr hctx,
                                            const std::string& homogenizer) {
    MonomialOrder o;
    o.ctx_ = std::move(hctx);
    auto hidx = o.ctx_->var_index(homogenizer);
    if (!hidx) throw input_error("homogenizer '" + homogenizer + "' is not in the context");
    for (const auto& name : base.priority_names()) {
        auto idx = o.ctx_->var_index(name);
        if (!idx) throw input_error("order priority names unknown variable '" + name + "'");
        if (*idx == *hidx)
            throw input_error("homogenizer '" + homogenizer + "' collides with a base variable");
        o.perm_.push_back(*idx);
    }
    if (o.perm_.size() + 1 != o.ctx_->nvars())
        throw input_error("homogenization order must cover every variable exactly once");
    o.hvar_ = *hidx;
    return o;
}

std::vector<std::string> MonomialOrder::priority_names() const {
    std::vector<std::string> names;
    names.reserve(perm_.size());
    for (auto i : perm_) names.push_back(ctx_->var_name(i));
    return names;
}

std::strong_ordering MonomialOrder::compare(const Exp& a, const Exp& b) const {
    if (a.size() != ctx_->nvars() || b.size() != ctx_->nvars())
        throw input_error("monomial arity does not match order");
    std::int64_t da = term_total_degree(a), db = term_total_degree(b);
    if (hvar_) {
        da -= a[*hvar_];
        db -= b[*hvar_];
    }
    if (da != db) return da < db ? std::strong_ordering::less : std::strong_ordering::greater;
    for (std::size_t k = 0; k < perm_.size(); ++k) {
        std::int64_t x = a[perm_[k]], y = b[perm_[k]];
        if (x != y) return x < y ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (hvar_) {
        std::int64_t x = a[*hvar_], y = b[*hvar_];
        if (x != y) return x < y ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

const Exp& leading_monomial(const Polynomial& f, const MonomialOrder& ord) {
    if (f.is_zero()) throw input_error("leading monomial of the zero polynomial");
    if (!same_context(f.ctx(), ord.ctx()))
        throw input_error("context mismatch in leading monomial");
    const Exp* best = nullptr;
    for (const auto& [e, c] : f.terms())
        if (!best || ord.compare(e, *best) == std::strong_ordering::greater) best = &e;
    return *best;
}

std::pair<Exp, Coefficient> leading_term(const Polynomial& f, const MonomialOrder& ord) {
    const Exp& m = leading_monomial(f, ord);
    return {m, f.terms().at(m)};
}

Polynomial leading_monomial_poly(const Polynomial& f, const MonomialOrder& ord) {
    return Polynomial::term(f.ctx(), leading_monomial(f, ord),
                            Coefficient::from_int(*f.ctx(), 1));
}

Exp monomial_gcd(const Exp& a, const Exp& b) {
    if (a.size() != b.size()) throw input_error("monomial arity mismatch");
    Exp r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::min(a[i], b[i]);
    return r;
}

Exp monomial_lcm(const Exp& a, const Exp& b) {
    if (a.size() != b.size()) throw input_error("monomial arity mismatch");
    Exp r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

bool monomial_divides(const Exp& a, const Exp& b) {
    if (a.size() != b.size()) throw input_error("monomial arity mismatch");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

bool monomials_coprime(const Exp& a, const Exp& b) {
    if (a.size() != b.size()) throw input_error("monomial arity mismatch");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

CoprimeReport pairwise_coprime(const std::vector<Polynomial>& polys, const MonomialOrder& ord) {
    CoprimeReport rep;
    std::vector<const Exp*> lms;
    lms.reserve(polys.size());
    for (const auto& p : polys) lms.push_back(&leading_monomial(p, ord));
    for (std::size_t i = 0; i < lms.size(); ++i)
        for (std::size_t j = i + 1; j < lms.size(); ++j)
            if (!monomials_coprime(*lms[i], *lms[j])) {
                rep.coprime = false;
                rep.offending = {i, j};
                return rep;
            }
    return rep;
}

} // namespace tcert
