#include "tcert/groebner.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

namespace tcert {

namespace {

struct Budget {
    Limits lim;
    std::uint64_t steps = 0;
    void step() {
        if (++steps > lim.max_steps)
            throw resource_error("reduction step cap exceeded (" +
                                 std::to_string(lim.max_steps) + ")");
    }
    void terms(std::size_t n) const {
        if (n > lim.max_terms)
            throw resource_error("term cap exceeded (" + std::to_string(lim.max_terms) + ")");
    }
};

Polynomial make_monic(const Polynomial& f, const MonomialOrder& ord) {
    auto [m, c] = leading_term(f, ord);
    if (c.is_one()) return f;
    return scale(f, coeff_inv(c, *f.ctx()));
}

DivisionResult divide_impl(const Polynomial& f, const std::vector<Polynomial>& divisors,
                           const MonomialOrder& ord, Budget& budget) {
    for (const auto& g : divisors) {
        check_same_context(f, g, "division");
        if (g.is_zero()) throw input_error("zero divisor in division");
    }
    const auto& ctx = *f.ctx();
    std::vector<Exp> lms;
    std::vector<Coefficient> lcs;
    lms.reserve(divisors.size());
    for (const auto& g : divisors) {
        auto [m, c] = leading_term(g, ord);
        lms.push_back(m);
        lcs.push_back(c);
    }

    DivisionResult res;
    res.quotients.assign(divisors.size(), Polynomial::zero(f.ctx()));
    res.remainder = Polynomial::zero(f.ctx());
    Polynomial p = f;
    while (!p.is_zero()) {
        budget.terms(p.term_count() + res.remainder.term_count());
        auto [pm, pc] = leading_term(p, ord);
        bool reduced = false;
        for (std::size_t i = 0; i < divisors.size(); ++i) {
            if (!monomial_divides(lms[i], pm)) continue;
            Exp q = pm;
            for (std::size_t k = 0; k < q.size(); ++k) q[k] -= lms[i][k];
            Coefficient qc = coeff_div(pc, lcs[i], ctx);
            Polynomial t = Polynomial::term(f.ctx(), std::move(q), std::move(qc));
            res.quotients[i] = res.quotients[i] + t;
            p = p - t * divisors[i];
            budget.step();
            reduced = true;
            break;
        }
        if (!reduced) {
            res.remainder.add_term(pm, pc);
            p = p - Polynomial::term(f.ctx(), pm, pc);
        }
    }
    res.steps = budget.steps;
    return res;
}

} // namespace

DivisionResult divide(const Polynomial& f, const std::vector<Polynomial>& divisors,
                      const MonomialOrder& ord, const Limits& lim) {
    Budget budget{lim};
    return divide_impl(f, divisors, ord, budget);
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& ord) {
    check_same_context(f, g, "s_polynomial");
    const auto& ctx = *f.ctx();
    auto [mf, cf] = leading_term(f, ord);
    auto [mg, cg] = leading_term(g, ord);
    Exp l = monomial_lcm(mf, mg);
    Exp qf = l, qg = l;
    for (std::size_t i = 0; i < l.size(); ++i) {
        qf[i] -= mf[i];
        qg[i] -= mg[i];
    }
    Polynomial tf = Polynomial::term(f.ctx(), std::move(qf), coeff_inv(cf, ctx));
    Polynomial tg = Polynomial::term(f.ctx(), std::move(qg), coeff_inv(cg, ctx));
    return tf * f - tg * g;
}

bool is_groebner(const std::vector<Polynomial>& basis, const MonomialOrder& ord,
                 const Limits& lim, bool parallel) {
    for (const auto& g : basis)
        if (g.is_zero()) throw input_error("zero polynomial in basis");
    if (basis.size() < 2) return true;

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) pairs.emplace_back(i, j);

    auto check_pair = [&](std::size_t i, std::size_t j) {
        Polynomial s = s_polynomial(basis[i], basis[j], ord);
        if (s.is_zero()) return true;
        Budget budget{lim};
        return divide_impl(s, basis, ord, budget).remainder.is_zero();
    };

    if (!parallel) {
        for (auto [i, j] : pairs)
            if (!check_pair(i, j)) return false;
        return true;
    }

    std::atomic<bool> ok{true};
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mtx;
    unsigned nt = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                  static_cast<unsigned>(pairs.size())));
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < nt; ++t)
        threads.emplace_back([&] {
            while (ok.load()) {
                std::size_t k = next.fetch_add(1);
                if (k >= pairs.size()) return;
                try {
                    if (!check_pair(pairs[k].first, pairs[k].second)) ok.store(false);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mtx);
                    if (!first_error) first_error = std::current_exception();
                    ok.store(false);
                }
            }
        });
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return ok.load();
}

std::vector<Polynomial> buchberger_complete(const std::vector<Polynomial>& gens,
                                            const MonomialOrder& ord, const Limits& lim) {
    std::vector<Polynomial> basis;
    for (const auto& g : gens)
        if (!g.is_zero()) basis.push_back(make_monic(g, ord));
    if (basis.empty()) return basis;

    Budget budget{lim};

    struct PendingPair {
        Exp lcm;
        std::size_t i, j;
    };
    std::vector<PendingPair> queue;
    auto push_pairs_with = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i)
            queue.push_back({monomial_lcm(leading_monomial(basis[i], ord),
                                          leading_monomial(basis[j], ord)),
                             i, j});
    };
    for (std::size_t j = 1; j < basis.size(); ++j) push_pairs_with(j);

    while (!queue.empty()) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < queue.size(); ++k) {
            auto c = ord.compare(queue[k].lcm, queue[best].lcm);
            if (c == std::strong_ordering::less ||
                (c == std::strong_ordering::equal &&
                 std::pair(queue[k].i, queue[k].j) < std::pair(queue[best].i, queue[best].j)))
                best = k;
        }
        PendingPair pr = queue[best];
        queue.erase(queue.begin() + static_cast<std::ptrdiff_t>(best));

        Polynomial s = s_polynomial(basis[pr.i], basis[pr.j], ord);
        if (s.is_zero()) continue;
        Polynomial r = divide_impl(s, basis, ord, budget).remainder;
        if (r.is_zero()) continue;
        basis.push_back(make_monic(r, ord));
        std::size_t total = 0;
        for (const auto& b : basis) total += b.term_count();
        budget.terms(total);
        push_pairs_with(basis.size() - 1);
    }

    // Interreduce: drop members reducing to zero against the rest, replace
    // non-trivial tails, restart until stable.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            std::vector<Polynomial> others;
            others.reserve(basis.size() - 1);
            for (std::size_t k = 0; k < basis.size(); ++k)
                if (k != i) others.push_back(basis[k]);
            if (others.empty()) break;
            Polynomial r = divide_impl(basis[i], others, ord, budget).remainder;
            if (r.is_zero()) {
                basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
            r = make_monic(r, ord);
            if (!(r == basis[i])) {
                basis[i] = std::move(r);
                changed = true;
                break;
            }
        }
    }

    std::sort(basis.begin(), basis.end(), [&](const Polynomial& a, const Polynomial& b) {
        return ord.compare(leading_monomial(a, ord), leading_monomial(b, ord)) ==
               std::strong_ordering::less;
    });
    return basis;
}

bool ideal_member(const Polynomial& f, const std::vector<Polynomial>& gens,
                  const MonomialOrder& ord, const Limits& lim) {
    std::vector<Polynomial> gb = buchberger_complete(gens, ord, lim);
    if (gb.empty()) return f.is_zero();
    if (f.is_zero()) return true;
    return divide(f, gb, ord, lim).remainder.is_zero();
}

namespace {

struct Localization {
    CtxPtr ctx;
    MonomialOrder ord;
    std::vector<Polynomial> gens;
};

Localization localize(const std::vector<Polynomial>& gens,
                      const std::vector<Polynomial>& inverted, const CtxPtr& base,
                      const MonomialOrder& ord) {
    for (const auto& s : inverted) {
        if (s.is_zero()) throw input_error("cannot invert the zero polynomial");
        if (!same_context(s.ctx(), base))
            throw input_error("context mismatch in localization");
    }
    std::vector<std::string> unames;
    for (std::size_t k = 0; k < inverted.size(); ++k)
        unames.push_back(fresh_name(*base, "u" + std::to_string(k + 1), unames));
    auto vars = base->vars();
    for (const auto& n : unames) vars.push_back(VarDecl{n, 0});
    CtxPtr lctx = VarContext::make(std::move(vars), base->params());

    auto prio = ord.priority_names();
    for (const auto& n : unames) prio.push_back(n);
    Localization loc{lctx, MonomialOrder::grlex(lctx, prio), {}};
    for (const auto& g : gens) loc.gens.push_back(embed(g, lctx));
    for (std::size_t k = 0; k < inverted.size(); ++k)
        loc.gens.push_back(Polynomial::variable(lctx, unames[k]) * embed(inverted[k], lctx) -
                           Polynomial::constant(lctx, 1));
    return loc;
}

} // namespace

bool ideal_member_localized(const Polynomial& f, const std::vector<Polynomial>& gens,
                            const std::vector<Polynomial>& inverted, const MonomialOrder& ord,
                            const Limits& lim) {
    if (inverted.empty()) return ideal_member(f, gens, ord, lim);
    Localization loc = localize(gens, inverted, f.ctx(), ord);
    return ideal_member(embed(f, loc.ctx), loc.gens, loc.ord, lim);
}

bool ClosureReport::all_pass() const {
    if (!coprime) return false;
    for (const auto& s : samples)
        if (!s.pass) return false;
    return true;
}

ClosureReport projective_closure_basis(const std::vector<Polynomial>& gens,
                                       const MonomialOrder& ord,
                                       const std::vector<Polynomial>& samples,
                                       const Limits& lim) {
    if (gens.empty()) throw input_error("projective closure requires at least one generator");
    for (const auto& g : gens) {
        if (g.is_zero() || *degrees(g).total < 1)
            throw input_error("projective closure requires generators of positive degree");
        if (!same_context(g.ctx(), ord.ctx()))
            throw input_error("context mismatch in projective closure");
    }

    ClosureReport rep;
    auto cp = pairwise_coprime(gens, ord);
    rep.coprime = cp.coprime;
    rep.offending = cp.offending;
    if (!rep.coprime) return rep;

    const CtxPtr& base = ord.ctx();
    rep.homogenizer = fresh_name(*base, "x0");
    auto vars = base->vars();
    vars.push_back(VarDecl{rep.homogenizer, 0});
    rep.hctx = VarContext::make(std::move(vars), base->params());
    MonomialOrder hord = MonomialOrder::homogenization(ord, rep.hctx, rep.homogenizer);

    for (const auto& g : gens) rep.homogenized.push_back(embed(homogenize(g, rep.homogenizer), rep.hctx));

    if (!is_groebner(rep.homogenized, hord, lim))
        throw std::logic_error("homogenized coprime family failed the Groebner re-check");

    std::size_t h0 = *rep.hctx->var_index(rep.homogenizer);
    for (const auto& h : samples) {
        if (!same_context(h.ctx(), base))
            throw input_error("context mismatch in closure sample");
        ClosureSample cs;
        cs.pass = false;
        if (!h.is_zero()) {
            std::int64_t d = *degrees(h).total;
            Polynomial hh = embed(homogenize(h, rep.homogenizer), rep.hctx);
            cs.poly = hh;
            for (std::int64_t e = 0; e <= d && !cs.pass; ++e) {
                Polynomial probe = Polynomial::variable(rep.hctx, h0, e) * hh;
                if (divide(probe, rep.homogenized, hord, lim).remainder.is_zero()) {
                    cs.pass = true;
                    cs.power_used = e;
                }
            }
        } else {
            cs.poly = Polynomial::zero(rep.hctx);
            cs.pass = true;
            cs.power_used = 0;
        }
        rep.samples.push_back(std::move(cs));
    }
    return rep;
}

IsoChainResult verify_iso_chain(const std::vector<IsoStep>& steps, const Limits& lim) {
    IsoChainResult res;
    res.ok = true;
    for (const auto& step : steps) {
        IsoStepResult sr;
        if (std::holds_alternative<IsoSubstStep>(step)) {
            const auto& s = std::get<IsoSubstStep>(step);
            sr.name = s.name;
            if (s.rhs.size() != s.lhs.size() ||
                (!s.multipliers.empty() && s.multipliers.size() != s.lhs.size()))
                throw input_error("iso chain step '" + s.name + "': size mismatch");
            CtxPtr tctx = s.order.ctx();
            sr.ok = true;
            for (std::size_t i = 0; i < s.lhs.size(); ++i) {
                Polynomial mapped = substitute(s.lhs[i], s.bindings, tctx);
                if (!s.multipliers.empty()) mapped = mapped * s.multipliers[i];
                Polynomial diff = mapped - s.rhs[i];
                bool ok_i = s.relations.empty()
                                ? diff.is_zero()
                                : ideal_member(diff, s.relations, s.order, lim);
                if (!ok_i) {
                    sr.ok = false;
                    sr.detail = "entry " + std::to_string(i) + " does not match";
                    break;
                }
            }
        } else {
            const auto& s = std::get<IsoMemberStep>(step);
            sr.name = s.name;
            sr.ok = true;
            for (std::size_t i = 0; i < s.lhs.size() && sr.ok; ++i)
                if (!ideal_member_localized(s.lhs[i], s.rhs, s.inverted, s.order, lim)) {
                    sr.ok = false;
                    sr.detail = "forward inclusion fails at entry " + std::to_string(i);
                }
            for (std::size_t i = 0; i < s.rhs.size() && sr.ok; ++i)
                if (!ideal_member_localized(s.rhs[i], s.lhs, s.inverted, s.order, lim)) {
                    sr.ok = false;
                    sr.detail = "reverse inclusion fails at entry " + std::to_string(i);
                }
        }
        res.ok = res.ok && sr.ok;
        res.steps.push_back(std::move(sr));
    }
    return res;
}

std::string fresh_name(const VarContext& ctx, const std::string& base,
                       const std::vector<std::string>& also_taken) {
    auto taken = [&](const std::string& n) {
        if (ctx.has_name(n)) return true;
        return std::find(also_taken.begin(), also_taken.end(), n) != also_taken.end();
    };
    if (!taken(base)) return base;
    for (int k = 2;; ++k) {
        std::string n = base + "_" + std::to_string(k);
        if (!taken(n)) return n;
    }
}

} // namespace tcert
