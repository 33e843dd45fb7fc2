#include "tcert/certify.hpp"
#include "tcert/construct.hpp"
#include "tcert/groebner.hpp"
#include "tcert/io.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace tcert;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int g_failures = 0;

// Runs one criterion body, enforces the time budget (budget_ms <= 0 means the
// budget is checked inside the body or not stated), prints one verdict line.
void criterion(int num, const std::string& label, double budget_ms,
               const std::function<void(std::vector<std::string>&)>& body) {
    std::vector<std::string> notes;
    auto t0 = Clock::now();
    try {
        body(notes);
    } catch (const std::exception& e) {
        notes.push_back(std::string("unexpected exception: ") + e.what());
    }
    double ms = ms_since(t0);
    if (budget_ms > 0 && ms >= budget_ms) notes.insert(notes.begin(), "over time budget");

    std::ostringstream line;
    line << "criterion " << num << ": " << (notes.empty() ? "PASS" : "FAIL") << "  " << label;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", ms);
    line << "  [" << buf << " ms";
    if (budget_ms > 0) {
        std::snprintf(buf, sizeof(buf), "%g", budget_ms / 1000.0);
        line << ", budget " << buf << " s";
    }
    line << "]";
    std::cout << line.str() << std::endl;
    if (!notes.empty()) {
        ++g_failures;
        std::size_t shown = 0;
        for (const auto& n : notes) {
            std::cerr << "  criterion " << num << " failure: " << n << "\n";
            if (++shown == 20) {
                std::cerr << "  ... " << (notes.size() - shown) << " more\n";
                break;
            }
        }
    }
}

void expect(bool ok, const std::string& what, std::vector<std::string>& notes) {
    if (!ok && notes.size() <= 64) notes.push_back(what);
}

Polynomial var_product(const CtxPtr& ctx, std::int64_t n) {
    Polynomial p = Polynomial::constant(ctx, 1);
    for (std::int64_t i = 1; i <= n; ++i)
        p = p * Polynomial::variable(ctx, "x" + std::to_string(i));
    return p;
}

// Deterministic elements of the ideal generated by `gens`: random small
// combinations sum r_i * g_i.
std::vector<Polynomial> ideal_samples(const std::vector<Polynomial>& gens, const CtxPtr& ctx,
                                      int count, unsigned seed) {
    std::mt19937 gen(seed);
    std::size_t nv = ctx->nvars();
    std::vector<Polynomial> out;
    for (int s = 0; s < count; ++s) {
        Polynomial h = Polynomial::zero(ctx);
        for (const auto& g : gens) {
            Polynomial r = Polynomial::zero(ctx);
            int nterms = 1 + static_cast<int>(gen() % 2);
            for (int t = 0; t < nterms; ++t) {
                Exp e(nv, 0);
                int deg = static_cast<int>(gen() % 3);
                for (int k = 0; k < deg; ++k) e[gen() % nv] += 1;
                std::int64_t c = 1 + static_cast<std::int64_t>(gen() % 3);
                if (gen() % 2) c = -c;
                r.add_term(e, Coefficient::from_rat(*ctx, BigRat(c)));
            }
            h = h + r * g;
        }
        out.push_back(h);
    }
    return out;
}

std::vector<std::vector<BigInt>> pascal(std::int64_t rows) {
    std::vector<std::vector<BigInt>> c(rows + 1);
    for (std::int64_t i = 0; i <= rows; ++i) {
        c[i].assign(i + 1, BigInt(1));
        for (std::int64_t j = 1; j < i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
    }
    return c;
}

std::pair<int, std::string> run_cli(const std::string& cli, const std::string& args) {
    std::string cmd = "\"" + cli + "\" " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, "<popen failed>"};
    std::string out;
    char buf[4096];
    std::size_t k;
    while ((k = fread(buf, 1, sizeof(buf), p)) > 0) out.append(buf, k);
    return {pclose(p), out};
}

} // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "";

    // Families assembled by criterion 5 that the closure criterion re-checks.
    std::vector<GeneratedFamily> closure_pool;

    criterion(1, "leading monomials of the worked triple", 1.0, [&](auto& notes) {
        auto ctx = VarContext::make({{"x", 0}, {"y", 0}});
        Polynomial f = parse_poly("3*x^2*y^3 + 6*x^3*y^2 - 5*x*y + 5", ctx);
        Polynomial g = parse_poly("x^5 + x^2*y^2 + y^3 + x*y - 1", ctx);
        Polynomial h = parse_poly("y^2 + y + 1", ctx);
        MonomialOrder ord = MonomialOrder::grlex(ctx);
        expect(leading_monomial(f, ord) == Exp{3, 2}, "LM(f) != x^3*y^2", notes);
        expect(leading_monomial(g, ord) == Exp{5, 0}, "LM(g) != x^5", notes);
        expect(leading_monomial(h, ord) == Exp{0, 2}, "LM(h) != y^2", notes);
        expect(monomials_coprime(leading_monomial(g, ord), leading_monomial(h, ord)),
               "LM(g), LM(h) should be coprime", notes);
        expect(!monomials_coprime(leading_monomial(f, ord), leading_monomial(g, ord)),
               "LM(f), LM(g) should share a variable", notes);
        CoprimeReport rep = pairwise_coprime({f, g, h}, ord);
        expect(!rep.coprime && rep.offending && rep.offending->first == 0 &&
                   rep.offending->second == 1,
               "offending pair should be (0, 1)", notes);
    });

    criterion(2, "pencil member sweep: degree, first coefficient, z-derivative", 5000.0,
              [&](auto& notes) {
        for (std::int64_t n = 2; n <= 4; ++n) {
            for (std::int64_t m = 2; m <= 4; ++m) {
                std::int64_t hi = n + (std::int64_t(1) << n) - 2;
                for (std::int64_t N = n + 1; N <= hi; ++N) {
                    std::string where = "(n=" + std::to_string(n) + ", m=" + std::to_string(m) +
                                        ", N=" + std::to_string(N) + ")";
                    GeneratedFamily fam = build_f0(n, m, N);
                    const Polynomial& f = fam.polys[0];
                    expect(*tcert::degrees(f).total == n + m, "total degree " + where, notes);

                    Exp e(fam.ctx->nvars(), 0);
                    e[*fam.ctx->var_index("x1")] = 1;
                    e[*fam.ctx->var_index("x" + std::to_string(n + 1))] = m;
                    auto it = f.terms().find(e);
                    expect(it != f.terms().end() && it->second.is_one(),
                           "first added coefficient is not x1 " + where, notes);

                    Polynomial dz = partial_derivative(f, "z");
                    Polynomial want =
                        scale(var_product(fam.ctx, n) * Polynomial::variable(fam.ctx, "z", m - 1),
                              BigRat(n % 2 == 0 ? m : -m));
                    expect(dz == want, "z-derivative mismatch " + where, notes);
                }
            }
        }
    });

    criterion(3, "rational-point witnesses and their residuals", 1000.0, [&](auto& notes) {
        struct WCase {
            std::int64_t n, m, N;
        };
        for (const WCase& c : std::vector<WCase>{
                 {2, 2, 3}, {2, 3, 3}, {3, 2, 4}, {3, 3, 4}, {2, 2, 4}}) {
            std::string where = "(n=" + std::to_string(c.n) + ", m=" + std::to_string(c.m) +
                                ", N=" + std::to_string(c.N) + ")";
            WitnessCheck w = witness_f0(c.n, c.m, c.N);
            WitnessResult res = check_star_witness(w);
            expect(res.ok, "pencil witness rejected " + where, notes);
            std::int64_t coef = 1;
            for (std::int64_t k = 0; k < c.m; ++k) coef *= c.n - 1;
            std::string text =
                (coef == 1 ? "pi + x1 + q" : std::to_string(coef) + "*pi + x1 + q");
            expect(res.residual == parse_poly(text, w.ctx),
                   "pencil residual != " + text + " " + where, notes);
        }

        WitnessCheck wq = witness_hpt_quartic();
        WitnessResult rq = check_star_witness(wq);
        expect(rq.ok, "quartic witness rejected", notes);
        expect(rq.residual == parse_poly("x1 + q", wq.ctx), "quartic residual != x1 + q", notes);

        WitnessCheck wp = witness_ci23();
        WitnessResult rp = check_star_witness(wp);
        expect(rp.ok, "degree-(2,3) witness rejected", notes);
        expect(rp.residual == parse_poly("x3 - alpha^2 + q", wp.ctx),
               "degree-(2,3) residual != x3 - alpha^2 + q", notes);
    });

    criterion(4, "isomorphism chains, both membership directions", 30000.0, [&](auto& notes) {
        for (const auto& [name, steps] :
             std::vector<std::pair<std::string, std::vector<IsoStep>>>{
                 {"quadrics-to-quartic", chain_hpt()}, {"chart-change", chain_chart()}}) {
            IsoChainResult res = verify_iso_chain(steps);
            expect(res.ok, name + " chain failed", notes);
            for (const auto& st : res.steps)
                expect(st.ok, name + " step '" + st.name + "': " + st.detail, notes);
        }
    });

    criterion(5, "complete intersection assembly sweep", 120000.0, [&](auto& notes) {
        std::set<std::string> seen_cases;
        std::int64_t built = 0;

        auto tails = [](std::int64_t s, std::int64_t d1) {
            std::set<std::vector<std::int64_t>> out;
            if (s == 1) {
                out.insert({});
                return out;
            }
            if (s == 2) {
                for (std::int64_t d2 = 2; d2 <= 8; ++d2) out.insert({d2});
                return out;
            }
            if (s == 3) {
                for (std::int64_t d2 = 2; d2 <= 8; ++d2)
                    for (std::int64_t d3 = 2; d3 <= 8; ++d3) out.insert({d2, d3});
                return out;
            }
            // s == 4: the extreme shapes for this d1 plus a deterministic
            // stride through the full 7x7x7 tail grid
            std::size_t k = static_cast<std::size_t>(s - 1);
            std::vector<std::int64_t> t(k, d1);
            out.insert(t);
            t.assign(k, 2);
            out.insert(t);
            t.assign(k, 2);
            t[0] = d1;
            out.insert(t);
            t.clear();
            for (std::size_t i = 0; i < k; ++i)
                t.push_back(std::max<std::int64_t>(2, d1 - 1 - static_cast<std::int64_t>(i)));
            out.insert(t);
            t.assign(k, std::max<std::int64_t>(2, (d1 + 2) / 2));
            out.insert(t);
            for (std::int64_t idx = d1 % 12; idx < 343; idx += 12)
                out.insert({2 + idx / 49, 2 + (idx / 7) % 7, 2 + idx % 7});
            return out;
        };

        for (std::int64_t n = 2; n <= 3; ++n)
        for (std::int64_t m = 2; m <= 3; ++m)
        for (std::int64_t s = 1; s <= 4; ++s)
        for (std::int64_t d1 = n + m; d1 <= 8; ++d1)
        for (const auto& tail : tails(s, d1)) {
            std::vector<std::int64_t> degs{d1};
            degs.insert(degs.end(), tail.begin(), tail.end());
            std::int64_t sum = 0;
            for (auto d : degs) sum += d;
            std::int64_t Mlo = s - 1, Mhi = sum - n - m;
            if (Mhi < Mlo) continue;
            std::set<std::int64_t> Ms;
            for (std::int64_t cand : {s - 1, s == 4 ? 2 * s - 3 : s, 2 * s - 3, 2 * s - 2, Mhi})
                if (cand >= Mlo && cand <= Mhi) Ms.insert(cand);
            for (std::int64_t M : Ms)
            for (std::int64_t N : {std::int64_t(4), std::int64_t(5)}) {
                std::string where = "(n=" + std::to_string(n) + ", m=" + std::to_string(m) +
                                    ", N=" + std::to_string(N) + ", M=" + std::to_string(M) +
                                    ", degrees=";
                for (auto d : degs) where += std::to_string(d) + ",";
                where.back() = ')';
                try {
                    GeneratedFamily fam = assemble_ci(n, m, N, M, degs);
                    ++built;
                    seen_cases.insert(family_name(fam.recipe.family));
                    expect(fam.multidegree == degs, "declared multidegree " + where, notes);
                    bool deg_ok = fam.polys.size() == degs.size();
                    for (std::size_t i = 0; deg_ok && i < degs.size(); ++i) {
                        auto di = tcert::degrees(fam.polys[i]).total;
                        deg_ok = di && *di == degs[i];
                    }
                    expect(deg_ok, "polynomial degrees " + where, notes);
                    if (s <= M) {
                        expect(pairwise_coprime(fam.polys, fam.order).coprime,
                               "leading monomials not coprime " + where, notes);
                        expect(fam.claims_coprime, "coprimality claim " + where, notes);
                        expect(is_groebner(fam.polys, fam.order, {}, true),
                               "S-pair reduction failed " + where, notes);
                    }
                    if (fam.ctx->nvars() <= 12) closure_pool.push_back(std::move(fam));
                } catch (const input_error& e) {
                    expect(false, "assembly rejected " + where + ": " + e.what(), notes);
                }
            }
        }
        for (const char* want : {"CI_CASE_A", "CI_CASE_B", "CI_CASE_C"})
            expect(seen_cases.count(want) == 1, std::string("case not exercised: ") + want,
                   notes);
        std::cerr << "  criterion 5: assembled " << built << " families, kept "
                  << closure_pool.size() << " for the closure criterion\n";
    });

    criterion(6, "projective closure on the assembled families", 120000.0, [&](auto& notes) {
        expect(!closure_pool.empty(), "no families carried over from criterion 5", notes);
        unsigned seed = 9001;
        for (const GeneratedFamily& fam : closure_pool) {
            bool ok;
            if (fam.claims_coprime) {
                std::vector<Polynomial> samples = ideal_samples(fam.polys, fam.ctx, 5, seed++);
                ClosureReport rep = projective_closure_basis(fam.polys, fam.order, samples);
                ok = rep.coprime && rep.all_pass();
            } else {
                // honest assemblies that do not claim coprime leading
                // monomials must be reported as such, with the offending pair
                ClosureReport rep = projective_closure_basis(fam.polys, fam.order, {});
                ok = !rep.coprime && rep.offending.has_value();
            }
            if (ok) continue;
            std::string where = family_name(fam.recipe.family) + " over " +
                                std::to_string(fam.ctx->nvars()) + " variables, degrees ";
            for (auto d : fam.multidegree) where += std::to_string(d) + ",";
            expect(false, "closure criterion failed for " + where, notes);
        }
    });

    criterion(7, "binomial and budget identities", 1000.0, [&](auto& notes) {
        auto C = pascal(20);
        for (std::int64_t n = 2; n <= 20; ++n) {
            BigInt lhs = 0;
            for (std::int64_t j = 0; j < n; ++j) lhs += C[n][j] * BigInt(j / 2);
            BigInt rhs = BigInt(n - 1) * (BigInt(1) << (n - 2)) - BigInt(n / 2);
            expect(lhs == rhs, "half-floor binomial identity at n=" + std::to_string(n), notes);
        }
        for (std::int64_t d = 4; d <= 20; ++d)
            expect(closed_form_2bound(d) == bound_B(d - 2, 2),
                   "closed form != index bound at d=" + std::to_string(d), notes);
        auto C12 = pascal(12);
        for (std::int64_t n = 2; n <= 12; ++n)
            for (std::int64_t m = 1; m <= 6; ++m) {
                BigInt direct = 0;
                for (std::int64_t l = 0; l < n; ++l) direct += C12[n][l] * BigInt(l / m);
                std::int64_t b = double_cone_budget(n, m);
                expect(BigInt(b) == direct && b == double_cone_budget_binom(n, m),
                       "cone budget formulas disagree at n=" + std::to_string(n) +
                           ", m=" + std::to_string(m),
                       notes);
            }
        IdentityReport rep = identity_suite(12, 6);
        expect(rep.ok, "identity suite reported " + std::to_string(rep.failures.size()) +
                           " failures",
               notes);
    });

    criterion(8, "certification reproduction, each call under 1 ms", 0.0, [&](auto& notes) {
        double max_ms = 0;
        auto timed = [&](const std::function<Certificate()>& fn) {
            auto t0 = Clock::now();
            Certificate c = fn();
            max_ms = std::max(max_ms, ms_since(t0));
            return c;
        };
        Certificate a = timed([] { return certify_ci({4, {4}, 2, 0}); });
        expect(a.certified, "(a) quartic fourfold should certify", notes);
        Certificate b = timed([] { return certify_ci({5, {4}, 2, 0}); });
        expect(!b.certified, "(b) quartic fivefold should not certify", notes);
        Certificate c1 = timed([] { return certify_ci({28, {6}, 2, 0}); });
        expect(c1.certified && c1.witness_n && *c1.witness_n == 4,
               "(c) sextic at index 24 should certify via n=4", notes);
        expect(fano_index_ci(28, {6}) == 24, "(c) index arithmetic", notes);
        Certificate c2 = timed([] { return certify_ci({29, {6}, 2, 0}); });
        expect(!c2.certified, "(c) sextic at index 25 should not certify", notes);
        Certificate d1 = timed([] { return certify_grassmannian({2, 4, 4, 2, 0}); });
        expect(d1.certified, "(d) Gr(2,4) quartic section should certify", notes);
        Certificate d2 = timed([] { return certify_grassmannian({2, 5, 4, 2, 0}); });
        expect(!d2.certified, "(d) Gr(2,5) quartic section should not certify", notes);
        Certificate e = timed([] { return certify_product({{4, 2}, {4, 3}, 2, 0}); });
        expect(e.certified, "(e) product multidegree (4,3) should certify", notes);
        expect(max_ms < 1.0, "a certification call took " + std::to_string(max_ms) + " ms",
               notes);
    });

    criterion(9, "degeneration round trips and cone iteration", 10000.0, [&](auto& notes) {
        auto ctx0 = VarContext::make({{"x", 0}});
        Polynomial fx = parse_poly("x^2 + x", ctx0);
        HyperPair p2 = step1_pair(step1_pair(fx));
        for (std::int64_t d : {3, 4, 5}) {
            HyperPair dd = step2_deform(p2, d);
            Polynomial back = specialize_params(dd.second, {{dd.t_names.back(), BigRat(0)}});
            expect(back == embed(p2.second, dd.ctx),
                   "deformation does not vanish at t=0, d=" + std::to_string(d), notes);
        }
        HyperPair p3 = step1_pair(p2);
        HyperPair d3 = step2_deform(p3, 5);
        expect(specialize_params(d3.second, {{d3.t_names.back(), BigRat(0)}}) ==
                   embed(p3.second, d3.ctx),
               "three-variable deformation does not vanish at t=0", notes);

        for (std::int64_t d : {2, 3, 5, 8}) {
            HyperPair la = step2_alt_m2(p2, d);
            Polynomial back = specialize_params(la.second, {{la.t_names.back(), BigRat(0)}});
            expect(back == parse_poly("t - w1*w2", la.ctx),
                   "two-variable alternative does not return to t - w1*w2, d=" +
                       std::to_string(d),
                   notes);
        }

        struct Cone {
            std::int64_t n, m;
        };
        for (const Cone& c : std::vector<Cone>{{2, 2}, {3, 2}, {4, 2}, {4, 3}}) {
            std::string where = "(n=" + std::to_string(c.n) + ", m=" + std::to_string(c.m) + ")";
            std::int64_t top = (std::int64_t(1) << c.n) - 2;
            GeneratedFamily fam = build_f0(c.n, c.m, c.n + top);
            std::int64_t total = 0;
            std::string spent;
            for (std::int64_t j = 1; j <= top; ++j) {
                std::int64_t k = double_cone_applications_at(c.n, c.m, j);
                std::string name = "x" + std::to_string(c.n + j);
                for (std::int64_t rep = 0; rep < k; ++rep) {
                    fam = apply_double_cone(fam, name);
                    ++total;
                    expect(*tcert::degrees(fam.polys[0]).total == c.n + c.m,
                           "cone changed the degree " + where, notes);
                }
                if (k > 0 && spent.empty()) spent = name;
            }
            expect(total == double_cone_budget(c.n, c.m), "budget not consumed " + where, notes);
            if (!spent.empty()) {
                expect(fam.recipe.family == Family::DOUBLE_CONE, "recipe tag " + where, notes);
                bool threw = false;
                try {
                    apply_double_cone(fam, spent);
                } catch (const input_error&) {
                    threw = true;
                }
                expect(threw, "application beyond the budget accepted " + where, notes);
            }
            GeneratedFamily flat = double_cone_full_iteration(c.n, c.m);
            expect(flat.polys[0] == fam.polys[0], "packaged iteration differs " + where, notes);
        }
    });

    criterion(10, "CLI determinism across repeated runs", 0.0, [&](auto& notes) {
        if (cli.empty()) {
            expect(false, "path to the CLI binary must be passed as argv[1]", notes);
            return;
        }
        std::vector<std::string> invocations = {
            "construct g --n 3 --m 2",
            "construct f0 --n 3 --m 2 --N 5 --json",
            "construct base-n3 --d 5 --m 2",
            "construct double-cone --n 3 --m 2",
            "construct check-f --n 2 --m 2 --N 4 --d 3 --M 2 --json",
            "construct ci --n 2 --m 2 --N 4 --M 2 --degrees 4,3",
            "construct ci-low --M 3 --degrees 2,2,2 --json",
            "construct product --n 2 --m 2 --Ms 4,2 --ds 4,3",
            "construct fixed hpt-quartic --json",
            "certify ci --dim 3 --degrees 4 --m 2 --json",
            "certify product --Ms 4,2 --ds 4,3 --m 2",
            "certify grass --l 2 --n 4 --d 4 --m 2 --json",
            "verify groebner --fixed ci-23",
            "verify closure --fixed ci-23 --samples 5 --seed 11 --json",
            "verify witness --fixed f0 --n 2 --m 2 --N 3 --json",
            "verify witness --fixed hpt-quartic",
            "verify iso-chain --fixed chart",
            "table ci-2torsion",
            "table ci-general --json",
            "table grass",
            "table product --json",
            "selftest",
        };
        for (const std::string& inv : invocations) {
            auto first = run_cli(cli, inv);
            auto second = run_cli(cli, inv);
            expect(first.first == second.first, "exit code changed: " + inv, notes);
            expect(first.second == second.second, "output changed: " + inv, notes);
            expect(!first.second.empty(), "no output: " + inv, notes);
        }
    });

    if (g_failures == 0) {
        std::cout << "acceptance: all 10 criteria pass" << std::endl;
        return 0;
    }
    std::cout << "acceptance: " << g_failures << " criteria failed" << std::endl;
    return 1;
}
