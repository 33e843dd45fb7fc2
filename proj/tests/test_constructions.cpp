#include "tcert/construct.hpp"
#include "tcert/io.hpp"

#include <doctest.h>

using namespace tcert;

namespace {

// The single name present in `ctx` but not in `base`.
std::string new_param(const CtxPtr& ctx, const CtxPtr& base) {
    std::string found;
    for (const auto& p : ctx->params()) {
        if (base->param_index(p.name)) continue;
        REQUIRE(found.empty());
        found = p.name;
    }
    REQUIRE(!found.empty());
    return found;
}

} // namespace

TEST_CASE("ceiling division") {
    CHECK(ceil_div(3, 2) == 2);
    CHECK(ceil_div(4, 2) == 2);
    CHECK(ceil_div(1, 3) == 1);
    CHECK_THROWS_AS(ceil_div(0, 5), input_error);
}

TEST_CASE("power-sum core oracle") {
    Polynomial g22 = build_g(2, 2);
    CHECK(g22 == parse_poly("pi*(1 + x1^2 + x2^2)^2 - x1*x2", g22.ctx()));

    Polynomial g32 = build_g(3, 2);
    CHECK(g32 == parse_poly("pi*(1 + x1^2 + x2^2 + x3^2)^2 + x1*x2*x3", g32.ctx()));

    Polynomial g23 = build_g(2, 3);
    CHECK(g23 == parse_poly("pi*(1 + x1 + x2)^3 - x1*x2", g23.ctx()));
}

TEST_CASE("pencil member oracle") {
    GeneratedFamily fam = build_f0(2, 2, 4);
    Polynomial expect = parse_poly(
        "pi*(1 + x1^2 + x2^2)^2 - x1*x2 + x1*x3^2 - x2*x4^2 + x1*x2*z^2", fam.ctx);
    CHECK(fam.polys.size() == 1);
    CHECK(fam.polys[0] == expect);
    CHECK(fam.designated == "z");
    CHECK(fam.multidegree == std::vector<std::int64_t>{4});
    CHECK(fam.obstruction == Polynomial::constant(fam.ctx, 1));
    Polynomial locus = fam.obstruction * partial_derivative(fam.polys[0], "z");
    CHECK(locus == parse_poly("2*x1*x2*z", fam.ctx));

    GeneratedFamily big = build_f0(3, 2, 9);
    Polynomial tail = parse_poly(
        "x1*x4^2 - x2*x5^2 + x1*x2*x6^2 - x3*x7^2 + x1*x3*x8^2 + x2*x3*x9^2",
        big.ctx);
    Polynomial core = embed(build_g(3, 2), big.ctx);
    Polynomial zterm = parse_poly("-x1*x2*x3*z^2", big.ctx);
    CHECK(big.polys[0] == core + tail + zterm);
}

TEST_CASE("pencil member properties") {
    for (std::int64_t n = 2; n <= 4; ++n) {
        for (std::int64_t m = 2; m <= 3; ++m) {
            std::int64_t top = n + (std::int64_t(1) << n) - 2;
            for (std::int64_t N = n + 1; N <= top; ++N) {
                GeneratedFamily fam = build_f0(n, m, N);
                const Polynomial& f = fam.polys[0];
                CHECK(*degrees(f).total == n + m);

                // the first extra variable carries the plain x1 coefficient
                Polynomial c1term =
                    parse_poly("x1*x" + std::to_string(n + 1) + "^" + std::to_string(m),
                               fam.ctx);
                Polynomial probe = f - c1term;
                CHECK(probe.term_count() == f.term_count() - 1);

                // z-derivative collapses to the signed obstruction monomial
                Polynomial expect = parse_poly(
                    std::string(n % 2 == 0 ? "" : "-") + std::to_string(m) + "*x1", fam.ctx);
                for (std::int64_t i = 2; i <= n; ++i)
                    expect = expect * Polynomial::variable(fam.ctx, "x" + std::to_string(i));
                expect = expect * Polynomial::variable(fam.ctx, "z", m - 1);
                CHECK(partial_derivative(f, "z") == expect);
            }
        }
    }
    CHECK_THROWS_AS(build_f0(2, 2, 2), input_error);
    CHECK_THROWS_AS(build_f0(2, 2, 5), input_error);
}

TEST_CASE("three-variable base oracle") {
    GeneratedFamily fam = build_base_n3(4, 2);
    Polynomial expect = parse_poly(
        "rho*x3^4 + pi*(1 + x1^2 + x2^2)^2 - x1*x2 + x1*x3^2 + x1*x2*z^2", fam.ctx);
    CHECK(fam.polys[0] == expect);
    CHECK(fam.designated == "z");
    CHECK(*degrees(fam.polys[0]).total == 4);
    CHECK_THROWS_AS(build_base_n3(3, 2), input_error);
    GeneratedFamily d7 = build_base_n3(7, 3);
    CHECK(*degrees(d7.polys[0]).total == 7);
}

TEST_CASE("cone budgets agree between the two formulas") {
    for (std::int64_t n = 2; n <= 8; ++n)
        for (std::int64_t m = 1; m <= 4; ++m)
            CHECK(double_cone_budget(n, m) == double_cone_budget_binom(n, m));

    CHECK(double_cone_budget(2, 2) == 0);
    CHECK(double_cone_budget(3, 2) == 3);
    CHECK(double_cone_budget(4, 2) == 10);
    CHECK(double_cone_budget(4, 3) == 4);
    CHECK(double_cone_budget(3, 3) == 0);

    for (std::int64_t n = 2; n <= 5; ++n)
        for (std::int64_t m = 1; m <= 3; ++m) {
            std::int64_t sum = 0;
            for (std::int64_t j = 1; j <= (std::int64_t(1) << n) - 2; ++j)
                sum += double_cone_applications_at(n, m, j);
            CHECK(sum == double_cone_budget(n, m));
        }
    CHECK(double_cone_applications_at(3, 2, 1) == 1);
    CHECK(double_cone_applications_at(3, 2, 3) == 0);
}

TEST_CASE("cone application preserves shape and spends budget") {
    GeneratedFamily fam = build_f0(3, 2, 4);
    GeneratedFamily out = apply_double_cone(fam, "x4");
    CHECK(out.ctx->nvars() == fam.ctx->nvars() + 1);
    CHECK(*degrees(out.polys[0]).total == 5);
    CHECK(out.designated == "z");
    CHECK(out.recipe.family == Family::DOUBLE_CONE);

    // the obstruction gains the new cone variable as a factor
    Polynomial w = Polynomial::variable(out.ctx, "w1");
    CHECK(out.obstruction == embed(fam.obstruction, out.ctx) * w);

    // a second application at the same variable exceeds the degree caps
    CHECK_THROWS_AS(apply_double_cone(out, "x4"), input_error);
}

TEST_CASE("full cone iteration consumes the whole budget") {
    GeneratedFamily flat = double_cone_full_iteration(2, 2);
    CHECK(flat.ctx->nvars() == 5); // x1..x4 and z, no admissible cones
    CHECK(flat.recipe.family == Family::DOUBLE_CONE);

    GeneratedFamily full = double_cone_full_iteration(3, 2);
    CHECK(full.ctx->nvars() == 10 + 3);
    CHECK(*degrees(full.polys[0]).total == 5);
    std::int64_t wcount = 0;
    for (const auto& v : full.ctx->vars())
        if (v.name[0] == 'w') ++wcount;
    CHECK(wcount == double_cone_budget(3, 2));
}

TEST_CASE("linear extension chain") {
    GeneratedFamily base = build_f0(2, 2, 3);
    HyperPair p1 = step1_pair(base.polys[0]);
    CHECK(p1.M == 1);
    CHECK(p1.w_names == std::vector<std::string>{"w1"});
    CHECK(p1.t_names.empty());
    CHECK(p1.second == parse_poly("w1", p1.ctx));
    CHECK(p1.f == embed(base.polys[0], p1.ctx) + parse_poly("w1", p1.ctx));

    HyperPair p2 = step1_pair(p1);
    CHECK(p2.M == 2);
    CHECK(p2.t_names == std::vector<std::string>{"t"});
    CHECK(p2.second == parse_poly("t + w2*w1", p2.ctx));

    HyperPair p3 = step1_pair(p2);
    CHECK(p3.M == 3);
    CHECK(p3.t_names == std::vector<std::string>{"t", "t_2"});
    CHECK(p3.second == parse_poly("t_2 + w3*(t + w2*w1)", p3.ctx));
    CHECK(*degrees(p3.second).total == 3);
}

TEST_CASE("companion deformation vanishes at t = 0") {
    GeneratedFamily base = build_f0(2, 2, 3);
    HyperPair p2 = step1_pair(step1_pair(base.polys[0]));

    HyperPair d4 = step2_deform(p2, 4);
    CHECK(*degrees(d4.second).total == 4);
    std::string tn = new_param(d4.ctx, p2.ctx);
    CHECK(specialize_params(d4.second, {{tn, BigRat(0)}}) == embed(p2.second, d4.ctx));
    CHECK(d4.second == parse_poly("t + w2*w1 + " + tn + "*w2*(w1 - 1)*w1^2", d4.ctx));

    HyperPair p3 = step1_pair(p2);
    HyperPair d5 = step2_deform(p3, 5, std::string("w1*w2^2"));
    CHECK(*degrees(d5.second).total == 5);
    std::string tn3 = new_param(d5.ctx, p3.ctx);
    CHECK(specialize_params(d5.second, {{tn3, BigRat(0)}}) == embed(p3.second, d5.ctx));

    CHECK_THROWS_AS(step2_deform(p2, 2), input_error);
    CHECK_THROWS_AS(step2_deform(p3, 5, std::string("w1")), input_error);
    CHECK_THROWS_AS(step2_deform(p3, 5, std::string("x1^3")), input_error);
    CHECK_THROWS_AS(step2_deform(step1_pair(base.polys[0]), 3), input_error);
}

TEST_CASE("two-variable alternative deformation") {
    GeneratedFamily base = build_f0(2, 2, 3);
    HyperPair p2 = step1_pair(step1_pair(base.polys[0]));

    HyperPair alt = step2_alt_m2(p2, 4);
    std::string tn = new_param(alt.ctx, p2.ctx);
    CHECK(alt.second == parse_poly("t - w1*w2 + " + tn + "*w1^4", alt.ctx));
    CHECK(specialize_params(alt.second, {{tn, BigRat(0)}}) ==
          parse_poly("t - w1*w2", alt.ctx));

    // same polynomial regrouped around w1
    Polynomial w1 = parse_poly("w1", alt.ctx);
    Polynomial regroup = parse_poly("t", alt.ctx) -
                         w1 * (parse_poly("w2", alt.ctx) -
                               Polynomial::parameter(alt.ctx, tn) * poly_pow(w1, 3));
    CHECK(alt.second == regroup);

    CHECK_THROWS_AS(step2_alt_m2(step1_pair(p2), 4), input_error);
    CHECK_THROWS_AS(step2_alt_m2(p2, 1), input_error);
}

TEST_CASE("wrap construction oracles") {
    auto ctx = VarContext::make({{"x", 0}});
    Polynomial f = parse_poly("x", ctx);

    CheckFResult w11 = build_check_f(f, 1, 1);
    CHECK(w11.t1.empty());
    CHECK(w11.poly ==
          parse_poly("t2 + (x + w1)*(-w1 - t*(w1 - 1))", w11.ctx));
    CHECK(*degrees(w11.poly).total == 2);

    CheckFResult w23 = build_check_f(f, 3, 2);
    CHECK(!w23.t1.empty());
    CHECK(w23.poly ==
          parse_poly("t2 + (x + w1 + w2)*(t1 - w2*w1 - t*w2*w2^2)", w23.ctx));
    CHECK(*degrees(w23.poly).total == 4);

    CheckFOptions opt;
    opt.g_text = "w1";
    opt.h_text = "w1*w2";
    CheckFResult custom = build_check_f(f, 3, 2, opt);
    CHECK(custom.poly ==
          parse_poly("t2 + (x + w1 + w2)*(t1 - w2*w1 - t*w2*w1*w2)", custom.ctx));

    CHECK_THROWS_AS(build_check_f(f, 1, 2), input_error);
    CHECK_THROWS_AS(build_check_f(f, 0, 0), input_error);
    CheckFOptions bad;
    bad.h_text = "w1";
    CHECK_THROWS_AS(build_check_f(f, 3, 2, bad), input_error);
}

TEST_CASE("base hypersurface dispatch") {
    // exact pencil fit
    GeneratedFamily a = base_hypersurface(4, 4, 2, 2);
    CHECK(a.ctx->nvars() == 4);
    CHECK(a.designated == "x1");
    CHECK(a.polys[0] ==
          parse_poly("pi*(1 + x2^2 + x3^2)^2 - x2*x3 + x2*x4^2 + x2*x3*x1^2", a.ctx));

    // wrap on top of the pencil
    GeneratedFamily b = base_hypersurface(5, 5, 2, 2);
    CHECK(b.ctx->nvars() == 5);
    CHECK(*degrees(b.polys[0]).total == 5);
    CHECK(b.designated == "x1");

    // three-variable fallback
    GeneratedFamily c = base_hypersurface(4, 5, 2, 2);
    CHECK(c.ctx->nvars() == 4);
    CHECK(*degrees(c.polys[0]).total == 5);

    CHECK_THROWS_AS(base_hypersurface(3, 4, 2, 2), input_error);
}

TEST_CASE("complete intersection assembly cases") {
    // single polynomial, no wrap
    GeneratedFamily just_base = assemble_ci(2, 2, 4, 0, {4});
    CHECK(just_base.recipe.family == Family::CI_CASE_A);
    CHECK(just_base.polys.size() == 1);
    CHECK(just_base.multidegree == std::vector<std::int64_t>{4});
    CHECK(just_base.ctx->nvars() == 4);

    // single polynomial with a wrap
    GeneratedFamily wrapped = assemble_ci(2, 2, 4, 2, {6});
    CHECK(wrapped.recipe.family == Family::CI_CASE_A);
    CHECK(wrapped.ctx->nvars() == 6);
    CHECK(*degrees(wrapped.polys[0]).total == 6);

    // chain case: M == s-1
    GeneratedFamily chain = assemble_ci(2, 2, 4, 1, {4, 2});
    CHECK(chain.recipe.family == Family::CI_CASE_C);
    CHECK(chain.polys.size() == 2);
    CHECK(chain.ctx->nvars() == 5);
    CHECK(*degrees(chain.polys[1]).total == 2);

    // block case: M >= 2s-2
    GeneratedFamily block = assemble_ci(2, 2, 4, 4, {4, 4});
    CHECK(block.recipe.family == Family::CI_CASE_A);
    CHECK(block.ctx->nvars() == 8);
    CHECK(block.multidegree == std::vector<std::int64_t>{4, 4});

    // narrow case: s <= M <= 2s-3
    GeneratedFamily narrow = assemble_ci(2, 2, 4, 3, {4, 2, 2});
    CHECK(narrow.recipe.family == Family::CI_CASE_B);
    CHECK(narrow.ctx->nvars() == 7);
    CHECK(narrow.multidegree == std::vector<std::int64_t>{4, 2, 2});

    for (const GeneratedFamily* fam : {&just_base, &wrapped, &chain, &block, &narrow}) {
        std::vector<std::int64_t> got;
        for (const auto& p : fam->polys) got.push_back(*degrees(p).total);
        CHECK(got == fam->multidegree);
        if (fam->claims_coprime) CHECK(is_groebner(fam->polys, fam->order));
    }
    CHECK(block.claims_coprime);
    CHECK(narrow.claims_coprime);

    CHECK_THROWS_AS(assemble_ci(2, 2, 4, 5, {4}), input_error);
    CHECK_THROWS_AS(assemble_ci(2, 2, 4, 0, {3}), input_error);
    CHECK_THROWS_AS(assemble_ci(2, 2, 4, 1, {4, 1}), input_error);
}

TEST_CASE("low-index assembly reproduces the fixed pairs") {
    // degrees (3,2): the quartic threefold pair shape
    GeneratedFamily low32 = assemble_ci_low_index({3, 2}, 2);
    GeneratedFamily ci23 = fixed_example(Family::CI_23);
    REQUIRE(low32.polys.size() == 2);
    CHECK(embed(low32.polys[0], ci23.ctx) == ci23.polys[1]);
    CHECK(embed(low32.polys[1], ci23.ctx) == ci23.polys[0]);

    // degrees (3,3): eliminating x3 recovers the quartic
    GeneratedFamily low33 = assemble_ci_low_index({3, 3}, 2);
    REQUIRE(low33.polys.size() == 2);
    Polynomial cubic = low33.polys[0];
    Polynomial elim = low33.polys[1]; // x3 - x2*z3^2
    CHECK(elim == parse_poly("x3 - x2*z3^2", low33.ctx));
    Polynomial collapsed =
        substitute(cubic, {{"x3", parse_poly("x2*z3^2", low33.ctx)}});
    GeneratedFamily quartic = fixed_example(Family::HPT_QUARTIC);
    CHECK(collapsed == embed(quartic.polys[0], low33.ctx));

    // all quadrics, M == s: exactly the three-quadric chart
    GeneratedFamily q3 = assemble_ci_low_index({2, 2, 2}, 3);
    GeneratedFamily chart = fixed_example(Family::HPT_CHART);
    REQUIRE(q3.polys.size() == 3);
    CHECK(q3.ctx->nvars() == 7);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(degrees(q3.polys[i]).total == degrees(chart.polys[i]).total);

    // all cubics at the top extension count
    GeneratedFamily c3 = assemble_ci_low_index({3, 3, 3}, 6);
    CHECK(c3.polys.size() == 3);
    CHECK(c3.ctx->nvars() == 7 + 3);
    CHECK(c3.multidegree == std::vector<std::int64_t>{3, 3, 3});

    CHECK_THROWS_AS(assemble_ci_low_index({3, 2}, 1), input_error);
    CHECK_THROWS_AS(assemble_ci_low_index({3, 2}, 3), input_error);
    CHECK_THROWS_AS(assemble_ci_low_index({2, 1}, 2), input_error);
}

TEST_CASE("low-index families are groebner when claimed") {
    for (const auto& [degs, M] :
         std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>>{
             {{3, 2}, 2},
             {{3, 3}, 2},
             {{2, 2, 2}, 3},
             {{2, 2, 2, 2}, 4},
             {{2, 2, 2, 2}, 5},
             {{3, 3, 3}, 6},
             {{3, 2, 2}, 3},
             {{4, 3, 2}, 4},
         }) {
        GeneratedFamily fam = assemble_ci_low_index(degs, M);
        std::vector<std::int64_t> got;
        for (const auto& p : fam.polys) got.push_back(*degrees(p).total);
        std::vector<std::int64_t> want = degs;
        std::sort(want.rbegin(), want.rend());
        CHECK(got == want);
        if (fam.claims_coprime) CHECK(is_groebner(fam.polys, fam.order));
    }
}

TEST_CASE("product hypersurface blocks") {
    GeneratedFamily fam = assemble_product_hypersurface(2, 2, {4, 2}, {4, 3});
    CHECK(fam.polys.size() == 1);
    CHECK(fam.multidegree == std::vector<std::int64_t>{4, 3});
    CHECK(fam.designated == "y0_4");
    CHECK(fam.ctx->nvars() == 6);
    auto d = degrees(fam.polys[0]);
    REQUIRE(d.by_block.size() == 2);
    CHECK(*d.by_block[0] == 4);
    CHECK(*d.by_block[1] == 3);

    GeneratedFamily three = assemble_product_hypersurface(2, 2, {4, 1, 2}, {4, 2, 3});
    CHECK(degrees(three.polys[0]).by_block.size() == 3);

    CHECK_THROWS_AS(assemble_product_hypersurface(2, 2, {3, 2}, {4, 3}), input_error);
    CHECK_THROWS_AS(assemble_product_hypersurface(2, 2, {4, 2}, {4, 2}), input_error);
    CHECK_THROWS_AS(assemble_product_hypersurface(2, 2, {4}, {4, 3}), input_error);
}

TEST_CASE("fixed examples are well formed") {
    for (auto which : {Family::HPT_QUARTIC, Family::HPT_QUADRICS, Family::HPT_CHART,
                       Family::CI_23, Family::CI_33}) {
        GeneratedFamily fam = fixed_example(which);
        CHECK(fam.recipe.family == which);
        CHECK(!fam.polys.empty());
        CHECK(fam.claims_coprime);
        for (const auto& p : fam.polys)
            CHECK(parse_poly(format_poly(p, fam.order), fam.ctx) == p);
    }
    GeneratedFamily quartic = fixed_example(Family::HPT_QUARTIC);
    CHECK(quartic.designated == "z3");
    CHECK(quartic.obstruction == parse_poly("z1*z2", quartic.ctx));
    GeneratedFamily ci33 = fixed_example(Family::CI_33);
    CHECK(ci33.multidegree == std::vector<std::int64_t>{3, 3});
    CHECK(leading_monomial_poly(ci33.polys[0], ci33.order) ==
          parse_poly("x4*z3^2", ci33.ctx));
    CHECK_THROWS_AS(fixed_example(Family::G), input_error);
}

TEST_CASE("recipes reproduce their families") {
    std::vector<GeneratedFamily> fams;
    fams.push_back(build_f0(3, 2, 5));
    fams.push_back(apply_double_cone(build_f0(3, 2, 4), "x4"));
    fams.push_back(assemble_ci(2, 2, 4, 2, {4, 2}));
    fams.push_back(assemble_ci_low_index({3, 3}, 2));
    fams.push_back(assemble_product_hypersurface(2, 2, {4, 2}, {4, 3}));
    fams.push_back(fixed_example(Family::CI_23));
    for (const auto& fam : fams) {
        GeneratedFamily again = run_recipe(fam.recipe);
        REQUIRE(again.polys.size() == fam.polys.size());
        for (std::size_t i = 0; i < fam.polys.size(); ++i)
            CHECK(again.polys[i] == fam.polys[i]);
        CHECK(again.designated == fam.designated);
        CHECK(again.obstruction == fam.obstruction);
    }
}

TEST_CASE("pencil witnesses compute their residuals") {
    struct Case {
        std::int64_t n, m, N;
        std::string residual;
    };
    for (const auto& c : std::vector<Case>{
             {2, 2, 3, "pi + x1 + q"},
             {2, 3, 3, "pi + x1 + q"},
             {3, 2, 4, "4*pi + x1 + q"},
             {3, 3, 4, "8*pi + x1 + q"},
             {2, 2, 4, "pi + x1 + q"},
         }) {
        WitnessCheck w = witness_f0(c.n, c.m, c.N);
        WitnessResult res = check_star_witness(w);
        CHECK(res.ok);
        CHECK(res.residual == parse_poly(c.residual, w.ctx));
    }
}

TEST_CASE("quartic and pair witnesses") {
    WitnessCheck wq = witness_hpt_quartic();
    WitnessResult rq = check_star_witness(wq);
    CHECK(rq.ok);
    CHECK(rq.residual == parse_poly("x1 + q", wq.ctx));

    WitnessCheck wp = witness_ci23();
    WitnessResult rp = check_star_witness(wp);
    CHECK(rp.ok);
    CHECK(rp.residual == parse_poly("x3 - alpha^2 + q", wp.ctx));
}

TEST_CASE("witness validation rejects bad probes") {
    auto ctx = VarContext::make({{"x", 0}, {"y", 0}}, {{"q", std::nullopt}});
    WitnessCheck w;
    w.ctx = ctx;
    w.targets = {parse_poly("x - 1", ctx), parse_poly("y + q", ctx)};
    w.bindings = {{"x", Polynomial::constant(ctx, 1)}};
    w.expect_var = "y";
    CHECK(check_star_witness(w).ok);

    WitnessCheck quad = w;
    quad.targets[1] = parse_poly("y^2 + q", ctx);
    CHECK(!check_star_witness(quad).ok);

    WitnessCheck twice = w;
    twice.bindings.push_back({"x", Polynomial::constant(ctx, 2)});
    CHECK_THROWS_AS(check_star_witness(twice), input_error);

    WitnessCheck reappears = w;
    reappears.bindings = {{"x", parse_poly("y", ctx)},
                          {"y", parse_poly("x", ctx)}};
    CHECK_THROWS_AS(check_star_witness(reappears), input_error);

    WitnessCheck nothing = w;
    nothing.targets = {parse_poly("x - 1", ctx)};
    CHECK(!check_star_witness(nothing).ok);
}

TEST_CASE("fixed isomorphism chains verify") {
    auto hpt = verify_iso_chain(chain_hpt());
    CHECK(hpt.ok);
    REQUIRE(hpt.steps.size() == 2);
    for (const auto& s : hpt.steps) CHECK(s.ok);

    auto chart = verify_iso_chain(chain_chart());
    CHECK(chart.ok);
    for (const auto& s : chart.steps) CHECK(s.ok);
}
