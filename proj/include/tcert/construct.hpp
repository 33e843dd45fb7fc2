#pragma once
#include "tcert/groebner.hpp"
#include "tcert/order.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tcert {

enum class Family {
    G,
    F0,
    BASE_N3,
    DOUBLE_CONE,
    STEP1,
    STEP2,
    STEP2_ALT_M2,
    CHECK_F,
    CI_CASE_A,
    CI_CASE_B,
    CI_CASE_C,
    CI_LOW_INDEX_A,
    CI_LOW_INDEX_B,
    CI_LOW_INDEX_C,
    PRODUCT_HYP,
    HPT_QUARTIC,
    HPT_QUADRICS,
    HPT_CHART,
    CI_23,
    CI_33,
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// Reproducible description of a generated family: which builder, its integer
// parameters, and any free polynomial choices as expression text.
struct Recipe {
    Family family = Family::F0;
    std::map<std::string, std::int64_t> iparams;
    std::map<std::string, std::vector<std::int64_t>> vparams;
    std::optional<std::string> choice_g;
    std::optional<std::string> choice_h;
};

struct GeneratedFamily {
    CtxPtr ctx;
    std::vector<Polynomial> polys;
    MonomialOrder order;
    std::string designated;  // distinguished variable, empty when not applicable
    Polynomial obstruction;  // multiplier l: the excluded locus is l times the
                             // designated-variable derivative of the family
    bool claims_coprime = false;
    std::vector<std::int64_t> multidegree;
    Recipe recipe;
};

std::int64_t ceil_div(std::int64_t a, std::int64_t b);

// pi * (1 + sum_i x_i^ceil((n+1)/m))^m - (-1)^n * x_1...x_n over x1..xn
// with the transcendental parameter pi.
Polynomial build_g(std::int64_t n, std::int64_t m);

// The pencil member over N affine variables plus the distinguished z: g plus
// one monomial-coefficient power per extra variable plus the signed
// x_1...x_n z^m term. Total degree n+m.
GeneratedFamily build_f0(std::int64_t n, std::int64_t m, std::int64_t N);

// Degree-d base over three variables and z, d >= m+2, with two
// transcendental scaling parameters.
GeneratedFamily build_base_n3(std::int64_t d, std::int64_t m);

// Number of admissible cone applications over the full extra-variable range.
std::int64_t double_cone_budget(std::int64_t n, std::int64_t m);
std::int64_t double_cone_budget_binom(std::int64_t n, std::int64_t m);
// Admissible applications at the j-th extra variable, 1 <= j <= 2^n-2.
std::int64_t double_cone_applications_at(std::int64_t n, std::int64_t m, std::int64_t j);

// One double-cone application at variable j0. The input polynomial must have
// the split shape b*z^m + sum_i a_i*x_{j0}^i with b, a_i free of z and x_{j0},
// deg b = d-m, deg a_i <= d-2i, and 2m <= d. Adds one variable and two
// parameters; the output has the same shape and degree.
GeneratedFamily apply_double_cone(const GeneratedFamily& fam, const std::string& j0);

// build_f0(n, m, n+2^n-2), then apply the cone at every extra variable as
// often as admissible; checks the total application count against the budget.
GeneratedFamily double_cone_full_iteration(std::int64_t n, std::int64_t m);

// A pencil pair under iterated linear extensions. `second` is the companion
// polynomial; after k extensions it has degree k.
struct HyperPair {
    CtxPtr ctx;
    Polynomial f;      // base plus the linear extension variables
    Polynomial second;
    std::vector<std::string> w_names; // extension variables, in order
    std::vector<std::string> t_names; // parameters introduced along the way
    std::int64_t M = 0;
};

HyperPair step1_pair(const Polynomial& f, int block = 0);
HyperPair step1_pair(const HyperPair& prior, int block = 0);

// Degree-raising deformation of the companion: requires d > M >= 2 and the
// canonical companion shape; adds the term t*w_M*(w_{M-1} - [M==2])*h with
// h of degree d-2 in the earlier extension variables.
HyperPair step2_deform(const HyperPair& pair, std::int64_t d,
                       const std::optional<std::string>& h_text = std::nullopt);

// Two-variable alternative valid for every d >= 2: companion becomes
// t2 - w1*w2 + t*w1^d. Requires M == 2.
HyperPair step2_alt_m2(const HyperPair& pair, std::int64_t d);

struct CheckFOptions {
    std::optional<std::string> g_text;
    std::optional<std::string> h_text;
    std::optional<std::vector<std::string>> w_names; // exactly M names when given
    int block = -1;                                  // -1: open a new block
};

struct CheckFResult {
    CtxPtr ctx;
    Polynomial poly;
    std::vector<std::string> w_names;
    std::string t2, t1, t;
};

// t2 + (f + w_1 + ... + w_M)*(t1 - w_M*g - t*(w_M - [M==1])*h) with
// g of degree M-1 in w_1..w_{M-1} (1 when M == 1) and h of degree d-1 in
// w_1..w_M (1 when d == 1). Requires d >= M >= 1; the result has total
// degree deg f + d and degree d+1 in the new variables.
CheckFResult build_check_f(const Polynomial& f, std::int64_t d, std::int64_t M,
                           const CheckFOptions& opt = {});

// Degree-d base hypersurface over N_total variables x1..x_{N_total} with the
// designated variable renamed to x1. Chooses between the pencil member (with
// cone applications filling up the variable count), the same plus a one-
// variable wrap, or the three-variable base.
GeneratedFamily base_hypersurface(std::int64_t N_total, std::int64_t d, std::int64_t n,
                                  std::int64_t m);

// Complete intersection family over x1..xN, y1..yM with the given degrees
// (s entries, d1 >= n+m, each >= 2) and s-1 <= M <= sum(d)-n-m.
GeneratedFamily assemble_ci(std::int64_t n, std::int64_t m, std::int64_t N, std::int64_t M,
                            const std::vector<std::int64_t>& degrees);

// Low-index variant for m = 2: degrees each >= 2 (sorted descending
// internally), s <= M <= sum(d)-3.
GeneratedFamily assemble_ci_low_index(const std::vector<std::int64_t>& degrees,
                                      std::int64_t M);

// Multigraded hypersurface over s+1 variable blocks: base over block 0, then
// one wrap per extra block i with M_i variables and block degree d_i.
GeneratedFamily assemble_product_hypersurface(std::int64_t n, std::int64_t m,
                                              const std::vector<std::int64_t>& Ms,
                                              const std::vector<std::int64_t>& ds);

GeneratedFamily fixed_example(Family which);

GeneratedFamily run_recipe(const Recipe& r);

// A rational-point probe: apply the bindings in order (each bound variable
// must not reappear in a later binding's value), then require every target
// except one to vanish; the surviving residual must be linear in expect_var
// with the degree-one part a single parameter-coefficient term.
struct WitnessCheck {
    CtxPtr ctx;
    std::vector<Polynomial> targets;
    std::vector<std::pair<std::string, Polynomial>> bindings;
    std::string expect_var;
    std::vector<std::string> notes;
};

struct WitnessResult {
    bool ok = false;
    Polynomial residual;
    std::vector<std::string> log;
};

WitnessResult check_star_witness(const WitnessCheck& check);

WitnessCheck witness_f0(std::int64_t n, std::int64_t m, std::int64_t N);
WitnessCheck witness_hpt_quartic();
WitnessCheck witness_ci23();

std::vector<IsoStep> chain_hpt();
std::vector<IsoStep> chain_chart();

} // namespace tcert
