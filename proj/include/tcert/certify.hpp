#pragma once
#include "tcert/context.hpp"
#include "tcert/errors.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tcert {

enum class Theorem {
    CI_MAIN,
    CI_LOG,
    CI_2TORSION_CLOSED,
    CI_LOW_INDEX,
    PRODUCT,
    PRODUCT_INTRO,
    GRASS,
    GRASS_INTRO,
    NONE,
};

std::string theorem_name(Theorem t);
Theorem theorem_from_name(const std::string& name);

// Verdict on m-divisibility of torsion orders for a very general member of
// the queried family. `witness_n` is the auxiliary parameter that makes the
// bound work, when one is needed; `upper_bound` is the product-of-factorials
// bound on the torsion order itself, when it applies.
struct Certificate {
    bool certified = false;
    Theorem theorem = Theorem::NONE;
    std::optional<std::int64_t> witness_n;
    std::int64_t fano_index = 0;
    std::optional<BigInt> upper_bound;
    std::vector<std::string> caveats;
};

// Complete intersection of the given degrees and dimension. char_p = 0 means
// characteristic zero.
struct CIQuery {
    std::int64_t dim = 0;
    std::vector<std::int64_t> degrees;
    std::int64_t m = 2;
    std::int64_t char_p = 0;
};

// Hypersurface of multidegree ds in a product of projective spaces of
// dimensions Ms.
struct ProductQuery {
    std::vector<std::int64_t> Ms;
    std::vector<std::int64_t> ds;
    std::int64_t m = 2;
    std::int64_t char_p = 0;
};

// Hypersurface of degree d in the Grassmannian of l-planes in n-space.
struct GrassQuery {
    std::int64_t l = 1;
    std::int64_t n = 2;
    std::int64_t d = 2;
    std::int64_t m = 2;
    std::int64_t char_p = 0;
};

// dim + s + 1 - sum of degrees.
std::int64_t fano_index_ci(std::int64_t dim, const std::vector<std::int64_t>& degrees);

// 2^n + sum_{j<n} C(n,j)*floor(j/m) - m: the largest certifiable index at
// auxiliary parameter n.
BigInt bound_B(std::int64_t n, std::int64_t m);

// (d+1)*2^(d-4) - floor((d+2)/2) for d >= 4; equals bound_B(d-2, 2).
BigInt closed_form_2bound(std::int64_t d);

// Product of factorials of the degrees.
BigInt rojtman_upper_bound(const std::vector<std::int64_t>& degrees);

Certificate certify_ci(const CIQuery& q);
Certificate certify_product(const ProductQuery& q);
Certificate certify_grassmannian(const GrassQuery& q);

struct IdentityReport {
    bool ok = true;
    std::int64_t checks = 0;
    std::vector<std::string> failures;
};

// Cross-checks between the closed forms, the budget formulas, and the
// implications between certification routes.
IdentityReport identity_suite(std::int64_t n_max = 12, std::int64_t m_max = 6);

} // namespace tcert
