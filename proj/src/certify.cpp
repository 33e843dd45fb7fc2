#include "tcert/certify.hpp"
#include "tcert/construct.hpp"

#include <algorithm>

namespace tcert {

namespace {

const std::pair<Theorem, const char*> kTheoremNames[] = {
    {Theorem::CI_MAIN, "CI_MAIN"},
    {Theorem::CI_LOG, "CI_LOG"},
    {Theorem::CI_2TORSION_CLOSED, "CI_2TORSION_CLOSED"},
    {Theorem::CI_LOW_INDEX, "CI_LOW_INDEX"},
    {Theorem::PRODUCT, "PRODUCT"},
    {Theorem::PRODUCT_INTRO, "PRODUCT_INTRO"},
    {Theorem::GRASS, "GRASS"},
    {Theorem::GRASS_INTRO, "GRASS_INTRO"},
    {Theorem::NONE, "NONE"},
};

constexpr const char* kVeryGeneral =
    "the verdict concerns a very general member of the family; special members can "
    "have smaller torsion orders";
constexpr const char* kTrivialM1 = "m = 1: divisibility by 1 holds for every cycle class";
constexpr const char* kCharDividesM =
    "the degeneration argument needs the characteristic to be coprime to m";

BigInt budget_big(std::int64_t n, std::int64_t m) {
    BigInt total = 0;
    BigInt c = 1;
    for (std::int64_t l = 0; l < n; ++l) {
        if (l > 0) c = c * (n - l + 1) / l;
        total += c * (l / m);
    }
    return total;
}

BigInt pow2_big(std::int64_t n) { return BigInt(1) << static_cast<unsigned>(n); }

void validate_common(std::int64_t m, std::int64_t char_p) {
    if (m < 1) throw input_error("m must be at least 1");
    if (char_p < 0 || char_p == 1) throw input_error("characteristic must be 0 or at least 2");
}

bool char_divides(std::int64_t char_p, std::int64_t m) {
    return char_p > 0 && m % char_p == 0;
}

// Smallest n in [2, d_max - m] with r <= bound_B(n, m); past n = 63 the bound
// exceeds any representable index, so the scan is clamped.
std::optional<std::int64_t> smallest_main_witness(std::int64_t r, std::int64_t m,
                                                  std::int64_t d_max) {
    std::int64_t hi = std::min<std::int64_t>(d_max - m, 63);
    for (std::int64_t n = 2; n <= hi; ++n)
        if (BigInt(r) <= bound_B(n, m)) return n;
    if (d_max - m > 63) return 63; // bound_B(63, m) >= 2^63 - m
    return std::nullopt;
}

void attach_ci_extras(Certificate& cert, std::int64_t r, std::int64_t m,
                      const std::vector<std::int64_t>& degrees) {
    if (r >= 1) {
        for (auto d : degrees) {
            if (d - m >= 1 && d - m <= 62 && pow2_big(d - m) >= BigInt(r) + m) {
                cert.caveats.push_back(
                    "CI_LOG: the logarithmic refinement also applies, since 2^(d-m) >= r+m "
                    "at degree " +
                    std::to_string(d));
                break;
            }
        }
    }
    if (m == 2) {
        for (auto d : degrees) {
            if (d >= 4 && BigInt(r) <= closed_form_2bound(d)) {
                cert.caveats.push_back(
                    "closed form: for m = 2 the bound (d+1)*2^(d-4) - floor((d+2)/2) already "
                    "covers this index at degree " +
                    std::to_string(d));
                break;
            }
        }
    }
    if (r > 0) cert.upper_bound = rojtman_upper_bound(degrees);
}

} // namespace

std::string theorem_name(Theorem t) {
    for (const auto& [k, n] : kTheoremNames)
        if (k == t) return n;
    throw std::logic_error("unknown theorem");
}

Theorem theorem_from_name(const std::string& name) {
    for (const auto& [k, n] : kTheoremNames)
        if (name == n) return k;
    throw input_error("unknown theorem name: '" + name + "'");
}

std::int64_t fano_index_ci(std::int64_t dim, const std::vector<std::int64_t>& degrees) {
    std::int64_t sum = 0;
    for (auto d : degrees) sum = checked_add(sum, d);
    return checked_add(dim, static_cast<std::int64_t>(degrees.size()) + 1) - sum;
}

BigInt bound_B(std::int64_t n, std::int64_t m) {
    if (n < 2 || n > 62 || m < 1) throw input_error("bound_B requires 2 <= n <= 62, m >= 1");
    return pow2_big(n) + budget_big(n, m) - m;
}

BigInt closed_form_2bound(std::int64_t d) {
    if (d < 4 || d > 64) throw input_error("closed form requires 4 <= d <= 64");
    return (BigInt(d) + 1) * pow2_big(d - 4) - (d + 2) / 2;
}

BigInt rojtman_upper_bound(const std::vector<std::int64_t>& degrees) {
    BigInt prod = 1;
    for (auto d : degrees)
        for (std::int64_t k = 2; k <= d; ++k) prod *= k;
    return prod;
}

Certificate certify_ci(const CIQuery& q) {
    validate_common(q.m, q.char_p);
    if (q.dim < 1) throw input_error("dimension must be at least 1");
    if (q.degrees.empty()) throw input_error("at least one degree is required");
    for (auto d : q.degrees)
        if (d < 1) throw input_error("degrees must be at least 1");

    Certificate cert;
    cert.fano_index = fano_index_ci(q.dim, q.degrees);
    std::int64_t r = cert.fano_index;

    if (q.m == 1) {
        cert.certified = true;
        cert.theorem = Theorem::CI_MAIN;
        cert.caveats = {kVeryGeneral, kTrivialM1};
        if (r > 0) cert.upper_bound = rojtman_upper_bound(q.degrees);
        return cert;
    }
    if (char_divides(q.char_p, q.m)) {
        cert.theorem = Theorem::NONE;
        cert.caveats = {kCharDividesM};
        return cert;
    }

    bool quartic_threefold = q.dim == 3 && q.m == 2 && q.degrees.size() == 1 &&
                             q.degrees[0] == 4 && q.char_p != 2;
    if (quartic_threefold) {
        cert.certified = true;
        cert.theorem = Theorem::CI_2TORSION_CLOSED;
        cert.caveats = {kVeryGeneral,
                        "this route goes through the Colliot-Thelene and Pirutka quartic "
                        "threefold and needs an algebraically closed ground field"};
        attach_ci_extras(cert, r, q.m, q.degrees);
        return cert;
    }

    bool all_ge2 = std::all_of(q.degrees.begin(), q.degrees.end(),
                               [](std::int64_t d) { return d >= 2; });
    if (q.m == 2 && q.char_p != 2 && all_ge2 && q.dim >= 4 && r <= 2) {
        cert.certified = true;
        cert.theorem = Theorem::CI_LOW_INDEX;
        cert.caveats = {kVeryGeneral};
        attach_ci_extras(cert, r, q.m, q.degrees);
        return cert;
    }

    std::int64_t d_max = *std::max_element(q.degrees.begin(), q.degrees.end());
    auto n = smallest_main_witness(r, q.m, d_max);
    if (n) {
        cert.certified = true;
        cert.theorem = Theorem::CI_MAIN;
        cert.witness_n = *n;
        cert.caveats = {kVeryGeneral};
        attach_ci_extras(cert, r, q.m, q.degrees);
        return cert;
    }

    cert.theorem = Theorem::NONE;
    cert.caveats = {"no auxiliary parameter n in [2, max(d)-m] certifies index " +
                    std::to_string(r) + " for m = " + std::to_string(q.m)};
    return cert;
}

Certificate certify_product(const ProductQuery& q) {
    validate_common(q.m, q.char_p);
    if (q.Ms.size() != q.ds.size()) throw input_error("block sizes and degrees must match");
    if (q.Ms.size() < 2) throw input_error("a product query needs at least two factors");
    for (auto M : q.Ms)
        if (M < 1) throw input_error("factor dimensions must be at least 1");
    for (auto d : q.ds)
        if (d < 1) throw input_error("degrees must be at least 1");

    Certificate cert;
    if (q.m == 1) {
        cert.certified = true;
        cert.theorem = Theorem::PRODUCT;
        cert.caveats = {kVeryGeneral, kTrivialM1};
        return cert;
    }
    if (char_divides(q.char_p, q.m)) {
        cert.theorem = Theorem::NONE;
        cert.caveats = {kCharDividesM};
        return cert;
    }

    std::int64_t M0 = q.Ms[0], d0 = q.ds[0];
    bool tails_ok = true;
    for (std::size_t i = 1; i < q.Ms.size(); ++i)
        if (q.ds[i] < q.Ms[i] + 1) tails_ok = false;

    std::optional<std::int64_t> witness;
    if (tails_ok && M0 >= 4) {
        std::int64_t hi = std::min<std::int64_t>(d0 - q.m, 30);
        for (std::int64_t n = 2; n <= hi; ++n) {
            BigInt cap = BigInt(n) + pow2_big(n) - 1 + budget_big(n, q.m);
            if (BigInt(M0) <= cap) {
                witness = n;
                break;
            }
        }
    }
    if (witness) {
        cert.certified = true;
        cert.theorem = Theorem::PRODUCT;
        cert.witness_n = *witness;
        cert.caveats = {kVeryGeneral};
        if (d0 - q.m >= 1 && d0 - q.m <= 62 && pow2_big(d0 - q.m) >= BigInt(M0))
            cert.caveats.push_back(
                "PRODUCT_INTRO: the simpler hypothesis 2^(d0-m) >= dim of the first factor "
                "also suffices here");
        return cert;
    }
    cert.theorem = Theorem::NONE;
    cert.caveats = {"no auxiliary parameter n in [2, d0-m] fits the first factor dimension " +
                    std::to_string(M0) + " with the remaining degree conditions"};
    return cert;
}

Certificate certify_grassmannian(const GrassQuery& q) {
    validate_common(q.m, q.char_p);
    if (q.l < 1 || q.l >= q.n)
        throw input_error("the Grassmannian needs 1 <= l < n");
    if (q.d < 1) throw input_error("the degree must be at least 1");

    Certificate cert;
    if (q.m == 1) {
        cert.certified = true;
        cert.theorem = Theorem::GRASS;
        cert.caveats = {kVeryGeneral, kTrivialM1};
        return cert;
    }
    if (q.char_p != 0) {
        cert.theorem = Theorem::NONE;
        cert.caveats = {"the Grassmannian route is only certified in characteristic zero"};
        return cert;
    }

    std::int64_t dim = checked_mul(q.l, q.n - q.l);
    std::optional<std::int64_t> witness;
    if (dim >= 4) {
        std::int64_t hi = std::min<std::int64_t>(q.d - q.m, 30);
        for (std::int64_t n = 2; n <= hi; ++n) {
            BigInt cap = pow2_big(n) - 1 + budget_big(n, q.m) + q.d - q.m;
            if (BigInt(dim) <= cap) {
                witness = n;
                break;
            }
        }
    }
    if (witness) {
        cert.certified = true;
        cert.theorem = Theorem::GRASS;
        cert.witness_n = *witness;
        cert.caveats = {kVeryGeneral};
        if (q.m == 2 && q.d >= 4 && q.d <= 64 &&
            BigInt(dim) <= (BigInt(q.d) + 1) * pow2_big(q.d - 4))
            cert.caveats.push_back(
                "GRASS_INTRO: for m = 2 the plain dimension bound (d+1)*2^(d-4) already "
                "covers this Grassmannian");
        return cert;
    }
    cert.theorem = Theorem::NONE;
    cert.caveats = {"no auxiliary parameter n in [2, d-m] fits the Grassmannian dimension " +
                    std::to_string(dim)};
    return cert;
}

IdentityReport identity_suite(std::int64_t n_max, std::int64_t m_max) {
    IdentityReport rep;
    auto check = [&](bool ok, const std::string& what) {
        ++rep.checks;
        if (!ok) {
            rep.ok = false;
            rep.failures.push_back(what);
        }
    };

    for (std::int64_t d = 4; d <= 20; ++d)
        check(closed_form_2bound(d) == bound_B(d - 2, 2),
              "closed form vs bound_B at d = " + std::to_string(d));

    for (std::int64_t n = 2; n <= 20; ++n) {
        BigInt lhs = budget_big(n, 2);
        BigInt rhs = (BigInt(n) - 1) * pow2_big(n - 2) - n / 2;
        check(lhs == rhs, "binomial sum identity at n = " + std::to_string(n));
    }

    for (std::int64_t n = 2; n <= std::min<std::int64_t>(n_max, 12); ++n)
        for (std::int64_t m = 1; m <= m_max; ++m) {
            bool ok = double_cone_budget(n, m) == double_cone_budget_binom(n, m) &&
                      BigInt(double_cone_budget(n, m)) == budget_big(n, m);
            check(ok, "budget formulas at n = " + std::to_string(n) +
                          ", m = " + std::to_string(m));
        }

    // The logarithmic route implies the main one: 2^n >= r+m gives
    // r <= bound_B(n, m).
    for (std::int64_t n = 2; n <= std::min<std::int64_t>(n_max, 20); ++n)
        for (std::int64_t m = 1; m <= m_max; ++m) {
            BigInt r = pow2_big(n) - m;
            check(r <= bound_B(n, m), "log route implies the main bound at n = " +
                                          std::to_string(n) + ", m = " + std::to_string(m));
        }

    // The introduction bound for Grassmannians implies the general one with
    // n = d-2.
    for (std::int64_t d = 4; d <= 20; ++d) {
        BigInt intro = (BigInt(d) + 1) * pow2_big(d - 4);
        BigInt general = pow2_big(d - 2) - 1 + budget_big(d - 2, 2) + d - 2;
        check(intro <= general,
              "introduction bound vs general bound at d = " + std::to_string(d));
    }
    return rep;
}

} // namespace tcert
