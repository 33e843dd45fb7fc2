#include "tcert/certify.hpp"

#include <doctest.h>

using namespace tcert;

namespace {

bool has_caveat(const Certificate& cert, const std::string& needle) {
    for (const auto& c : cert.caveats)
        if (c.find(needle) != std::string::npos) return true;
    return false;
}

} // namespace

TEST_CASE("fano index") {
    CHECK(fano_index_ci(3, {4}) == 1);
    CHECK(fano_index_ci(4, {4}) == 2);
    CHECK(fano_index_ci(5, {4}) == 3);
    CHECK(fano_index_ci(4, {2, 3}) == 2);
    CHECK(fano_index_ci(3, {5}) == 0);
    CHECK(fano_index_ci(3, {6}) == -1);
}

TEST_CASE("index bound pinned values") {
    CHECK(bound_B(2, 2) == 2);
    CHECK(bound_B(3, 2) == 9);
    CHECK(bound_B(4, 2) == 24);
    CHECK(bound_B(5, 2) == 60);
    CHECK(bound_B(2, 3) == 1);
    CHECK(bound_B(3, 3) == 5);
    CHECK_THROWS_AS(bound_B(1, 2), input_error);
    CHECK_THROWS_AS(bound_B(63, 2), input_error);
    CHECK_THROWS_AS(bound_B(2, 0), input_error);
}

TEST_CASE("closed form matches the bound") {
    CHECK(closed_form_2bound(4) == 2);
    CHECK(closed_form_2bound(5) == 9);
    CHECK(closed_form_2bound(6) == 24);
    CHECK(closed_form_2bound(7) == 60);
    CHECK(closed_form_2bound(8) == 139);
    CHECK(closed_form_2bound(10) == 698);
    for (std::int64_t d = 4; d <= 40; ++d)
        CHECK(closed_form_2bound(d) == bound_B(d - 2, 2));
    CHECK_THROWS_AS(closed_form_2bound(3), input_error);
}

TEST_CASE("torsion order upper bound") {
    CHECK(rojtman_upper_bound({4}) == 24);
    CHECK(rojtman_upper_bound({2, 3}) == 12);
    CHECK(rojtman_upper_bound({2, 2, 2}) == 8);
    CHECK(rojtman_upper_bound({}) == 1);
}

TEST_CASE("quartic threefold certificate") {
    Certificate cert = certify_ci({3, {4}, 2, 0});
    CHECK(cert.certified);
    CHECK(cert.theorem == Theorem::CI_2TORSION_CLOSED);
    CHECK(cert.fano_index == 1);
    REQUIRE(cert.upper_bound.has_value());
    CHECK(*cert.upper_bound == 24);
    CHECK(has_caveat(cert, "Colliot-Thelene"));
    CHECK(has_caveat(cert, "algebraically closed"));
    CHECK(has_caveat(cert, "very general"));
    CHECK(has_caveat(cert, "CI_LOG"));
    CHECK(has_caveat(cert, "closed form"));

    // the closed-field route survives any characteristic other than 2
    Certificate odd = certify_ci({3, {4}, 2, 3});
    CHECK(odd.certified);
    CHECK(odd.theorem == Theorem::CI_2TORSION_CLOSED);
}

TEST_CASE("low index certificate") {
    Certificate cert = certify_ci({4, {4}, 2, 0});
    CHECK(cert.certified);
    CHECK(cert.theorem == Theorem::CI_LOW_INDEX);
    CHECK(cert.fano_index == 2);

    Certificate pair = certify_ci({4, {2, 3}, 2, 0});
    CHECK(pair.certified);
    CHECK(pair.theorem == Theorem::CI_LOW_INDEX);
    REQUIRE(pair.upper_bound.has_value());
    CHECK(*pair.upper_bound == 12);

    // index 3 no longer fits any route at degree 4
    Certificate none = certify_ci({5, {4}, 2, 0});
    CHECK(!none.certified);
    CHECK(none.theorem == Theorem::NONE);
    CHECK(!none.upper_bound.has_value());
}

TEST_CASE("main route picks the smallest witness") {
    Certificate cert = certify_ci({28, {6}, 2, 0});
    CHECK(cert.certified);
    CHECK(cert.theorem == Theorem::CI_MAIN);
    CHECK(cert.fano_index == 24);
    REQUIRE(cert.witness_n.has_value());
    CHECK(*cert.witness_n == 4);

    Certificate none = certify_ci({29, {6}, 2, 0});
    CHECK(!none.certified);
    CHECK(none.theorem == Theorem::NONE);

    Certificate small = certify_ci({13, {6}, 2, 0});
    CHECK(small.certified);
    CHECK(*small.witness_n == 3); // index 9 == bound at n = 3
    CHECK(has_caveat(small, "CI_LOG"));

    Certificate m3 = certify_ci({9, {6}, 3, 0});
    CHECK(m3.certified);
    CHECK(*m3.witness_n == 3);
    Certificate m3none = certify_ci({10, {6}, 3, 0});
    CHECK(!m3none.certified);
}

TEST_CASE("trivial and excluded characteristics") {
    Certificate one = certify_ci({3, {4}, 1, 0});
    CHECK(one.certified);
    CHECK(one.theorem == Theorem::CI_MAIN);
    CHECK(has_caveat(one, "m = 1"));
    CHECK(!one.witness_n.has_value());

    Certificate bad = certify_ci({3, {4}, 2, 2});
    CHECK(!bad.certified);
    CHECK(bad.theorem == Theorem::NONE);
    CHECK(has_caveat(bad, "characteristic"));

    CHECK_THROWS_AS(certify_ci({0, {4}, 2, 0}), input_error);
    CHECK_THROWS_AS(certify_ci({3, {}, 2, 0}), input_error);
    CHECK_THROWS_AS(certify_ci({3, {4}, 0, 0}), input_error);
    CHECK_THROWS_AS(certify_ci({3, {4}, 2, 1}), input_error);
}

TEST_CASE("product certificates") {
    Certificate cert = certify_product({{4, 2}, {4, 3}, 2, 0});
    CHECK(cert.certified);
    CHECK(cert.theorem == Theorem::PRODUCT);
    REQUIRE(cert.witness_n.has_value());
    CHECK(*cert.witness_n == 2);
    CHECK(cert.fano_index == 0);
    CHECK(!cert.upper_bound.has_value());
    CHECK(has_caveat(cert, "PRODUCT_INTRO"));

    Certificate small = certify_product({{3, 2}, {4, 3}, 2, 0});
    CHECK(!small.certified);

    Certificate tail = certify_product({{4, 2}, {4, 2}, 2, 0});
    CHECK(!tail.certified);

    Certificate one = certify_product({{4, 2}, {4, 3}, 1, 0});
    CHECK(one.certified);
    CHECK(has_caveat(one, "m = 1"));

    CHECK_THROWS_AS(certify_product({{4}, {4}, 2, 0}), input_error);
    CHECK_THROWS_AS(certify_product({{4, 2}, {4}, 2, 0}), input_error);
}

TEST_CASE("grassmannian certificates") {
    Certificate cert = certify_grassmannian({2, 4, 4, 2, 0});
    CHECK(cert.certified);
    CHECK(cert.theorem == Theorem::GRASS);
    REQUIRE(cert.witness_n.has_value());
    CHECK(*cert.witness_n == 2);
    CHECK(has_caveat(cert, "GRASS_INTRO"));

    Certificate big = certify_grassmannian({2, 5, 4, 2, 0});
    CHECK(!big.certified);

    Certificate charp = certify_grassmannian({2, 4, 4, 2, 3});
    CHECK(!charp.certified);
    CHECK(has_caveat(charp, "characteristic zero"));

    Certificate one = certify_grassmannian({2, 4, 4, 1, 0});
    CHECK(one.certified);

    CHECK_THROWS_AS(certify_grassmannian({0, 4, 4, 2, 0}), input_error);
    CHECK_THROWS_AS(certify_grassmannian({4, 4, 4, 2, 0}), input_error);
}

TEST_CASE("identity suite holds") {
    IdentityReport rep = identity_suite();
    CHECK(rep.ok);
    CHECK(rep.checks > 0);
    CHECK(rep.failures.empty());
}
