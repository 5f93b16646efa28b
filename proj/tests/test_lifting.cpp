#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ulocal/densities.hpp"
#include "ulocal/lifting.hpp"

using namespace ulocal;

namespace {

Rational q(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

} // namespace

TEST_CASE("ramification indices") {
    CHECK(ramification_index(3, 0) == 1);
    CHECK(ramification_index(3, 1) == 4);
    CHECK(ramification_index(3, 3) == 36);
    CHECK(ramification_index(5, 2) == 30);
    CHECK_THROWS_AS(ramification_index(3, -1), DomainError);
}

TEST_CASE("coset valuations at r = 0") {
    // psi = Pi^b: alpha = 0, beta of valuation (b-1)/2
    for (int b : {1, 3, 5}) {
        QuatValuationDatum psi{std::nullopt, (b - 1) / 2};
        for (int s = 0; s <= 4; s += 2) CHECK(coset_valuation_l(psi, 0, s) == b);
    }
    // psi = Pi^a, a even: for odd s the beta part cancels, l = a
    for (int a : {0, 2, 4}) {
        QuatValuationDatum psi{a / 2, std::nullopt};
        for (int s = 1; s <= 5; s += 2) CHECK(coset_valuation_l(psi, 0, s) == a);
    }
    // units: l = 0 for s >= 1
    QuatValuationDatum unit{0, 0};
    for (int s = 1; s <= 5; ++s) CHECK(coset_valuation_l(unit, 0, s) == 0);
    // s = 0 cancels the full alpha component
    QuatValuationDatum mixed{1, 2};
    CHECK(coset_valuation_l(mixed, 0, 0) == 5);   // 2*2 + 1
    CHECK(coset_valuation_l(mixed, 0, 2) == 5);   // ord_alpha = 1 >= s/2, cancels
    CHECK(coset_valuation_l(mixed, 0, 4) == 2);   // alpha survives: v_D
    // an element of the coset has no bound
    QuatValuationDatum inside{1, std::nullopt};
    CHECK(!coset_valuation_l(inside, 0, 2).has_value());
}

TEST_CASE("coset valuations from full elements") {
    PrimeContext ctx(3, 10);
    // psi = p*delta + p^2 Pi: alpha has pure delta part
    QuatElement psi(OkElement(ctx, 0, 3), OkElement(ctx, 9, 0));
    // r = 0, s = 2: alpha = 3 delta has valuation 1 >= 1, cancels; l = 2*2+1
    CHECK(coset_valuation_l(psi, 0, 2) == 5);
    // r = 1, s = 3: coset is p(Z_p + p O); the delta part of alpha survives
    // at valuation 1 < 1 + 1
    CHECK(coset_valuation_l(psi, 1, 3) == 2);

    // psi2 = p + p^2 Pi: now alpha = p lies in p(Z_p + pO), so it cancels
    QuatElement psi2(OkElement(ctx, 3, 0), OkElement(ctx, 9, 0));
    CHECK(coset_valuation_l(psi2, 1, 3) == 5);

    // datum-level call refuses underdetermined r > 0 questions
    QuatValuationDatum d{1, 2};
    CHECK_THROWS_AS(coset_valuation_l(d, 1, 3), DomainError);
    // ... but answers when v(psi) < s - r
    QuatValuationDatum small{0, 3};
    CHECK(coset_valuation_l(small, 1, 4) == 0);
}

TEST_CASE("lifting bound at r = 0") {
    // s = 0 reduces to (l+1)/2
    for (int l = 1; l <= 9; l += 2) CHECK(lifting_bound_n0s(3, l, 0) == q(l + 1, 2));
    // l = 0: first branch gives 1 for any s >= 1
    for (int s = 1; s <= 5; ++s) CHECK(lifting_bound_n0s(3, 0, s) == 1);
    // l = b >= s branch: (p^2-1)/(p-1) + 2 e_2 = 4 + 24
    CHECK(lifting_bound_n0s(3, 5, 2) == Rational(4 + 2 * 12));
}

TEST_CASE("general lifting bounds") {
    // r = s, even l <= 2r
    CHECK(lifting_bound_nrs(3, 2, 2, 2) == 2 * q(9 - 1, 2) - 3);  // 2(p^2-1)/(p-1) - p
    // r = s, odd l <= 2r
    CHECK(lifting_bound_nrs(3, 3, 2, 2) == 2 * q(9 - 1, 2));
    // r = s, l >= 2r - 1: 2(p^2-1)/(p-1) + e_2 = 8 + 12
    CHECK(lifting_bound_nrs(3, 5, 2, 2) == 20);
    // unit case: l = 0, r = 1, s = 2 gives e_1
    CHECK(lifting_bound_nrs(3, 0, 1, 2) == 4);
    // r = 0 matches the direct formula
    for (int s = 0; s <= 4; ++s)
        for (int l = 0; l <= 8; ++l)
            CHECK(lifting_bound_nrs(3, l, 0, s) == lifting_bound_n0s(3, l, s));
}

TEST_CASE("one-step recursion across the whole grid") {
    for (long p : {3L, 5L, 7L})
        for (int r = 0; r <= 6; ++r)
            for (int s = r; s <= 6; ++s)
                for (int l = 0; l <= 12; ++l) {
                    Rational scale(ramification_index(p, s + 1), ramification_index(p, s));
                    scale.canonicalize();
                    CHECK(lifting_bound_nrs(p, l + 1, r, s + 1) ==
                          lifting_bound_nrs(p, l, r, s) * scale + 1);
                }
}

TEST_CASE("matrix entry valuations") {
    MuMatrixData mu = mu_matrix_l(3, 2, 1, 0);
    for (int i = 0; i < 4; ++i) {
        CHECK(mu.entries[i].ord_alpha == 1);
        CHECK(mu.entries[i].ord_beta == 0);
    }
    // s even <= a: the alpha part cancels, l = b
    CHECK(mu_matrix_l(3, 2, 1, 2).l_min == 1);
    CHECK(mu_matrix_l(3, 2, 5, 0).l_min == 5);
    CHECK(mu_matrix_l(3, 2, 5, 2).l_min == 5);
    // s odd <= b: the beta part cancels, l = a
    CHECK(mu_matrix_l(3, 2, 5, 1).l_min == 2);
    CHECK(mu_matrix_l(3, 4, 3, 3).l_min == 4);
    // s even > a and s odd > b fall back to v_D
    CHECK(mu_matrix_l(3, 2, 5, 4).l_min == 2);   // v_D = min(2, 5)
    CHECK(mu_matrix_l(3, 4, 1, 3).l_min == 1);   // v_D = min(4, 1)
    CHECK_THROWS_AS(mu_matrix_l(3, 1, 2, 0), DomainError);
}

TEST_CASE("stratum intersections") {
    // s = 0: (b+1)/2
    for (int b : {1, 3, 7}) CHECK(stratum_intersection(3, 0, b, 0) == q(b + 1, 2));
    CHECK(stratum_intersection(3, 2, 1, 0) == 1);
    // s = 1 <= b, a >= 1: 1 + a(p+1)/2
    CHECK(stratum_intersection(3, 2, 5, 1) == 1 + q(2 * 4, 2));
    CHECK(stratum_intersection(3, 4, 1, 1) == 1 + q(4 * 4, 2));
    // the "other < s" branch: a > b with s = 2 <= a and b = 1 < 2
    CHECK(stratum_intersection(3, 2, 1, 2) == q(9 - 1, 2));
    // range checks
    CHECK_THROWS_AS(stratum_intersection(3, 2, 1, 4), DomainError);
    CHECK_THROWS_AS(stratum_intersection(3, 2, 1, 3), DomainError);
}

TEST_CASE("distinct-level intersections") {
    CHECK(stratum_pair_intersection(3, 0, 5) == 1);
    CHECK(stratum_pair_intersection(3, 1, 2) == 4);
    CHECK(stratum_pair_intersection(3, 3, 7) == 36);
    CHECK_THROWS_AS(stratum_pair_intersection(3, 2, 2), DomainError);
}

TEST_CASE("total degree ledgers") {
    IntersectionLedger l01 = total_degree(3, 0, 1);
    CHECK(l01.total == 1);
    CHECK(l01.per_stratum.at(0) == 1);
    CHECK(l01.per_stratum.at(1) == 1);
    IntersectionLedger l12 = total_degree(3, 1, 2);
    CHECK(l12.total == 5);
    IntersectionLedger l23 = total_degree(3, 2, 3);
    CHECK(l23.total == 18);
    // symmetric in the argument order
    CHECK(total_degree(3, 2, 1).total == 5);
    CHECK_THROWS_AS(total_degree(3, 1, 3), DomainError);
}

TEST_CASE("grand identity on a sample of pairs") {
    for (long p : {3L, 5L, 7L})
        for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {0, 5}, {4, 7}})
            for (int n = 2; n <= 4; ++n)
                CHECK(total_degree(p, a, b).total == derivative_ratio(p, n, a, b));
}

TEST_CASE("extrapolated levels are flagged and still cross-checked") {
    // even exponent above the odd one: the even level s = 2 exceeds b
    IntersectionLedger led = total_degree(3, 2, 1);
    CHECK(led.extrapolated_branch);
    CHECK(led.total == 5);
    // sorted pairs never hit that branch
    CHECK(!total_degree(3, 0, 1).extrapolated_branch);
    CHECK(!total_degree(3, 2, 3).extrapolated_branch);
}

TEST_CASE("special fiber sums") {
    CHECK(special_fiber_sums(3, 0, false) == 1);
    CHECK(special_fiber_sums(3, 2, false) == 13);
    CHECK(special_fiber_sums(3, 1, true) == 4);
    CHECK(special_fiber_sums(3, 8, false) == 9841);  // (3^9 - 1)/2
    CHECK_THROWS_AS(special_fiber_sums(3, 2, true), DomainError);
}

TEST_CASE("conductor fiber sums") {
    CHECK(gl2_correction_sums(3, 0, false) == 1);
    CHECK(gl2_correction_sums(3, 1, false) == 5);
    CHECK(gl2_correction_sums(3, 1, true) == 8);
    CHECK(gl2_correction_sums(5, 2, false) == 2 * 6 + 25);
}
