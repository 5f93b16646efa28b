#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ulocal/densities.hpp"

using namespace ulocal;

namespace {

Rational q(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

} // namespace

TEST_CASE("ell") {
    PrimeContext ctx(3, 10);
    CHECK(ell(HermMatrix::identity(ctx, 3)) == 0);
    CHECK(ell(HermMatrix::diagonal_powers(ctx, {1, 2})) == 2);
    CHECK(ell(HermMatrix::diagonal_powers(ctx, {0, 1, 3})) == 3);
}

TEST_CASE("unit norm count at p = 3") {
    PrimeContext ctx(3, 4);
    HermMatrix S = HermMatrix::identity(ctx, 1);
    DensityRequest req{S, S, 1};
    CHECK(brute_count(req) == 4);  // p + 1 unit-norm classes
    CHECK(density_bruteforce(req) == q(4, 3));
    // stable across k
    DensityOptions opt;
    opt.check_stabilization = true;
    CHECK(density_bruteforce(req, opt) == q(4, 3));
}

TEST_CASE("rank-two identity density") {
    PrimeContext ctx(3, 4);
    HermMatrix S = HermMatrix::identity(ctx, 2);
    CHECK(density_bruteforce({S, S, 2}) == q(32, 27));
    CHECK(closed_density_unimodular(3, 2, 2) == q(32, 27));
}

TEST_CASE("one-slot density inside a rank-three lattice") {
    PrimeContext ctx(3, 4);
    HermMatrix S = HermMatrix::identity(ctx, 3);
    HermMatrix T = HermMatrix::identity(ctx, 1);
    CHECK(density_bruteforce({S, T, 1}) == q(28, 27));
    CHECK(closed_density_unimodular(3, 3, 1) == q(28, 27));
}

TEST_CASE("odd-parity square cases vanish") {
    PrimeContext ctx(3, 6);
    HermMatrix S2 = HermMatrix::identity(ctx, 2);
    HermMatrix T = HermMatrix::diagonal_powers(ctx, {0, 1});
    CHECK(density_bruteforce({S2, T, 2}) == 0);

    HermMatrix S1 = HermMatrix::identity(ctx, 1);
    HermMatrix Tp = HermMatrix::diagonal_powers(ctx, {1});
    CHECK(density_bruteforce({S1, Tp, 2}) == 0);
}

TEST_CASE("product formula polynomials") {
    RationalPoly f1 = shimura_poly(3, 1);
    CHECK(f1.coefficient(0) == 1);
    CHECK(f1.coefficient(1) == q(1, 3));

    RationalPoly f2 = shimura_poly(3, 2);
    RationalPoly expect = (RationalPoly::constant(1) + RationalPoly::monomial(q(1, 3), 1)) *
                          (RationalPoly::constant(1) - RationalPoly::monomial(q(1, 9), 1));
    CHECK(f2 == expect);

    // value at 1 is the self-density
    Rational self = f2.evaluate(1);
    CHECK(self == q(32, 27));
}

TEST_CASE("binary polynomial at the unimodular point matches the product form") {
    for (long p : {3L, 5L, 7L}) CHECK(nagaoka_poly(p, 0, 0) == shimura_poly(p, 2));
    // odd parity vanishes at X = 1
    CHECK(nagaoka_poly(3, 0, 1).evaluate(1) == 0);
    CHECK(nagaoka_poly(5, 1, 2).evaluate(1) == 0);
}

TEST_CASE("binary polynomial matches brute force off the parity locus") {
    // alpha_p(1_3, diag(p^a, p^b)) = F(a, b; (-p)^{-1})
    PrimeContext ctx(3, 6);
    HermMatrix S = HermMatrix::identity(ctx, 3);
    for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 1}, {1, 1}, {0, 2}}) {
        HermMatrix T = HermMatrix::diagonal_powers(ctx, {a, b});
        int k = ell(T) + 1;
        Rational brute = density_bruteforce({S, T, k});
        Rational closed = closed_density_binary(3, 3, a, b);
        CHECK(brute == closed);
    }
}

TEST_CASE("structured counting agrees with plain enumeration") {
    DensityOptions generic;
    generic.force_generic = true;
    for (long p : {3L, 5L}) {
        PrimeContext ctx(p, 6);
        int kmax = (p == 3) ? 2 : 1;  // keep plain enumeration affordable
        for (int m = 1; m <= 2; ++m) {
            HermMatrix S = HermMatrix::identity(ctx, m);
            for (const auto& te : std::vector<std::vector<int>>{{0}, {1}, {0, 0}, {0, 1}, {1, 1}}) {
                if (static_cast<int>(te.size()) > m) continue;
                HermMatrix T = HermMatrix::diagonal_powers(ctx, te);
                for (int k = 1; k <= kmax; ++k) {
                    DensityRequest req{S, T, k};
                    CHECK(brute_count(req) == brute_count(req, generic));
                }
            }
        }
        // one rank-3 spot check at k = 1
        HermMatrix S3 = HermMatrix::identity(ctx, 3);
        HermMatrix T2 = HermMatrix::diagonal_powers(ctx, {0, 1});
        DensityRequest req{S3, T2, 1};
        CHECK(brute_count(req) == brute_count(req, generic));
    }
}

TEST_CASE("counts are thread-count independent") {
    PrimeContext ctx(3, 6);
    HermMatrix S = HermMatrix::identity(ctx, 3);
    HermMatrix T = HermMatrix::diagonal_powers(ctx, {1, 1});
    DensityOptions one, four;
    one.threads = 1;
    four.threads = 4;
    CHECK(brute_count({S, T, 2}, one) == brute_count({S, T, 2}, four));
}

TEST_CASE("derivative of the binary density") {
    BinaryDerivative d01 = alpha_derivative_binary(3, 0, 1);
    CHECK(d01.normalized == 1);
    BinaryDerivative d12 = alpha_derivative_binary(3, 1, 2);
    CHECK(d12.normalized == 5);  // (4 + 2p)/2 at p = 3

    // closed formula vs symbolic differentiation across the grid
    for (long p : {3L, 5L, 7L})
        for (int a = 0; a < 7; ++a)
            for (int b = a + 1; b <= 7; ++b) {
                if ((a + b) % 2 == 0) continue;
                BinaryDerivative d = alpha_derivative_binary(p, a, b);
                Rational head = (1 + q(1, p)) * (1 - q(1, p * p));
                CHECK(d.alpha_prime == head * d.normalized);
            }
    CHECK_THROWS_AS(alpha_derivative_binary(3, 1, 3), DomainError);
}

TEST_CASE("derivative ratio is n-independent") {
    CHECK(derivative_ratio(3, 2, 0, 1) == 1);
    CHECK(derivative_ratio(3, 3, 1, 2) == 5);
    CHECK(derivative_ratio(3, 4, 0, 3) == 2);
    for (long p : {3L, 5L}) {
        Rational r2 = derivative_ratio(p, 2, 2, 3);
        CHECK(derivative_ratio(p, 3, 2, 3) == r2);
        CHECK(derivative_ratio(p, 4, 2, 3) == r2);
    }
}

TEST_CASE("nonresidue choice does not change counts") {
    PrimeContext c2(5, 4, 2), c3(5, 4, 3);
    HermMatrix S2 = HermMatrix::identity(c2, 2), S3 = HermMatrix::identity(c3, 2);
    HermMatrix T2 = HermMatrix::diagonal_powers(c2, {0, 1});
    HermMatrix T3 = HermMatrix::diagonal_powers(c3, {0, 1});
    for (int k = 1; k <= 2; ++k)
        CHECK(brute_count({S2, T2, k}) == brute_count({S3, T3, k}));
}

TEST_CASE("closed forms hold at p = 5 as well") {
    PrimeContext ctx(5, 8);
    DensityOptions opt;
    opt.threads = 2;
    std::vector<std::vector<int>> s_list = {{0}, {0, 0}, {0, 0, 0}};
    std::vector<std::vector<int>> t_list = {{0}, {1}, {0, 0}, {0, 1}, {1, 1}, {0, 2}};
    for (const auto& se : s_list)
        for (const auto& te : t_list) {
            if (se.size() < te.size()) continue;
            HermMatrix S = HermMatrix::identity(ctx, static_cast<int>(se.size()));
            HermMatrix T = HermMatrix::diagonal_powers(ctx, te);
            int k = ell(T) + 1;
            int m = static_cast<int>(se.size()), n = static_cast<int>(te.size());
            int tdet = 0;
            for (int e : te) tdet += e;
            Rational brute = density_bruteforce({S, T, k}, opt);
            if (m == n && tdet % 2 == 1) {
                CHECK(brute == 0);
            } else if (tdet == 0) {
                CHECK(brute == closed_density_unimodular(5, m, n));
            } else if (n == 2) {
                CHECK(brute == closed_density_binary(5, m, te[0], te[1]));
            }
        }
}

TEST_CASE("budget is enforced") {
    PrimeContext ctx(3, 8);
    HermMatrix S = HermMatrix::identity(ctx, 3);
    HermMatrix T = HermMatrix::diagonal_powers(ctx, {3, 3, 3});
    DensityOptions opt;
    opt.budget = 10;
    CHECK_THROWS_AS(brute_count({S, T, 4}, opt), BudgetError);
}
