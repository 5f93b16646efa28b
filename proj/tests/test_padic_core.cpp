#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ulocal/json_io.hpp"
#include "ulocal/quat.hpp"
#include "ulocal/rational_poly.hpp"
#include "ulocal/series_matrix.hpp"

using namespace ulocal;

TEST_CASE("context validation") {
    CHECK_THROWS_AS(PrimeContext(2, 4), DomainError);
    CHECK_THROWS_AS(PrimeContext(9, 4), DomainError);
    CHECK_THROWS_AS(PrimeContext(3, 0), DomainError);
    CHECK_THROWS_AS(PrimeContext(5, 4, 4), DomainError);  // 4 = 2^2 is a residue
    PrimeContext c(3, 4);
    CHECK(c.epsilon() == 2);  // least nonresidue mod 3
    PrimeContext c5(5, 4);
    CHECK(c5.epsilon() == 2);
    PrimeContext c7(7, 4);
    CHECK(c7.epsilon() == 3);
}

TEST_CASE("basic ring relations") {
    PrimeContext ctx(3, 2);  // mod 9
    OkElement one = OkElement::one(ctx);
    OkElement d = OkElement::delta(ctx);
    OkElement x(ctx, 5, 7);

    CHECK(one * x == x);
    CHECK(d * d == OkElement(ctx, ctx.epsilon(), 0));

    // (1 + delta)(1 - delta) = 1 - eps = -1 = 8 mod 9
    OkElement u(ctx, 1, 1), v(ctx, 1, -1);
    CHECK(u * v == OkElement(ctx, 8, 0));
}

TEST_CASE("valuations") {
    PrimeContext ctx(3, 3);  // mod 27
    OkElement x(ctx, 3, 3);  // 3(1 + delta)
    CHECK(x.valuation() == 1);
    OkElement y(ctx, 9, 3);  // 9 + 3 delta
    CHECK(y.valuation() == 1);
    OkElement z = OkElement::zero(ctx);
    CHECK(!z.valuation().has_value());
}

TEST_CASE("context mismatch is rejected") {
    PrimeContext a(3, 2), b(5, 2);
    CHECK_THROWS_AS(OkElement(a, 1, 0) * OkElement(b, 1, 0), ContextMismatchError);
}

TEST_CASE("norm and conjugation properties on random elements") {
    PrimeContext ctx(5, 6);
    std::mt19937_64 rng(42);
    auto rand_el = [&]() {
        return OkElement(ctx, static_cast<long long>(rng() % ctx.modulus()),
                         static_cast<long long>(rng() % ctx.modulus()));
    };
    for (int i = 0; i < 1000; ++i) {
        OkElement x = rand_el(), y = rand_el();
        OkElement prod = x * x.conj();
        CHECK(prod.b() == 0);
        CHECK(prod.a() == x.norm());
        CHECK((x * y).conj() == x.conj() * y.conj());
        CHECK(x.conj().conj() == x);
        CHECK(x.trace() == ctx.add(x.a(), x.a()));
    }
}

TEST_CASE("unit inversion and norm solving") {
    for (long p : {3L, 5L, 7L}) {
        PrimeContext ctx(p, 6);
        std::mt19937_64 rng(7 * p);
        for (int i = 0; i < 100; ++i) {
            OkElement x(ctx, static_cast<long long>(rng() % ctx.modulus()),
                        static_cast<long long>(rng() % ctx.modulus()));
            if (!x.is_unit()) continue;
            CHECK(x * x.inverse() == OkElement::one(ctx));
        }
        for (long long c = 1; c < 30; ++c) {
            if (c % p == 0) continue;
            OkElement z = solve_norm(ctx, ctx.reduce(c));
            CHECK(z.norm() == ctx.reduce(c));
        }
    }
}

TEST_CASE("quaternion relations") {
    PrimeContext ctx(3, 4);
    QuatElement pi = QuatElement::pi(ctx);
    QuatElement d = QuatElement::from_ok(OkElement::delta(ctx));

    // Pi^2 = p
    CHECK(pi * pi == QuatElement::from_ok(OkElement(ctx, 3, 0)));
    // Pi delta = conj(delta) Pi = -delta Pi
    QuatElement lhs = pi * d;
    QuatElement rhs(OkElement::zero(ctx), OkElement::delta(ctx).neg());
    CHECK(lhs == rhs);
    // central p^r has valuation 2r
    for (int r = 0; r < 3; ++r) {
        QuatElement z = QuatElement::from_ok(OkElement::one(ctx).shift_up(r));
        CHECK(z.valuation() == 2 * r);
    }
    CHECK(QuatElement::pi_pow(ctx, 5).valuation() == 5);
}

TEST_CASE("quaternion valuation is additive") {
    PrimeContext ctx(3, 8);
    std::mt19937_64 rng(99);
    auto rand_q = [&]() {
        return QuatElement(OkElement(ctx, static_cast<long long>(rng() % 81),
                                     static_cast<long long>(rng() % 81)),
                           OkElement(ctx, static_cast<long long>(rng() % 81),
                                     static_cast<long long>(rng() % 81)));
    };
    int checked = 0;
    for (int i = 0; i < 500; ++i) {
        QuatElement x = rand_q(), y = rand_q();
        auto vx = x.valuation(), vy = y.valuation();
        if (!vx || !vy) continue;
        auto vp = (x * y).valuation();
        REQUIRE(vp.has_value());
        CHECK(*vp == *vx + *vy);
        ++checked;
    }
    CHECK(checked > 400);
}

TEST_CASE("quaternion multiplication is associative") {
    PrimeContext ctx(5, 4);
    std::mt19937_64 rng(3);
    auto rand_q = [&]() {
        return QuatElement(OkElement(ctx, static_cast<long long>(rng() % ctx.modulus()),
                                     static_cast<long long>(rng() % ctx.modulus())),
                           OkElement(ctx, static_cast<long long>(rng() % ctx.modulus()),
                                     static_cast<long long>(rng() % ctx.modulus())));
    };
    for (int i = 0; i < 200; ++i) {
        QuatElement x = rand_q(), y = rand_q(), z = rand_q();
        CHECK((x * y) * z == x * (y * z));
    }
}

TEST_CASE("rational polynomial arithmetic is exact") {
    std::mt19937_64 rng(17);
    auto rand_poly = [&]() {
        std::vector<Rational> c;
        int deg = static_cast<int>(rng() % 6);
        for (int i = 0; i <= deg; ++i) {
            Rational q(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 7));
            q.canonicalize();
            c.push_back(q);
        }
        return RationalPoly(std::move(c));
    };
    for (int i = 0; i < 200; ++i) {
        RationalPoly f = rand_poly(), g = rand_poly();
        Rational q(static_cast<long>(rng() % 13) - 6, 1 + static_cast<long>(rng() % 5));
        q.canonicalize();
        CHECK((f * g).evaluate(q) == f.evaluate(q) * g.evaluate(q));
        CHECK((f + g).evaluate(q) == f.evaluate(q) + g.evaluate(q));
    }
    // d/dX (X^3) = 3X^2
    RationalPoly x3 = RationalPoly::monomial(Rational(1), 3);
    CHECK(x3.derivative() == RationalPoly::monomial(Rational(3), 2));
}

TEST_CASE("p-valuation of rationals") {
    CHECK(rational_p_valuation(Rational(9, 2), 3) == 2);
    CHECK(rational_p_valuation(Rational(2, 27), 3) == -3);
    CHECK(rational_p_valuation(Rational(7), 3) == 0);
}

TEST_CASE("truncated polynomials track dropped mass") {
    TruncatedPoly f(3, 10);
    f.set_coeff(4, Rational(1, 3));
    TruncatedPoly g = f.frobenius();  // degree 12 >= 10
    CHECK(g.truncated_tail());
    CHECK(!g.min_nonintegral_degree().has_value());

    TruncatedPoly h(3, 30);
    h.set_coeff(4, Rational(1, 3));
    TruncatedPoly hf = h.frobenius();
    CHECK(!hf.truncated_tail());
    CHECK(hf.min_nonintegral_degree() == 12);
}

TEST_CASE("matrix element json round trip") {
    PrimeContext ctx(3, 4);
    HermMatrix T(ctx, 2);
    T.set_sym(0, 0, OkElement(ctx, 3, 0));
    T.set_sym(1, 1, OkElement(ctx, 1, 0));
    T.set_sym(0, 1, OkElement(ctx, 2, 5));
    json j = herm_to_json(T);
    LoadedMatrix back = herm_from_json(j);
    CHECK(back.mat.n() == 2);
    CHECK(back.mat.at(0, 1).a() == 2);
    CHECK(back.mat.at(0, 1).b() == 5);
    CHECK(back.mat.at(1, 0) == back.mat.at(0, 1).conj());
    CHECK(back.ctx->p() == 3);
}

TEST_CASE("hermitian validation") {
    PrimeContext ctx(3, 4);
    std::vector<std::vector<OkElement>> bad = {
        {OkElement(ctx, 1, 0), OkElement(ctx, 1, 1)},
        {OkElement(ctx, 1, 1), OkElement(ctx, 1, 0)}};  // should be conj
    CHECK_THROWS_AS(HermMatrix::from_entries(ctx, bad), DomainError);
}
