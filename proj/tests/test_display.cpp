#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ulocal/display.hpp"
#include "ulocal/errors.hpp"

using namespace ulocal;

TEST_CASE("initial data") {
    RecursionState s0 = initial_state(3, 0);
    CHECK(s0.X.at(0, 0).coeff(0) == 1);
    CHECK(s0.X.at(1, 1).coeff(0) == 0);
    CHECK(s0.Y.at(1, 1).coeff(0) == 1);

    RecursionState s1 = initial_state(3, 1);
    CHECK(s1.X.at(1, 0).coeff(0) == 3);
    CHECK(s1.Y.at(0, 1).coeff(0) == 1);

    RecursionState s2 = initial_state(3, 2);
    CHECK(s2.X.at(0, 0).coeff(0) == 3);
    CHECK(s2.Y.at(1, 1).coeff(0) == 3);

    CHECK_THROWS_AS(initial_state(3, 2, 5), DomainError);  // t_max below the target degree
    CHECK_THROWS_AS(initial_state(3, -1), DomainError);
}

TEST_CASE("first step at v = 0") {
    RecursionState st = step_recursion(initial_state(3, 0));
    // X(1) = X(0)
    CHECK(st.X.at(0, 0).coeff(0) == 1);
    CHECK(st.X.at(0, 1).coeff(0) == 0);
    CHECK(st.X.at(1, 0).coeff(0) == 0);
    // Y(1) = [[0, -t/p], [0, 1]]
    CHECK(st.Y.at(0, 1).coeff(1) == Rational(-1, 3));
    CHECK(st.Y.at(1, 1).coeff(0) == 1);
    CHECK(st.Y.at(0, 0).coeff(0) == 0);
}

TEST_CASE("first step at odd v") {
    RecursionState st = step_recursion(initial_state(3, 1));
    // X(1) = [[p^r t, 0], [p^{r+1}, 0]] with r = 0
    CHECK(st.X.at(0, 0).coeff(1) == 1);
    CHECK(st.X.at(1, 0).coeff(0) == 3);
    // Y(1) = Y(0)
    CHECK(st.Y.at(0, 1).coeff(0) == 1);
}

TEST_CASE("obstruction degrees at p = 3") {
    const int expect[] = {1, 4, 13, 40};
    for (int v = 0; v <= 3; ++v) {
        ObstructionRun run = obstruction_exponent(3, v);
        CHECK(run.exponent == expect[v]);
        CHECK(run.parity_pattern_ok);
    }
}

TEST_CASE("obstruction degrees at p = 5") {
    const int expect[] = {1, 6, 31};
    for (int v = 0; v <= 2; ++v) {
        ObstructionRun run = obstruction_exponent(5, v);
        CHECK(run.exponent == expect[v]);
        CHECK(run.parity_pattern_ok);
    }
}

TEST_CASE("leading coefficient valuations follow the step ladder") {
    // At v = 2 (r = 1) the first non-integral coefficient sits at degree
    // p^2 + p + 1 with p-valuation exactly -1 = r - s at s = 2.
    ObstructionRun run = obstruction_exponent(3, 2, true);
    bool found = false;
    for (const auto& st : run.trail) {
        for (int i = 0; i < 2 && !found; ++i)
            for (int j = 0; j < 2 && !found; ++j) {
                const Rational& c = st.Y.at(i, j).coeff(13);
                if (c != 0 && rational_p_valuation(c, 3) == -1) found = true;
            }
    }
    CHECK(found);
}
