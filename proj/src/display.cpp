#include "ulocal/display.hpp"

#include "ulocal/errors.hpp"

namespace ulocal {

namespace {

long pow_long(long b, int e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

long expected_exponent(long p, int v) {
    // (p^{v+1} - 1)/(p - 1)
    return (pow_long(p, v + 1) - 1) / (p - 1);
}

// U^{-1} = [[-t/p, 1/p], [1, 0]],  U'^{-1} = [[t/p, 1/p], [1, 0]].
TruncatedSeriesMatrix u_inverse(long p, int t_max, bool breve) {
    TruncatedSeriesMatrix M(p, t_max);
    Rational inv_p(1, p);
    M.at(0, 0).set_coeff(1, breve ? inv_p : -inv_p);
    M.at(0, 1).set_coeff(0, inv_p);
    M.at(1, 0).set_coeff(0, Rational(1));
    return M;
}

TruncatedSeriesMatrix s_matrix(long p, int t_max) {
    TruncatedSeriesMatrix M(p, t_max);
    M.at(0, 1).set_coeff(0, Rational(1));
    M.at(1, 0).set_coeff(0, Rational(p));
    return M;
}

} // namespace

RecursionState initial_state(long p, int v, int t_max) {
    if (v < 0) throw DomainError("initial_state: v must be >= 0");
    long expected = expected_exponent(p, v);
    if (t_max == 0) t_max = static_cast<int>(expected + p);
    if (t_max < expected + 1)
        throw DomainError("initial_state: t_max below the expected obstruction degree");

    RecursionState st{p, v, t_max, 0, TruncatedSeriesMatrix(p, t_max),
                      TruncatedSeriesMatrix(p, t_max)};
    int r = v / 2;
    Rational pr(pow_long(p, r));
    if (v % 2 == 0) {
        st.X.at(0, 0).set_coeff(0, pr);
        st.Y.at(1, 1).set_coeff(0, pr);
    } else {
        st.X.at(1, 0).set_coeff(0, Rational(pow_long(p, r + 1)));
        st.Y.at(0, 1).set_coeff(0, pr);
    }
    return st;
}

RecursionState step_recursion(const RecursionState& state) {
    RecursionState next = state;
    TruncatedSeriesMatrix Uinv = u_inverse(state.p, state.t_max, false);
    TruncatedSeriesMatrix Binv = u_inverse(state.p, state.t_max, true);
    TruncatedSeriesMatrix S = s_matrix(state.p, state.t_max);
    next.Y = Uinv * state.X.frobenius() * S;
    next.X = Binv * state.Y.frobenius() * S;
    next.step = state.step + 1;
    return next;
}

ObstructionRun obstruction_exponent(long p, int v, bool keep_trail) {
    RecursionState st = initial_state(p, v);
    int steps = 2 * (v / 2) + 3;

    ObstructionRun run;
    run.expected = static_cast<int>(expected_exponent(p, v));
    run.parity_pattern_ok = true;

    std::optional<int> best;
    std::vector<RecursionState> states = {st};
    for (int i = 0; i < steps; ++i) {
        st = step_recursion(st);
        states.push_back(st);
        auto dx = st.X.min_nonintegral_degree();
        auto dy = st.Y.min_nonintegral_degree();
        if (dx && (!best || *dx < *best)) best = dx;
        if (dy && (!best || *dy < *best)) best = dy;
    }

    // Step-pairing pattern: for even v, X(2i) = X(2i+1) and
    // Y(2i+1) = Y(2i+2); for odd v, X(2i+1) = X(2i+2) and Y(2i) = Y(2i+1).
    for (size_t nidx = 0; nidx + 1 < states.size(); ++nidx) {
        size_t nn = nidx;
        bool even_v = v % 2 == 0;
        if (even_v) {
            if (nn % 2 == 0 && !(states[nn].X == states[nn + 1].X)) run.parity_pattern_ok = false;
            if (nn % 2 == 1 && !(states[nn].Y == states[nn + 1].Y)) run.parity_pattern_ok = false;
        } else {
            if (nn % 2 == 1 && !(states[nn].X == states[nn + 1].X)) run.parity_pattern_ok = false;
            if (nn % 2 == 0 && !(states[nn].Y == states[nn + 1].Y)) run.parity_pattern_ok = false;
        }
    }

    if (!best) {
        // Nothing non-integral below t_max: only trustworthy if nothing was
        // truncated, and then it contradicts the closed form anyway.
        throw CrossCheckError("obstruction_exponent: no non-integral coefficient found "
                              "below t_max");
    }
    run.exponent = *best;
    if (run.exponent != run.expected)
        throw CrossCheckError("obstruction_exponent: observed degree disagrees with "
                              "(p^{v+1}-1)/(p-1)");
    if (keep_trail) run.trail = std::move(states);
    return run;
}

} // namespace ulocal
