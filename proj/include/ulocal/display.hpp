#pragma once

#include "ulocal/series_matrix.hpp"

namespace ulocal {

// State of the window recursion Y(n+1) = U^{-1} s(X(n)) S,
// X(n+1) = U'^{-1} s(Y(n)) S over Q[t]/(t^t_max), where s fixes coefficients
// and sends t to t^p, U = [[0,1],[p,t]], U' = [[0,1],[p,-t]], S = [[0,1],[p,0]].
struct RecursionState {
    long p;
    int v;        // valuation parameter of the deformed pair
    int t_max;
    int step;     // number of recursion steps applied
    TruncatedSeriesMatrix X, Y;
};

// Starting data: v = 2r even gives X = diag(p^r, 0), Y = diag(0, p^r);
// v = 2r+1 odd gives X = [[0,0],[p^{r+1},0]], Y = [[0,p^r],[0,0]].
// t_max defaults to (p^{v+1}-1)/(p-1) + p and must exceed the expected
// obstruction degree.
RecursionState initial_state(long p, int v, int t_max = 0);

RecursionState step_recursion(const RecursionState& state);

struct ObstructionRun {
    int exponent;            // least t-degree with a non-integral coefficient
    int expected;            // (p^{v+1}-1)/(p-1)
    bool parity_pattern_ok;  // step-pairing identities held at every step
    std::vector<RecursionState> trail;  // states after each step
};

// Runs 2*floor(v/2) + 3 steps, returns the minimal non-integral t-degree
// over every computed X(n), Y(n), and checks it against the closed form.
// Disagreement or a truncation-dependent verdict is an error.
ObstructionRun obstruction_exponent(long p, int v, bool keep_trail = false);

} // namespace ulocal
