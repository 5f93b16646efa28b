#pragma once

#include "ulocal/jordan.hpp"
#include "ulocal/rational_poly.hpp"

namespace ulocal {

struct DensityOptions {
    double budget = 1e9;     // elementary operations allowed per count
    int threads = 1;
    bool force_generic = false;   // bypass the structured counting paths
    bool check_stabilization = false;  // recount at k+1 and compare
};

// Count of {x in M_{m,n}(O/p^k) : t(x) S conj(x) = T mod p^k}.
struct DensityRequest {
    HermMatrix S;
    HermMatrix T;
    int k = 1;
};

// Smallest l >= 0 with p^l T^{-1} integral.
int ell(const HermMatrix& T);

Integer brute_count(const DensityRequest& req, const DensityOptions& opt = {});

// (p^{-k})^{n(2m-n)} * brute_count.
Rational density_bruteforce(const DensityRequest& req, const DensityOptions& opt = {});

// prod_{l=1}^{n} (1 - (-1)^l p^{-l} X)
RationalPoly shimura_poly(long p, int n);

// (1 + p^{-1}X)(1 - p^{-2}X) sum_{l=0}^{a} (pX)^l sum_{k=0}^{a+b-2l} (-X)^k,
// for 0 <= a <= b.
RationalPoly nagaoka_poly(long p, int a, int b);

struct BinaryDerivative {
    Rational alpha_prime;  // -(d/dX) nagaoka(a,b) at X = 1
    Rational normalized;   // (1/2) sum_{l=0}^{a} p^l (a+b-2l+1)
};
// Requires a+b odd; (a, b) is sorted internally.
BinaryDerivative alpha_derivative_binary(long p, int a, int b);

// Normalized derivative ratio for T = diag(1_{n-2}, p^a, p^b), computed two
// ways (factorization through the binary case, and the closed formula) and
// cross-checked; throws CrossCheckError on disagreement.
Rational derivative_ratio(long p, int n, int a, int b);

// Closed-form densities used as oracles: alpha_p(1_m, 1_n) and
// alpha_p(1_m, diag(p^a, p^b)).
Rational closed_density_unimodular(long p, int m, int n);
Rational closed_density_binary(long p, int m, int a, int b);

} // namespace ulocal
