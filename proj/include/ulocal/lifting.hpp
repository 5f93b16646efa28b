#pragma once

#include <array>
#include <map>
#include <optional>

#include "ulocal/quat.hpp"
#include "ulocal/rational_poly.hpp"

namespace ulocal {

// Component valuations of psi = alpha + beta*Pi: the O-valuations of alpha
// and beta.  nullopt means the component is exactly zero.
struct QuatValuationDatum {
    std::optional<int> ord_alpha;
    std::optional<int> ord_beta;

    // v_D = min(2 ord_alpha, 2 ord_beta + 1); nullopt when psi = 0.
    std::optional<int> v_d() const;
};

// e_0 = 1, e_s = p^{s-1}(p+1) for s >= 1.
Integer ramification_index(long p, int s);

// Largest valuation attainable by translating psi across the coset
// Pi^{s-r} (Z_p + p^r O); nullopt means psi lies in the coset (no bound).
//
// The datum overload covers r = 0 (where component valuations determine the
// answer) plus the cases determined by valuations alone for r > 0; it throws
// DomainError when the Z_p/delta split of a component is needed.  The full
// element overload is always exact.
std::optional<int> coset_valuation_l(const QuatValuationDatum& psi, int r, int s);
std::optional<int> coset_valuation_l(const QuatElement& psi, int r, int s);

// Lifting bound for level-(0, s), in units of e/e_s:
//   l <  s: (p^{l+1} - 1)/(p - 1)
//   l >= s: (p^s - 1)/(p - 1) + (l + 1 - s) e_s / 2
Rational lifting_bound_n0s(long p, int l, int s);

// Lifting bound for level-(r, s), r <= s, in units of e/e_s.
Rational lifting_bound_nrs(long p, int l, int r, int s);

// The four matrix entries for the pair (Pi^a, Pi^b) written against the
// 1, delta basis (a even, b odd): every entry has component valuations
// (a/2, (b-1)/2).  Returns the entries and their coset valuations at (0, s).
struct MuMatrixData {
    std::array<QuatValuationDatum, 4> entries;
    std::array<std::optional<int>, 4> l;
    std::optional<int> l_min;  // min over finite entries; nullopt if all infinite
};
MuMatrixData mu_matrix_l(long p, int a, int b, int s);

// Multiplicity of the level-s component against the complementary divisor,
// normalized by e/e_s (a even, b odd; s <= a for even s, s <= b for odd s).
// The closed form is cross-checked against the minimum of the entrywise
// lifting bounds; disagreement throws CrossCheckError.
Rational stratum_intersection(long p, int a, int b, int s);

// e_min(s, t) for s != t.
Integer stratum_pair_intersection(long p, int s, int t);

struct IntersectionLedger {
    int a_even = 0;
    int b_odd = 0;
    std::map<int, Rational> per_stratum;  // every contributing level, both parities
    Rational total;                       // equal sums over even and odd levels
    Rational formula_total;               // (1/2) sum_{l=0}^{min} p^l (a+b+1-2l)
    // True when a level s exceeded the complementary exponent (possible only
    // for a > b); those terms follow the stated branch and are additionally
    // confirmed by the entrywise lifting-bound route.
    bool extrapolated_branch = false;
};

// Both expansions of the total intersection number, checked against each
// other and against the closed formula.  a + b must be odd.
IntersectionLedger total_degree(long p, int a, int b);

// Sum of e_s over s <= a of the given parity; equals (p^{a+1}-1)/(p-1)
// when a has that parity.
Integer special_fiber_sums(long p, int a, bool odd_parity);

// Fiber count of the full deformation divisor of an order of conductor c:
// 2 sum_{i<c} p^i + p^c (unramified) or 2 sum_{i<=c} p^i (ramified).
Integer gl2_correction_sums(long p, int c, bool ramified);

} // namespace ulocal
