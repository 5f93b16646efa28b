#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ulocal/jordan.hpp"

namespace ulocal {

// Finite module D = (+) O/p^{a_i} carrying the O-valued-pairing-mod-O
// h(x, y) = sum_i p^{-a_i} x_i conj(y_i), represented through canonical
// element indices (mixed radix over coordinate residue pairs).
class FiniteHermModule {
public:
    // Exponents are the entries >= 1 of a Jordan profile; zeros are dropped.
    FiniteHermModule(long p, std::vector<int> exponents, std::uint64_t element_budget = 1u << 22);

    long p() const { return p_; }
    const std::vector<int>& exponents() const { return exps_; }
    int rank() const { return static_cast<int>(exps_.size()); }
    int length() const { return total_len_; }          // sum of exponents (O-length)
    std::uint32_t size() const { return size_; }       // p^(2 * length)
    int max_exponent() const { return amax_; }

    std::uint32_t add(std::uint32_t x, std::uint32_t y) const;
    std::uint32_t negate(std::uint32_t x) const;
    std::uint32_t mul_p(std::uint32_t x) const;
    // Multiply by the scalar u + v*delta (residues mod p^amax).
    std::uint32_t scalar_mul(long u, long v, std::uint32_t x) const;

    // p^amax * h(x, y) as a residue pair mod p^amax; (0,0) iff h(x,y) = 0 in k/O.
    std::pair<long, long> pairing_scaled(std::uint32_t x, std::uint32_t y) const;
    bool pairing_is_zero(std::uint32_t x, std::uint32_t y) const;
    // True when p * h(x, y) lies in O.
    bool pairing_is_shallow(std::uint32_t x, std::uint32_t y) const;

private:
    long p_;
    std::vector<int> exps_;
    std::vector<long> mod_;       // p^{a_i}
    std::vector<std::uint64_t> radix_;
    long pamax_;
    long eps_;
    int amax_;
    int total_len_;
    std::uint32_t size_;

    void decode(std::uint32_t x, long* u, long* v) const;
    std::uint32_t encode(const long* u, const long* v) const;
};

FiniteHermModule build_D(const JordanProfile& profile, long p,
                         int max_total_exponent = 5);

// Submodule as the sorted list of its element indices; `generators` is any
// generating set (kept for pairing checks against other modules).
struct Submodule {
    std::vector<std::uint32_t> elements;
    std::vector<std::uint32_t> generators;

    int length_over(const FiniteHermModule& D) const;  // log_{p^2} |elements|
    bool contains(std::uint32_t x) const;
    bool contains_all(const std::vector<std::uint32_t>& xs) const;

    bool operator==(const Submodule& other) const { return elements == other.elements; }
    bool operator<(const Submodule& other) const { return elements < other.elements; }
};

Submodule span(const FiniteHermModule& D, const std::vector<std::uint32_t>& gens);
Submodule extend(const FiniteHermModule& D, const Submodule& base, std::uint32_t g);

// B^perp = {x : h(x, B) = 0 in k/O}.
Submodule orthogonal(const FiniteHermModule& D, const Submodule& B);

struct GrElement {
    Submodule B;
    int type;  // dim of B / B^perp over the residue field
};

// All B with pB <= B^perp <= B, with types; enumerated through the isotropic
// complements C = B^perp (extension by isotropic vectors, canonical-set
// deduplication), which keeps the search space small.
std::vector<GrElement> enumerate_grD(const FiniteHermModule& D);

struct StratumReport {
    int m = 0;
    int t0 = 0;
    int det_valuation = 0;
    int expected_max_type = 0;   // in D coordinates
    int observed_max_type = 0;
    int maximal_count = 0;
    bool irreducible_predicted = false;
    bool irreducible_observed = false;
    bool max_type_ok = false;
    bool uniqueness_ok = false;
    bool pass = false;
};

// Exhaustive check of the dimension and irreducibility statements on one
// profile.  The expected maximal type in D coordinates is the largest
// t <= m with t = det_valuation (mod 2); for odd determinant valuation this
// is exactly t0.
StratumReport verify_stratum_theorems(const JordanProfile& profile, long p,
                                      int max_total_exponent = 5);

// DOT rendering of the inclusion poset of GrD.
std::string grD_poset_dot(const FiniteHermModule& D, const std::vector<GrElement>& gr);

} // namespace ulocal
