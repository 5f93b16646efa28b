#pragma once

#include <cstdint>
#include <optional>

#include "ulocal/errors.hpp"

namespace ulocal {

// Residues are stored as canonical representatives in [0, p^N).  A modulus of
// at most ~9.2e18 keeps products representable in unsigned __int128.
using residue_t = std::uint64_t;

// Arithmetic environment for the quadratic unramified extension
// O = Z_p[delta], delta^2 = epsilon, truncated at p^N.
//
// Values are immutable after construction and may be shared freely between
// threads.
class PrimeContext {
public:
    // epsilon == 0 selects the least positive quadratic nonresidue mod p.
    PrimeContext(long p, int precision, long epsilon = 0);

    long p() const { return p_; }
    long epsilon() const { return epsilon_; }
    int precision() const { return precision_; }
    residue_t modulus() const { return modulus_; }   // p^precision

    // p^k for 0 <= k <= precision.
    residue_t pow_p(int k) const;

    bool same_as(const PrimeContext& other) const {
        return p_ == other.p_ && epsilon_ == other.epsilon_ && precision_ == other.precision_;
    }

    // ---- residue arithmetic mod p^precision ----
    residue_t add(residue_t x, residue_t y) const;
    residue_t sub(residue_t x, residue_t y) const;
    residue_t mul(residue_t x, residue_t y) const;
    residue_t neg(residue_t x) const;
    // Multiplicative inverse; requires x a unit (not divisible by p).
    residue_t inv(residue_t x) const;
    // Reduce a signed integer into [0, p^N).
    residue_t reduce(long long x) const;

    // v_p of a residue, or nullopt when x == 0 (meaning ">= precision").
    std::optional<int> valuation(residue_t x) const;

    static bool is_prime(long n);
    static bool is_nonresidue(long e, long p);
    static long least_nonresidue(long p);

private:
    long p_;
    long epsilon_;
    int precision_;
    residue_t modulus_;
};

} // namespace ulocal
