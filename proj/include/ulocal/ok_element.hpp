#pragma once

#include <optional>
#include <string>

#include "ulocal/context.hpp"

namespace ulocal {

// Element a + b*delta of O = Z_p[delta] truncated mod p^N, with
// delta^2 = epsilon and conj(a + b*delta) = a - b*delta.
//
// Immutable value type; the context must outlive every element built on it.
class OkElement {
public:
    OkElement() : ctx_(nullptr), a_(0), b_(0) {}
    OkElement(const PrimeContext& ctx, long long a, long long b = 0)
        : ctx_(&ctx), a_(ctx.reduce(a)), b_(ctx.reduce(b)) {}

    static OkElement from_residues(const PrimeContext& ctx, residue_t a, residue_t b) {
        OkElement e;
        e.ctx_ = &ctx;
        e.a_ = a % ctx.modulus();
        e.b_ = b % ctx.modulus();
        return e;
    }
    static OkElement zero(const PrimeContext& ctx) { return OkElement(ctx, 0, 0); }
    static OkElement one(const PrimeContext& ctx) { return OkElement(ctx, 1, 0); }
    static OkElement delta(const PrimeContext& ctx) { return OkElement(ctx, 0, 1); }

    const PrimeContext& ctx() const;
    residue_t a() const { return a_; }
    residue_t b() const { return b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_unit() const;

    OkElement conj() const;
    OkElement neg() const;
    // trace(x) = x + conj(x) = 2a, norm(x) = x*conj(x) = a^2 - eps*b^2,
    // both landing in Z/p^N.
    residue_t trace() const;
    residue_t norm() const;

    // min(v_p(a), v_p(b)); nullopt means ">= precision".
    std::optional<int> valuation() const;

    // Multiplicative inverse; requires a unit.
    OkElement inverse() const;

    // Exact division by p^k; requires valuation >= k.  The result is well
    // defined only mod p^(N-k); the canonical representative is returned.
    OkElement shift_down(int k) const;
    OkElement shift_up(int k) const;  // multiply by p^k

    friend OkElement operator+(const OkElement& x, const OkElement& y);
    friend OkElement operator-(const OkElement& x, const OkElement& y);
    friend OkElement operator*(const OkElement& x, const OkElement& y);
    friend bool operator==(const OkElement& x, const OkElement& y);
    friend bool operator!=(const OkElement& x, const OkElement& y) { return !(x == y); }

    std::string str() const;

private:
    const PrimeContext* ctx_;
    residue_t a_, b_;

    static const PrimeContext& common_ctx(const OkElement& x, const OkElement& y);
};

// Solve norm(z) = c for a unit c in Z/p^N: a mod-p solution found by direct
// search, then lifted with Newton steps.  Exists because the norm is
// surjective on units in the unramified case.
OkElement solve_norm(const PrimeContext& ctx, residue_t c);

} // namespace ulocal
