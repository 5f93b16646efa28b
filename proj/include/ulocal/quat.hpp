#pragma once

#include <optional>

#include "ulocal/ok_element.hpp"

namespace ulocal {

// Element alpha + beta*Pi of the maximal order O_D in the quaternion
// division algebra over Q_p, with Pi^2 = p and Pi*gamma = conj(gamma)*Pi
// for gamma in O.  Truncation is inherited from the coefficient context.
class QuatElement {
public:
    QuatElement(const OkElement& alpha, const OkElement& beta)
        : alpha_(alpha), beta_(beta) {}

    static QuatElement zero(const PrimeContext& ctx) {
        return QuatElement(OkElement::zero(ctx), OkElement::zero(ctx));
    }
    static QuatElement one(const PrimeContext& ctx) {
        return QuatElement(OkElement::one(ctx), OkElement::zero(ctx));
    }
    static QuatElement pi(const PrimeContext& ctx) {
        return QuatElement(OkElement::zero(ctx), OkElement::one(ctx));
    }
    static QuatElement from_ok(const OkElement& alpha) {
        return QuatElement(alpha, OkElement::zero(alpha.ctx()));
    }
    // Pi^k, computed exactly.
    static QuatElement pi_pow(const PrimeContext& ctx, int k);

    const OkElement& alpha() const { return alpha_; }
    const OkElement& beta() const { return beta_; }
    bool is_zero() const { return alpha_.is_zero() && beta_.is_zero(); }

    // v_D with v_D(Pi) = 1: min(2 v(alpha), 2 v(beta) + 1).
    // nullopt means the element vanishes to working precision.
    std::optional<int> valuation() const;

    friend QuatElement operator+(const QuatElement& x, const QuatElement& y) {
        return QuatElement(x.alpha_ + y.alpha_, x.beta_ + y.beta_);
    }
    friend QuatElement operator-(const QuatElement& x, const QuatElement& y) {
        return QuatElement(x.alpha_ - y.alpha_, x.beta_ - y.beta_);
    }
    // (a1 + b1 Pi)(a2 + b2 Pi) = (a1 a2 + p b1 conj(b2)) + (a1 b2 + b1 conj(a2)) Pi
    friend QuatElement operator*(const QuatElement& x, const QuatElement& y);
    friend bool operator==(const QuatElement& x, const QuatElement& y) {
        return x.alpha_ == y.alpha_ && x.beta_ == y.beta_;
    }
    friend bool operator!=(const QuatElement& x, const QuatElement& y) { return !(x == y); }

private:
    OkElement alpha_, beta_;
};

} // namespace ulocal
