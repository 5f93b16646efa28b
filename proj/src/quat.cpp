#include "ulocal/quat.hpp"

namespace ulocal {

QuatElement QuatElement::pi_pow(const PrimeContext& ctx, int k) {
    if (k < 0) throw DomainError("QuatElement::pi_pow: negative exponent");
    // Pi^k = p^(k/2) for even k, p^((k-1)/2) * Pi for odd k.
    OkElement coeff = OkElement::one(ctx).shift_up(k / 2);
    if (k % 2 == 0) return from_ok(coeff);
    return QuatElement(OkElement::zero(ctx), coeff);
}

std::optional<int> QuatElement::valuation() const {
    std::optional<int> va = alpha_.valuation();
    std::optional<int> vb = beta_.valuation();
    std::optional<int> ra, rb;
    if (va) ra = 2 * *va;
    if (vb) rb = 2 * *vb + 1;
    if (!ra) return rb;
    if (!rb) return ra;
    return std::min(*ra, *rb);
}

QuatElement operator*(const QuatElement& x, const QuatElement& y) {
    const PrimeContext& c = x.alpha_.ctx();
    OkElement p_el(c, c.p(), 0);
    OkElement a = x.alpha_ * y.alpha_ + p_el * (x.beta_ * y.beta_.conj());
    OkElement b = x.alpha_ * y.beta_ + x.beta_ * y.alpha_.conj();
    return QuatElement(a, b);
}

} // namespace ulocal
