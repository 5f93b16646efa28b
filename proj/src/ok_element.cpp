#include "ulocal/ok_element.hpp"

#include <sstream>

namespace ulocal {

const PrimeContext& OkElement::ctx() const {
    if (!ctx_) throw DomainError("OkElement: default-constructed element has no context");
    return *ctx_;
}

const PrimeContext& OkElement::common_ctx(const OkElement& x, const OkElement& y) {
    const PrimeContext& cx = x.ctx();
    const PrimeContext& cy = y.ctx();
    if (!cx.same_as(cy))
        throw ContextMismatchError("OkElement: operands built over different contexts");
    return cx;
}

bool OkElement::is_unit() const {
    const PrimeContext& c = ctx();
    return a_ % static_cast<residue_t>(c.p()) != 0 || b_ % static_cast<residue_t>(c.p()) != 0;
}

OkElement OkElement::conj() const {
    const PrimeContext& c = ctx();
    return from_residues(c, a_, c.neg(b_));
}

OkElement OkElement::neg() const {
    const PrimeContext& c = ctx();
    return from_residues(c, c.neg(a_), c.neg(b_));
}

residue_t OkElement::trace() const {
    const PrimeContext& c = ctx();
    return c.add(a_, a_);
}

residue_t OkElement::norm() const {
    const PrimeContext& c = ctx();
    residue_t eps = c.reduce(c.epsilon());
    return c.sub(c.mul(a_, a_), c.mul(eps, c.mul(b_, b_)));
}

std::optional<int> OkElement::valuation() const {
    const PrimeContext& c = ctx();
    std::optional<int> va = c.valuation(a_);
    std::optional<int> vb = c.valuation(b_);
    if (!va) return vb;
    if (!vb) return va;
    return std::min(*va, *vb);
}

OkElement OkElement::inverse() const {
    const PrimeContext& c = ctx();
    if (!is_unit()) throw DomainError("OkElement::inverse: not a unit");
    // x^{-1} = conj(x) / norm(x)
    residue_t ninv = c.inv(norm());
    OkElement cj = conj();
    return from_residues(c, c.mul(cj.a_, ninv), c.mul(cj.b_, ninv));
}

OkElement OkElement::shift_down(int k) const {
    const PrimeContext& c = ctx();
    if (k == 0) return *this;
    if (k < 0) return shift_up(-k);
    residue_t pk = c.pow_p(k);
    if (a_ % pk != 0 || b_ % pk != 0)
        throw DomainError("OkElement::shift_down: valuation below shift amount");
    return from_residues(c, a_ / pk, b_ / pk);
}

OkElement OkElement::shift_up(int k) const {
    const PrimeContext& c = ctx();
    if (k == 0) return *this;
    if (k < 0) return shift_down(-k);
    residue_t pk = (k >= c.precision()) ? 0 : c.pow_p(k);
    if (pk == 0) return zero(c);
    return from_residues(c, c.mul(a_, pk), c.mul(b_, pk));
}

OkElement operator+(const OkElement& x, const OkElement& y) {
    const PrimeContext& c = OkElement::common_ctx(x, y);
    return OkElement::from_residues(c, c.add(x.a_, y.a_), c.add(x.b_, y.b_));
}

OkElement operator-(const OkElement& x, const OkElement& y) {
    const PrimeContext& c = OkElement::common_ctx(x, y);
    return OkElement::from_residues(c, c.sub(x.a_, y.a_), c.sub(x.b_, y.b_));
}

OkElement operator*(const OkElement& x, const OkElement& y) {
    const PrimeContext& c = OkElement::common_ctx(x, y);
    residue_t eps = c.reduce(c.epsilon());
    // (a1 + b1 d)(a2 + b2 d) = (a1 a2 + eps b1 b2) + (a1 b2 + a2 b1) d
    residue_t ra = c.add(c.mul(x.a_, y.a_), c.mul(eps, c.mul(x.b_, y.b_)));
    residue_t rb = c.add(c.mul(x.a_, y.b_), c.mul(x.b_, y.a_));
    return OkElement::from_residues(c, ra, rb);
}

bool operator==(const OkElement& x, const OkElement& y) {
    OkElement::common_ctx(x, y);
    return x.a_ == y.a_ && x.b_ == y.b_;
}

std::string OkElement::str() const {
    std::ostringstream os;
    os << a_;
    if (b_ != 0) os << "+" << b_ << "d";
    return os.str();
}

OkElement solve_norm(const PrimeContext& ctx, residue_t c) {
    const long p = ctx.p();
    if (c % static_cast<residue_t>(p) == 0)
        throw DomainError("solve_norm: target must be a unit");

    // Mod-p solution of x^2 - eps y^2 = c by direct search.
    long eps = ctx.epsilon() % p;
    if (eps < 0) eps += p;
    long cp = static_cast<long>(c % static_cast<residue_t>(p));
    long x0 = -1, y0 = -1;
    for (long x = 0; x < p && x0 < 0; ++x) {
        for (long y = 0; y < p; ++y) {
            if (((x * x - eps * y * y) % p + p) % p == cp) {
                x0 = x; y0 = y;
                break;
            }
        }
    }
    if (x0 < 0) throw DomainError("solve_norm: no mod-p solution (impossible for odd p)");

    // Newton lifting: refine the coordinate whose partial derivative is a
    // unit.  f(x,y) = x^2 - eps y^2 - c; one of 2x, -2eps y is a unit since
    // c is a unit and p is odd.
    OkElement z(ctx, x0, y0);
    residue_t two_inv = ctx.inv(ctx.reduce(2));
    for (int iter = 0; iter < ctx.precision() + 1; ++iter) {
        residue_t f = ctx.sub(z.norm(), c % ctx.modulus());
        if (f == 0) break;
        if (z.a() % static_cast<residue_t>(p) != 0) {
            // x <- x - f / (2x)
            residue_t corr = ctx.mul(f, ctx.mul(two_inv, ctx.inv(z.a())));
            z = OkElement::from_residues(ctx, ctx.sub(z.a(), corr), z.b());
        } else {
            // y <- y + f / (2 eps y)
            residue_t den = ctx.mul(ctx.reduce(2 * ctx.epsilon()), z.b());
            residue_t corr = ctx.mul(f, ctx.inv(den));
            z = OkElement::from_residues(ctx, z.a(), ctx.add(z.b(), corr));
        }
    }
    if (ctx.sub(z.norm(), c % ctx.modulus()) != 0)
        throw PrecisionError("solve_norm: Newton lifting failed to converge");
    return z;
}

} // namespace ulocal
