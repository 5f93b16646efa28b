#include "ulocal/jordan.hpp"

#include <algorithm>
#include <string>

namespace ulocal {

JordanProfile::JordanProfile(std::map<int, int> multiplicities) : mult_(std::move(multiplicities)) {
    for (auto it = mult_.begin(); it != mult_.end();) {
        if (it->second < 0) throw DomainError("JordanProfile: negative multiplicity");
        it = (it->second == 0) ? mult_.erase(it) : std::next(it);
    }
}

JordanProfile JordanProfile::from_exponents(const std::vector<int>& exps) {
    std::map<int, int> m;
    for (int e : exps) ++m[e];
    return JordanProfile(std::move(m));
}

std::vector<int> JordanProfile::exponents() const {
    std::vector<int> out;
    for (const auto& [e, c] : mult_)
        for (int i = 0; i < c; ++i) out.push_back(e);
    return out;
}

int JordanProfile::n() const {
    int s = 0;
    for (const auto& [e, c] : mult_) s += c;
    return s;
}

int JordanProfile::m() const {
    int s = 0;
    for (const auto& [e, c] : mult_)
        if (e >= 1) s += c;
    return s;
}

int JordanProfile::t0() const {
    int mm = m();
    if (mm <= 0) return -1;
    return (mm % 2 == 1) ? mm : mm - 1;
}

int JordanProfile::n_plus_even() const {
    int s = 0;
    for (const auto& [e, c] : mult_)
        if (e >= 2 && e % 2 == 0) s += c;
    return s;
}

int JordanProfile::n_plus_odd() const {
    int s = 0;
    for (const auto& [e, c] : mult_)
        if (e >= 3 && e % 2 == 1) s += c;
    return s;
}

int JordanProfile::det_valuation() const {
    int s = 0;
    for (const auto& [e, c] : mult_) s += e * c;
    return s;
}

JordanProfile JordanProfile::shifted(int k) const {
    std::map<int, int> m;
    for (const auto& [e, c] : mult_) m[e + k] = c;
    return JordanProfile(std::move(m));
}

namespace {

// Basis change e_i <- e_i + u e_j applied to the working Gram matrix W and
// the accumulated basis matrix U (columns are basis vectors).
void add_multiple(HermMatrix& W, OkMatrix& U, int i, int j, const OkElement& u) {
    int n = W.n();
    for (int s = 0; s < n; ++s) W.set(i, s, W.at(i, s) + u * W.at(j, s));
    OkElement uc = u.conj();
    for (int s = 0; s < n; ++s) W.set(s, i, W.at(s, i) + W.at(s, j) * uc);
    for (int r = 0; r < n; ++r) U[r][i] = U[r][i] + U[r][j] * u;
}

void swap_basis(HermMatrix& W, OkMatrix& U, int i, int j) {
    if (i == j) return;
    int n = W.n();
    for (int s = 0; s < n; ++s) {
        OkElement t = W.at(i, s);
        W.set(i, s, W.at(j, s));
        W.set(j, s, t);
    }
    for (int s = 0; s < n; ++s) {
        OkElement t = W.at(s, i);
        W.set(s, i, W.at(s, j));
        W.set(s, j, t);
    }
    for (int r = 0; r < n; ++r) std::swap(U[r][i], U[r][j]);
}

void scale_basis(HermMatrix& W, OkMatrix& U, int i, const OkElement& z) {
    int n = W.n();
    for (int s = 0; s < n; ++s) W.set(i, s, z * W.at(i, s));
    OkElement zc = z.conj();
    for (int s = 0; s < n; ++s) W.set(s, i, W.at(s, i) * zc);
    for (int r = 0; r < n; ++r) U[r][i] = U[r][i] * z;
}

} // namespace

JordanDecomposition jordan_decompose(const HermMatrix& T) {
    const PrimeContext& ctx = T.ctx();
    const int n = T.n();
    HermMatrix W = T;
    OkMatrix U = ok_identity_matrix(ctx, n);
    std::vector<int> exps;
    exps.reserve(n);

    for (int k = 0; k < n; ++k) {
        // Minimal valuation over the trailing block.
        int vmin = ctx.precision() + 1;
        for (int i = k; i < n; ++i)
            for (int j = k; j < n; ++j) {
                auto v = W.at(i, j).valuation();
                if (v && *v < vmin) vmin = *v;
            }
        if (vmin > ctx.precision())
            throw PrecisionError("jordan_decompose: block vanishes mod p^N "
                                 "(singular input or precision exhausted)");

        // Prefer a diagonal entry attaining the minimum.
        int bi = -1, bj = -1;
        for (int i = k; i < n && bi < 0; ++i) {
            auto v = W.at(i, i).valuation();
            if (v && *v == vmin) bi = bj = i;
        }
        for (int i = k; i < n && bi < 0; ++i)
            for (int j = k; j < n; ++j) {
                auto v = W.at(i, j).valuation();
                if (v && *v == vmin) {
                    bi = i;
                    bj = j;
                    break;
                }
            }

        if (bi < 0)
            throw PrecisionError("jordan_decompose: lost track of minimal entry");
        if (bi != bj) {
            // Move the off-diagonal minimum onto the diagonal.
            int i = std::min(bi, bj), j = std::max(bi, bj);
            OkElement w = W.at(j, i);  // trace term of e_i <- e_i + u e_j is Tr(u w)
            auto va = ctx.valuation(w.a());
            OkElement u = (va && *va == vmin) ? OkElement::one(ctx) : OkElement::delta(ctx);
            add_multiple(W, U, i, j, u);
            bi = bj = i;
            auto vd = W.at(i, i).valuation();
            if (!vd || *vd != vmin)
                throw PrecisionError("jordan_decompose: trace pivot failed to attain "
                                     "minimal valuation");
        }
        swap_basis(W, U, k, bi);

        // Clear row and column k below the pivot.
        OkElement pivot_unit = W.at(k, k).shift_down(vmin);  // unit in Z_p
        OkElement pivot_inv = pivot_unit.inverse();
        for (int r = k + 1; r < n; ++r) {
            OkElement num = W.at(r, k);
            if (num.is_zero()) continue;
            auto vr = num.valuation();
            if (vr && *vr < vmin)
                throw PrecisionError("jordan_decompose: pivot not minimal");
            OkElement f = num.shift_down(vmin) * pivot_inv;
            add_multiple(W, U, r, k, f.neg());
        }

        // Normalize the diagonal unit away: find z with norm(z) = unit^{-1}.
        residue_t target = pivot_unit.inverse().a();
        OkElement z = solve_norm(ctx, target);
        scale_basis(W, U, k, z);
        exps.push_back(vmin);
    }

    return JordanDecomposition{JordanProfile::from_exponents(exps), std::move(U)};
}

GeometricInvariants geometric_invariants(const JordanProfile& profile) {
    GeometricInvariants g;
    g.t0 = profile.t0();
    g.dim_red = (g.t0 - 1) / 2;
    if (g.t0 < 0) g.dim_red = -1;
    g.irreducible = std::max(profile.n_plus_even(), profile.n_plus_odd()) <= 1;
    g.is_point = profile.m() <= 2;
    g.parity_ok = profile.det_valuation() % 2 == 1;
    return g;
}

ScaledCycleDatum::ScaledCycleDatum(int i, int j, const HermMatrix& T) : i_(i), j_(j), T_(T) {
    if (!T.det_valuation())
        throw DomainError("ScaledCycleDatum: matrix is singular to working precision");
}

bool ScaledCycleDatum::is_integral() const {
    int off = scale_exponent();
    if (off >= 0) return true;
    for (int i = 0; i < T_.n(); ++i)
        for (int j = 0; j < T_.n(); ++j) {
            if (T_.at(i, j).is_zero()) continue;
            auto v = T_.at(i, j).valuation();
            if (v && *v + off < 0) return false;
        }
    return true;
}

bool ScaledCycleDatum::is_empty() const {
    if (!is_integral()) return true;
    if (T_.n() % 2 == 1 && ((j_ % 2) + 2) % 2 == 1) return true;
    return false;
}

JordanProfile ScaledCycleDatum::scaled_profile() const {
    if (!is_integral())
        throw DomainError("ScaledCycleDatum: scaled matrix is not integral");
    return jordan_decompose(T_).profile.shifted(scale_exponent());
}

HermMatrix ScaledCycleDatum::scaled_matrix() const {
    if (!is_integral())
        throw DomainError("ScaledCycleDatum: scaled matrix is not integral");
    int off = scale_exponent();
    HermMatrix out = T_;
    for (int i = 0; i < T_.n(); ++i)
        for (int j = 0; j < T_.n(); ++j)
            out.set(i, j, T_.at(i, j).shift_down(-off));  // shift_down(-off) = shift_up(off)
    return out;
}

ScaledCycleDatum scaled_fundamental(int i, int j, const HermMatrix& T) {
    return ScaledCycleDatum(i, j, T);
}

std::pair<int, int> reduce_to_binary(const JordanProfile& profile) {
    std::vector<int> exps = profile.exponents();
    int n = static_cast<int>(exps.size());
    if (n < 2) throw DomainError("reduce_to_binary: rank must be at least 2");
    for (int i = 0; i < n - 2; ++i)
        if (exps[i] != 0)
            throw DomainError("reduce_to_binary: profile is not of shape {0^(n-2), a, b}");
    int a = exps[n - 2], b = exps[n - 1];
    if ((a + b) % 2 == 0)
        throw DomainError("reduce_to_binary: a + b must be odd");
    if (a % 2 == 0) return {a, b};
    return {b, a};
}

std::pair<int, int> reduce_to_binary(const HermMatrix& T) {
    return reduce_to_binary(jordan_decompose(T).profile);
}

} // namespace ulocal
