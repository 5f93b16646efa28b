#include "ulocal/herm_matrix.hpp"

#include <string>
#include <utility>

namespace ulocal {

namespace {

OkElement det_rec(const PrimeContext& ctx, const std::vector<std::vector<OkElement>>& M) {
    int k = static_cast<int>(M.size());
    if (k == 1) return M[0][0];
    OkElement acc = OkElement::zero(ctx);
    for (int c = 0; c < k; ++c) {
        std::vector<std::vector<OkElement>> S;
        S.reserve(k - 1);
        for (int i = 1; i < k; ++i) {
            std::vector<OkElement> row;
            row.reserve(k - 1);
            for (int j = 0; j < k; ++j)
                if (j != c) row.push_back(M[i][j]);
            S.push_back(std::move(row));
        }
        OkElement term = M[0][c] * det_rec(ctx, S);
        acc = (c % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

} // namespace

HermMatrix::HermMatrix(const PrimeContext& ctx, int n) : ctx_(&ctx), n_(n) {
    if (n < 1) throw DomainError("HermMatrix: size must be positive");
    e_.assign(static_cast<size_t>(n) * n, OkElement::zero(ctx));
}

HermMatrix HermMatrix::from_entries(const PrimeContext& ctx,
                                    const std::vector<std::vector<OkElement>>& entries) {
    int n = static_cast<int>(entries.size());
    HermMatrix m(ctx, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(entries[i].size()) != n)
            throw DomainError("HermMatrix: ragged entry rows");
        for (int j = 0; j < n; ++j) m.set(i, j, entries[i][j]);
    }
    if (!m.is_hermitian())
        throw DomainError("HermMatrix: entries are not hermitian-symmetric");
    return m;
}

HermMatrix HermMatrix::diagonal_powers(const PrimeContext& ctx, const std::vector<int>& exps) {
    HermMatrix m(ctx, static_cast<int>(exps.size()));
    for (int i = 0; i < m.n(); ++i) {
        if (exps[i] < 0 || exps[i] >= ctx.precision())
            throw DomainError("HermMatrix::diagonal_powers: exponent " +
                              std::to_string(exps[i]) + " out of range for precision " +
                              std::to_string(ctx.precision()));
        m.set(i, i, OkElement::one(ctx).shift_up(exps[i]));
    }
    return m;
}

HermMatrix HermMatrix::identity(const PrimeContext& ctx, int n) {
    return diagonal_powers(ctx, std::vector<int>(n, 0));
}

void HermMatrix::set_sym(int i, int j, const OkElement& v) {
    set(i, j, v);
    if (i != j) set(j, i, v.conj());
}

bool HermMatrix::is_hermitian() const {
    for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j)
            if (at(j, i) != at(i, j).conj()) return false;
    return true;
}

OkElement HermMatrix::determinant() const {
    // Cofactor expansion; fine at the sizes used here (n <= 6).
    std::vector<std::vector<OkElement>> M(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) M[i].push_back(at(i, j));
    return det_rec(*ctx_, M);
}

std::optional<int> HermMatrix::det_valuation() const {
    return determinant().valuation();
}

HermMatrix HermMatrix::congruence(const std::vector<std::vector<OkElement>>& U) const {
    if (static_cast<int>(U.size()) != n_)
        throw DomainError("HermMatrix::congruence: dimension mismatch");
    HermMatrix out(*ctx_, n_);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            OkElement acc = OkElement::zero(*ctx_);
            for (int r = 0; r < n_; ++r)
                for (int s = 0; s < n_; ++s)
                    acc = acc + U[r][i] * at(r, s) * U[s][j].conj();
            out.set(i, j, acc);
        }
    }
    return out;
}

bool operator==(const HermMatrix& x, const HermMatrix& y) {
    if (x.n_ != y.n_) return false;
    for (size_t i = 0; i < x.e_.size(); ++i)
        if (x.e_[i] != y.e_[i]) return false;
    return true;
}

OkMatrix ok_identity_matrix(const PrimeContext& ctx, int n) {
    OkMatrix I(n, std::vector<OkElement>(n, OkElement::zero(ctx)));
    for (int i = 0; i < n; ++i) I[i][i] = OkElement::one(ctx);
    return I;
}

OkMatrix ok_mat_mul(const OkMatrix& A, const OkMatrix& B) {
    int n = static_cast<int>(A.size());
    int m = static_cast<int>(B[0].size());
    int k = static_cast<int>(B.size());
    const PrimeContext& ctx = A[0][0].ctx();
    OkMatrix C(n, std::vector<OkElement>(m, OkElement::zero(ctx)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            OkElement acc = OkElement::zero(ctx);
            for (int t = 0; t < k; ++t) acc = acc + A[i][t] * B[t][j];
            C[i][j] = acc;
        }
    return C;
}

bool ok_mat_invertible(const OkMatrix& A) {
    // Invertible over O iff the mod-p reduction is invertible.
    int n = static_cast<int>(A.size());
    OkMatrix M = A;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (M[r][c].is_unit()) { piv = r; break; }
        if (piv < 0) return false;
        std::swap(M[piv], M[c]);
        OkElement inv = M[c][c].inverse();
        for (int r = c + 1; r < n; ++r) {
            OkElement f = M[r][c] * inv;
            for (int j = c; j < n; ++j) M[r][j] = M[r][j] - f * M[c][j];
        }
    }
    return true;
}

} // namespace ulocal
