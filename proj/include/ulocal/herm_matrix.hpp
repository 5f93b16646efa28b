#pragma once

#include <vector>

#include "ulocal/ok_element.hpp"

namespace ulocal {

// Square matrix over O with entries[j][i] = conj(entries[i][j]); diagonal
// entries lie in Z_p (delta-part zero).  The associated pairing is
// <u, v> = t(u) T conj(v), linear in the first slot.
class HermMatrix {
public:
    HermMatrix(const PrimeContext& ctx, int n);

    // Validates hermitian symmetry on construction.
    static HermMatrix from_entries(const PrimeContext& ctx,
                                   const std::vector<std::vector<OkElement>>& entries);
    // diag(p^{a_1}, ..., p^{a_n}); exponents must be < precision.
    static HermMatrix diagonal_powers(const PrimeContext& ctx, const std::vector<int>& exps);
    static HermMatrix identity(const PrimeContext& ctx, int n);

    const PrimeContext& ctx() const { return *ctx_; }
    int n() const { return n_; }
    const OkElement& at(int i, int j) const { return e_[i * n_ + j]; }

    // Mutation is intended for construction only; callers keep values
    // hermitian via set_sym.
    void set(int i, int j, const OkElement& v) { e_[i * n_ + j] = v; }
    void set_sym(int i, int j, const OkElement& v);

    bool is_hermitian() const;

    // Valuation of det(T); nullopt when det vanishes mod p^N.
    std::optional<int> det_valuation() const;

    // Matrix of cofactor-expansion determinant (exact mod p^N).
    OkElement determinant() const;

    // Congruence transform tU * T * conj(U).
    HermMatrix congruence(const std::vector<std::vector<OkElement>>& U) const;

    friend bool operator==(const HermMatrix& x, const HermMatrix& y);

private:
    const PrimeContext* ctx_;
    int n_;
    std::vector<OkElement> e_;
};

// Generic matrix helpers over O (used for change-of-basis bookkeeping).
using OkMatrix = std::vector<std::vector<OkElement>>;

OkMatrix ok_identity_matrix(const PrimeContext& ctx, int n);
OkMatrix ok_mat_mul(const OkMatrix& A, const OkMatrix& B);
bool ok_mat_invertible(const OkMatrix& A);

} // namespace ulocal
