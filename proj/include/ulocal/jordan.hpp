#pragma once

#include <map>
#include <vector>

#include "ulocal/herm_matrix.hpp"

namespace ulocal {

// Exponent multiplicities of a diagonalized hermitian matrix
// diag(p^{a_1}, ..., p^{a_n}), recorded as exponent -> count.
class JordanProfile {
public:
    explicit JordanProfile(std::map<int, int> multiplicities);
    static JordanProfile from_exponents(const std::vector<int>& exps);
    // exponent -> count pairs
    static JordanProfile of(std::initializer_list<std::pair<const int, int>> init) {
        return JordanProfile(std::map<int, int>(init));
    }

    const std::map<int, int>& multiplicities() const { return mult_; }
    std::vector<int> exponents() const;  // sorted, with repetition

    int n() const;                 // total rank
    int m() const;                 // count of exponents >= 1
    // Largest odd integer <= m; -1 when m == 0 (the empty-stratum convention).
    int t0() const;
    int n_plus_even() const;       // sum of counts at even exponents >= 2
    int n_plus_odd() const;        // sum of counts at odd exponents >= 3
    int det_valuation() const;     // sum of i * n_i

    JordanProfile shifted(int k) const;

    friend bool operator==(const JordanProfile& x, const JordanProfile& y) {
        return x.mult_ == y.mult_;
    }

private:
    std::map<int, int> mult_;
};

struct JordanDecomposition {
    JordanProfile profile;
    OkMatrix basis;  // columns = new basis; t(basis) * T * conj(basis) = diag(p^{a_i})
};

// Diagonalize a nonsingular hermitian matrix over O.  Pivot rule: minimal
// valuation entry, diagonal preferred; an off-diagonal minimum at (i,j) is
// moved onto the diagonal via e_i <- e_i + u e_j with u in {1, delta} chosen
// so the trace term attains the minimal valuation.  Diagonal units are then
// normalized away through the norm map.
//
// Throws PrecisionError when the determinant vanishes to working precision.
JordanDecomposition jordan_decompose(const HermMatrix& T);

struct GeometricInvariants {
    int t0;
    int dim_red;       // (t0 - 1) / 2
    bool irreducible;  // max(n_plus_even, n_plus_odd) <= 1
    bool is_point;     // m <= 2
    bool parity_ok;    // det_valuation odd
};

GeometricInvariants geometric_invariants(const JordanProfile& profile);

// Data for a cycle at levels (i, j): the inner-product matrix T together
// with the scaling exponent 2i - j.  Negative exponents are carried in the
// offset, never as denominators.
class ScaledCycleDatum {
public:
    ScaledCycleDatum(int i, int j, const HermMatrix& T);

    int i() const { return i_; }
    int j() const { return j_; }
    int scale_exponent() const { return 2 * i_ - j_; }
    const HermMatrix& base_matrix() const { return T_; }

    // p^(2i-j) T has entries in O.
    bool is_integral() const;
    // Empty when non-integral, or when n and j are both odd.
    bool is_empty() const;

    // Profile of the scaled matrix; requires is_integral().
    JordanProfile scaled_profile() const;
    // The scaled matrix itself; requires is_integral().
    HermMatrix scaled_matrix() const;

private:
    int i_, j_;
    HermMatrix T_;
};

ScaledCycleDatum scaled_fundamental(int i, int j, const HermMatrix& T);

// For a profile of shape {0: n-2} + {a: 1, b: 1} with a+b odd, return the
// pair relabeled as (even exponent, odd exponent).
std::pair<int, int> reduce_to_binary(const HermMatrix& T);
std::pair<int, int> reduce_to_binary(const JordanProfile& profile);

} // namespace ulocal
