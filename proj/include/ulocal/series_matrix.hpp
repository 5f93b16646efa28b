#pragma once

#include <array>
#include <optional>

#include "ulocal/rational_poly.hpp"

namespace ulocal {

// Polynomial in t truncated below degree t_max, with exact rational
// coefficients whose denominators are p-powers.  Dropped mass at degrees
// >= t_max is tracked so that no integrality verdict can silently depend
// on truncated terms.
class TruncatedPoly {
public:
    TruncatedPoly(long p, int t_max) : p_(p), t_max_(t_max), c_(t_max, Rational(0)) {}

    long p() const { return p_; }
    int t_max() const { return t_max_; }
    bool truncated_tail() const { return truncated_; }
    const Rational& coeff(int d) const { return c_[d]; }
    void set_coeff(int d, const Rational& v);

    // Substitute t -> t^p, coefficients fixed; degrees >= t_max are dropped
    // and flagged.
    TruncatedPoly frobenius() const;

    // Least degree with a coefficient of negative p-valuation, if any below
    // t_max.  Lower-degree output coefficients never depend on dropped mass
    // (all operations only move degrees upward), so a returned value is
    // always sound even when the tail flag is set.
    std::optional<int> min_nonintegral_degree() const;

    friend TruncatedPoly operator+(const TruncatedPoly& f, const TruncatedPoly& g);
    friend TruncatedPoly operator*(const TruncatedPoly& f, const TruncatedPoly& g);
    friend bool operator==(const TruncatedPoly& f, const TruncatedPoly& g) {
        return f.c_ == g.c_;  // tail flags are bookkeeping, not value
    }

private:
    long p_;
    int t_max_;
    std::vector<Rational> c_;
    bool truncated_ = false;
};

// 2x2 matrix of truncated polynomials.  Entries in row-major order.
class TruncatedSeriesMatrix {
public:
    TruncatedSeriesMatrix(long p, int t_max)
        : e_{TruncatedPoly(p, t_max), TruncatedPoly(p, t_max),
             TruncatedPoly(p, t_max), TruncatedPoly(p, t_max)} {}

    const TruncatedPoly& at(int i, int j) const { return e_[i * 2 + j]; }
    TruncatedPoly& at(int i, int j) { return e_[i * 2 + j]; }

    TruncatedSeriesMatrix frobenius() const;
    std::optional<int> min_nonintegral_degree() const;
    bool truncated_tail() const;

    friend TruncatedSeriesMatrix operator*(const TruncatedSeriesMatrix& A,
                                           const TruncatedSeriesMatrix& B);
    friend bool operator==(const TruncatedSeriesMatrix& A, const TruncatedSeriesMatrix& B) {
        for (int i = 0; i < 4; ++i)
            if (!(A.e_[i] == B.e_[i])) return false;
        return true;
    }

private:
    std::array<TruncatedPoly, 4> e_;
};

} // namespace ulocal
