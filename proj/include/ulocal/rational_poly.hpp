#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace ulocal {

using Rational = mpq_class;
using Integer = mpz_class;

// Polynomial in one variable with exact rational coefficients.
// coefficient(i) is the degree-i coefficient; trailing zeros are stripped.
class RationalPoly {
public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    static RationalPoly constant(const Rational& v) { return RationalPoly({v}); }
    // c * X^d
    static RationalPoly monomial(const Rational& c, int d);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero poly
    bool is_zero() const { return c_.empty(); }
    Rational coefficient(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rational(0);
    }

    Rational evaluate(const Rational& x) const;
    RationalPoly derivative() const;

    friend RationalPoly operator+(const RationalPoly& f, const RationalPoly& g);
    friend RationalPoly operator-(const RationalPoly& f, const RationalPoly& g);
    friend RationalPoly operator*(const RationalPoly& f, const RationalPoly& g);
    friend bool operator==(const RationalPoly& f, const RationalPoly& g) { return f.c_ == g.c_; }
    friend bool operator!=(const RationalPoly& f, const RationalPoly& g) { return !(f == g); }

    std::string str() const;

private:
    std::vector<Rational> c_;
    void trim();
};

// p-adic valuation of a nonzero rational; throws on zero input.
int rational_p_valuation(const Rational& q, long p);

} // namespace ulocal
