#include "ulocal/rational_poly.hpp"

#include <sstream>
#include <stdexcept>

namespace ulocal {

void RationalPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

RationalPoly RationalPoly::monomial(const Rational& c, int d) {
    if (c == 0) return RationalPoly();
    std::vector<Rational> v(d + 1, Rational(0));
    v[d] = c;
    return RationalPoly(std::move(v));
}

Rational RationalPoly::evaluate(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RationalPoly RationalPoly::derivative() const {
    if (c_.size() <= 1) return RationalPoly();
    std::vector<Rational> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return RationalPoly(std::move(d));
}

RationalPoly operator+(const RationalPoly& f, const RationalPoly& g) {
    std::vector<Rational> r(std::max(f.c_.size(), g.c_.size()), Rational(0));
    for (size_t i = 0; i < f.c_.size(); ++i) r[i] += f.c_[i];
    for (size_t i = 0; i < g.c_.size(); ++i) r[i] += g.c_[i];
    return RationalPoly(std::move(r));
}

RationalPoly operator-(const RationalPoly& f, const RationalPoly& g) {
    std::vector<Rational> r(std::max(f.c_.size(), g.c_.size()), Rational(0));
    for (size_t i = 0; i < f.c_.size(); ++i) r[i] += f.c_[i];
    for (size_t i = 0; i < g.c_.size(); ++i) r[i] -= g.c_[i];
    return RationalPoly(std::move(r));
}

RationalPoly operator*(const RationalPoly& f, const RationalPoly& g) {
    if (f.is_zero() || g.is_zero()) return RationalPoly();
    std::vector<Rational> r(f.c_.size() + g.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < f.c_.size(); ++i)
        for (size_t j = 0; j < g.c_.size(); ++j) r[i + j] += f.c_[i] * g.c_[j];
    return RationalPoly(std::move(r));
}

std::string RationalPoly::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        os << c_[i].get_str();
        if (i >= 1) os << "*X";
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return os.str();
}

int rational_p_valuation(const Rational& q, long p) {
    if (q == 0) throw std::invalid_argument("rational_p_valuation: zero input");
    Integer num = q.get_num(), den = q.get_den();
    int v = 0;
    while (mpz_divisible_ui_p(num.get_mpz_t(), p)) {
        mpz_divexact_ui(num.get_mpz_t(), num.get_mpz_t(), p);
        ++v;
    }
    while (mpz_divisible_ui_p(den.get_mpz_t(), p)) {
        mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), p);
        --v;
    }
    return v;
}

} // namespace ulocal
