#include "ulocal/lifting.hpp"

#include <algorithm>

#include "ulocal/errors.hpp"

namespace ulocal {

namespace {

Integer pow_int(long p, int e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

// (p^e - 1) / (p - 1)
Rational geom_sum(long p, int e) {
    if (e <= 0) return Rational(0);
    Rational r(pow_int(p, e) - 1, Integer(p - 1));
    r.canonicalize();
    return r;
}

Rational half_of(const Integer& n) {
    Rational r(n, Integer(2));
    r.canonicalize();
    return r;
}

std::optional<int> min_opt(std::optional<int> x, std::optional<int> y) {
    if (!x) return y;
    if (!y) return x;
    return std::min(*x, *y);
}

// Largest v(alpha - a) over a in p^m (Z_p + p^r O), given the split
// alpha = x + y delta; vx, vy are the component valuations (nullopt = zero).
std::optional<int> coset_distance(std::optional<int> vx, std::optional<int> vy, int m, int r) {
    bool x_cancellable = !vx || *vx >= m;
    if (!x_cancellable) {
        // nothing raises the valuation past v(alpha)
        return min_opt(vx, vy);
    }
    if (!vy || *vy >= m + r) return std::nullopt;  // alpha lies in the coset
    return vy;
}

} // namespace

std::optional<int> QuatValuationDatum::v_d() const {
    std::optional<int> va, vb;
    if (ord_alpha) va = 2 * *ord_alpha;
    if (ord_beta) vb = 2 * *ord_beta + 1;
    return min_opt(va, vb);
}

Integer ramification_index(long p, int s) {
    if (s < 0) throw DomainError("ramification_index: s must be >= 0");
    if (s == 0) return Integer(1);
    return pow_int(p, s - 1) * (p + 1);
}

std::optional<int> coset_valuation_l(const QuatValuationDatum& psi, int r, int s) {
    if (r < 0 || r > s) throw DomainError("coset_valuation_l: need 0 <= r <= s");
    std::optional<int> vd = psi.v_d();
    if (!vd) return std::nullopt;  // psi = 0 lies in every coset

    if (r == 0) {
        if (s % 2 == 0) {
            // coset is p^{s/2} O in the alpha component
            bool cancel_alpha = !psi.ord_alpha || *psi.ord_alpha >= s / 2;
            if (!cancel_alpha) return vd;
            if (!psi.ord_beta) return std::nullopt;
            return 2 * *psi.ord_beta + 1;
        }
        // coset is p^{(s-1)/2} O * Pi in the beta component
        bool cancel_beta = !psi.ord_beta || *psi.ord_beta >= (s - 1) / 2;
        if (!cancel_beta) return vd;
        if (!psi.ord_alpha) return std::nullopt;
        return 2 * *psi.ord_alpha;
    }

    // r > 0: determined by valuations alone only below the coset.
    if (*vd < s - r) return vd;
    throw DomainError("coset_valuation_l: datum does not determine l for r > 0; "
                      "use the full-element overload");
}

std::optional<int> coset_valuation_l(const QuatElement& psi, int r, int s) {
    if (r < 0 || r > s) throw DomainError("coset_valuation_l: need 0 <= r <= s");
    const PrimeContext& ctx = psi.alpha().ctx();

    // Component splits: alpha = xa + ya delta, beta = xb + yb delta.
    auto vp = [&](residue_t v) { return ctx.valuation(v); };
    std::optional<int> xa = vp(psi.alpha().a()), ya = vp(psi.alpha().b());
    std::optional<int> xb = vp(psi.beta().a()), yb = vp(psi.beta().b());

    // Precision guard: a vanishing residue is treated as exactly zero, which
    // is only sound when the working precision clears every threshold used.
    int needed = s + 2;
    if (ctx.precision() < needed)
        throw PrecisionError("coset_valuation_l: precision too small for level s");

    std::optional<int> result;
    if ((s - r) % 2 == 0) {
        int m = (s - r) / 2;
        std::optional<int> da = coset_distance(xa, ya, m, r);
        std::optional<int> la, lb;
        if (da) la = 2 * *da;
        if (auto vb = min_opt(xb, yb)) lb = 2 * *vb + 1;
        result = min_opt(la, lb);
    } else {
        int m = (s - r - 1) / 2;
        // The beta coefficient set is p^m (Z_p + p^r O) up to conjugation,
        // which fixes component valuations.
        std::optional<int> db = coset_distance(xb, yb, m, r);
        std::optional<int> la, lb;
        if (auto va = min_opt(xa, ya)) la = 2 * *va;
        if (db) lb = 2 * *db + 1;
        result = min_opt(la, lb);
    }
    return result;
}

Rational lifting_bound_n0s(long p, int l, int s) {
    if (l < 0 || s < 0) throw DomainError("lifting_bound_n0s: negative argument");
    if (l < s) return geom_sum(p, l + 1);
    return geom_sum(p, s) + half_of(Integer(l + 1 - s) * ramification_index(p, s));
}

namespace {

// n_{r,r} in units of e/e_r, r >= 1.
Rational nrr_normalized(long p, int l, int r) {
    if (l <= 2 * r && l % 2 == 0)
        return 2 * geom_sum(p, l / 2 + 1) - Rational(pow_int(p, l / 2));
    if (l <= 2 * r && l % 2 == 1)
        return 2 * geom_sum(p, (l + 1) / 2);
    return 2 * geom_sum(p, r) + half_of(Integer(l + 1 - 2 * r) * ramification_index(p, r));
}

} // namespace

Rational lifting_bound_nrs(long p, int l, int r, int s) {
    if (l < 0 || r < 0 || r > s) throw DomainError("lifting_bound_nrs: bad arguments");
    if (r == 0) return lifting_bound_n0s(p, l, s);
    if (s == r) return nrr_normalized(p, l, r);
    if (l >= s - r)
        return geom_sum(p, s - r) + Rational(pow_int(p, s - r)) * nrr_normalized(p, l - (s - r), r);
    // l < s - r: psi factors as Pi^l * unit; the unit contributes e_r at
    // level s - l.
    return geom_sum(p, l) + Rational(pow_int(p, l) * ramification_index(p, r));
}

MuMatrixData mu_matrix_l(long p, int a, int b, int s) {
    if (a % 2 != 0 || b % 2 != 1)
        throw DomainError("mu_matrix_l: need a even and b odd");
    if (s < 0) throw DomainError("mu_matrix_l: s must be >= 0");
    (void)p;
    MuMatrixData out;
    // Every entry combines Pi^a (alpha component, valuation a/2) with
    // Pi^b (beta component, valuation (b-1)/2), twisted by units.
    QuatValuationDatum d{a / 2, (b - 1) / 2};
    for (int i = 0; i < 4; ++i) {
        out.entries[i] = d;
        out.l[i] = coset_valuation_l(d, 0, s);
    }
    out.l_min = std::nullopt;
    for (int i = 0; i < 4; ++i) out.l_min = min_opt(out.l_min, out.l[i]);
    return out;
}

Rational stratum_intersection(long p, int a, int b, int s) {
    if (a % 2 != 0 || b % 2 != 1)
        throw DomainError("stratum_intersection: need a even and b odd");
    if (s < 0) throw DomainError("stratum_intersection: s must be >= 0");
    int other;
    if (s % 2 == 0) {
        if (s > a) throw DomainError("stratum_intersection: even s must satisfy s <= a");
        other = b;
    } else {
        if (s > b) throw DomainError("stratum_intersection: odd s must satisfy s <= b");
        other = a;
    }

    Rational closed = (other < s)
                          ? geom_sum(p, other + 1)
                          : geom_sum(p, s) +
                                half_of(Integer(other + 1 - s) * ramification_index(p, s));

    // Route through the entrywise lifting bounds.
    MuMatrixData mu = mu_matrix_l(p, a, b, s);
    if (!mu.l_min)
        throw CrossCheckError("stratum_intersection: all matrix entries lie in the coset "
                              "(impossible for a nonsingular pair)");
    Rational via_min = lifting_bound_n0s(p, *mu.l_min, s);
    if (via_min != closed)
        throw CrossCheckError("stratum_intersection: closed form disagrees with the "
                              "min-entry lifting bound");
    return closed;
}

Integer stratum_pair_intersection(long p, int s, int t) {
    if (s == t) throw DomainError("stratum_pair_intersection: s and t must differ");
    if (s < 0 || t < 0) throw DomainError("stratum_pair_intersection: negative level");
    return ramification_index(p, std::min(s, t));
}

IntersectionLedger total_degree(long p, int a, int b) {
    if ((a + b) % 2 == 0) throw DomainError("total_degree: a + b must be odd");
    if (a < 0 || b < 0) throw DomainError("total_degree: negative exponent");
    IntersectionLedger led;
    led.a_even = (a % 2 == 0) ? a : b;
    led.b_odd = (a % 2 == 0) ? b : a;

    Rational even_total(0), odd_total(0);
    for (int s = 0; s <= led.a_even; s += 2) {
        Rational v = stratum_intersection(p, led.a_even, led.b_odd, s);
        led.per_stratum[s] = v;
        even_total += v;
        if (led.b_odd < s) led.extrapolated_branch = true;
    }
    for (int s = 1; s <= led.b_odd; s += 2) {
        Rational v = stratum_intersection(p, led.a_even, led.b_odd, s);
        led.per_stratum[s] = v;
        odd_total += v;
    }
    if (even_total != odd_total)
        throw CrossCheckError("total_degree: even and odd expansions disagree");
    led.total = even_total;

    int lo = std::min(a, b);
    Rational formula(0);
    Integer pl(1);
    for (int l = 0; l <= lo; ++l) {
        formula += half_of(pl * (a + b + 1 - 2 * l));
        pl *= p;
    }
    led.formula_total = formula;
    if (led.total != led.formula_total)
        throw CrossCheckError("total_degree: ledger total disagrees with the closed formula");
    if (led.total.get_den() != 1)
        throw CrossCheckError("total_degree: total is not an integer");
    return led;
}

Integer special_fiber_sums(long p, int a, bool odd_parity) {
    if (a < 0) throw DomainError("special_fiber_sums: a must be >= 0");
    if ((a % 2 == 1) != odd_parity)
        throw DomainError("special_fiber_sums: a does not have the requested parity");
    Integer sum(0);
    for (int s = odd_parity ? 1 : 0; s <= a; s += 2) sum += ramification_index(p, s);
    Integer expected = (pow_int(p, a + 1) - 1) / (p - 1);
    if (sum != expected)
        throw CrossCheckError("special_fiber_sums: sum disagrees with (p^{a+1}-1)/(p-1)");
    return sum;
}

Integer gl2_correction_sums(long p, int c, bool ramified) {
    if (c < 0) throw DomainError("gl2_correction_sums: c must be >= 0");
    Integer sum(0);
    if (ramified) {
        for (int i = 0; i <= c; ++i) sum += pow_int(p, i);
        return 2 * sum;
    }
    for (int i = 0; i < c; ++i) sum += pow_int(p, i);
    return 2 * sum + pow_int(p, c);
}

} // namespace ulocal
