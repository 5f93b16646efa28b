#include "ulocal/strata.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "ulocal/errors.hpp"

namespace ulocal {

namespace {

constexpr int kMaxRank = 8;

long pow_long(long b, int e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

} // namespace

FiniteHermModule::FiniteHermModule(long p, std::vector<int> exponents, std::uint64_t element_budget)
    : p_(p), exps_(std::move(exponents)) {
    std::sort(exps_.begin(), exps_.end());
    for (int a : exps_)
        if (a < 1) throw DomainError("FiniteHermModule: exponents must be >= 1");
    if (static_cast<int>(exps_.size()) > kMaxRank)
        throw DomainError("FiniteHermModule: rank too large");

    amax_ = exps_.empty() ? 1 : exps_.back();
    pamax_ = pow_long(p_, amax_);
    eps_ = PrimeContext::least_nonresidue(p_);
    total_len_ = 0;
    std::uint64_t sz = 1;
    for (int a : exps_) {
        total_len_ += a;
        long pa = pow_long(p_, a);
        mod_.push_back(pa);
        radix_.push_back(sz);
        sz *= static_cast<std::uint64_t>(pa) * static_cast<std::uint64_t>(pa);
        if (sz > element_budget)
            throw BudgetError("FiniteHermModule: module size exceeds budget",
                              static_cast<double>(sz));
    }
    size_ = static_cast<std::uint32_t>(sz);
}

void FiniteHermModule::decode(std::uint32_t x, long* u, long* v) const {
    std::uint64_t rest = x;
    for (size_t i = 0; i < exps_.size(); ++i) {
        std::uint64_t m2 = static_cast<std::uint64_t>(mod_[i]) * mod_[i];
        std::uint64_t coord = rest % m2;
        rest /= m2;
        u[i] = static_cast<long>(coord / mod_[i]);
        v[i] = static_cast<long>(coord % mod_[i]);
    }
}

std::uint32_t FiniteHermModule::encode(const long* u, const long* v) const {
    std::uint64_t x = 0;
    for (size_t i = exps_.size(); i-- > 0;) {
        std::uint64_t m2 = static_cast<std::uint64_t>(mod_[i]) * mod_[i];
        x = x * m2 + static_cast<std::uint64_t>(u[i]) * mod_[i] + static_cast<std::uint64_t>(v[i]);
    }
    return static_cast<std::uint32_t>(x);
}

std::uint32_t FiniteHermModule::add(std::uint32_t x, std::uint32_t y) const {
    long ux[kMaxRank], vx[kMaxRank], uy[kMaxRank], vy[kMaxRank];
    decode(x, ux, vx);
    decode(y, uy, vy);
    for (size_t i = 0; i < exps_.size(); ++i) {
        ux[i] = (ux[i] + uy[i]) % mod_[i];
        vx[i] = (vx[i] + vy[i]) % mod_[i];
    }
    return encode(ux, vx);
}

std::uint32_t FiniteHermModule::negate(std::uint32_t x) const {
    long u[kMaxRank], v[kMaxRank];
    decode(x, u, v);
    for (size_t i = 0; i < exps_.size(); ++i) {
        u[i] = (mod_[i] - u[i]) % mod_[i];
        v[i] = (mod_[i] - v[i]) % mod_[i];
    }
    return encode(u, v);
}

std::uint32_t FiniteHermModule::mul_p(std::uint32_t x) const {
    long u[kMaxRank], v[kMaxRank];
    decode(x, u, v);
    for (size_t i = 0; i < exps_.size(); ++i) {
        u[i] = (u[i] * p_) % mod_[i];
        v[i] = (v[i] * p_) % mod_[i];
    }
    return encode(u, v);
}

std::uint32_t FiniteHermModule::scalar_mul(long u, long v, std::uint32_t x) const {
    long xu[kMaxRank], xv[kMaxRank];
    decode(x, xu, xv);
    long eps = eps_;
    for (size_t i = 0; i < exps_.size(); ++i) {
        long m = mod_[i];
        long cu = ((u % m) + m) % m, cv = ((v % m) + m) % m;
        long nu = (cu * xu[i] + ((eps % m) * cv % m) * xv[i]) % m;
        long nv = (cu * xv[i] + cv * xu[i]) % m;
        xu[i] = nu;
        xv[i] = nv;
    }
    return encode(xu, xv);
}

std::pair<long, long> FiniteHermModule::pairing_scaled(std::uint32_t x, std::uint32_t y) const {
    long xu[kMaxRank], xv[kMaxRank], yu[kMaxRank], yv[kMaxRank];
    decode(x, xu, xv);
    decode(y, yu, yv);
    long eps = eps_;
    long A = 0, B = 0;
    for (size_t i = 0; i < exps_.size(); ++i) {
        long m = mod_[i];
        // x_i * conj(y_i) mod p^{a_i}
        long ar = (xu[i] * yu[i] % m - (eps % m) * (xv[i] * yv[i] % m) % m + m * m) % m;
        long br = (xv[i] * yu[i] % m - xu[i] * yv[i] % m + m * m) % m;
        long scale = pamax_ / m;  // p^(amax - a_i)
        A = (A + ar % m * scale) % pamax_;
        B = (B + br % m * scale) % pamax_;
    }
    return {A, B};
}

bool FiniteHermModule::pairing_is_zero(std::uint32_t x, std::uint32_t y) const {
    auto [A, B] = pairing_scaled(x, y);
    return A == 0 && B == 0;
}

bool FiniteHermModule::pairing_is_shallow(std::uint32_t x, std::uint32_t y) const {
    auto [A, B] = pairing_scaled(x, y);
    long m = pamax_ / p_;
    return A % m == 0 && B % m == 0;
}

FiniteHermModule build_D(const JordanProfile& profile, long p, int max_total_exponent) {
    int total = 0;
    std::vector<int> exps;
    for (const auto& [e, c] : profile.multiplicities()) {
        if (e < 0) throw DomainError("build_D: negative exponent (matrix not integral)");
        if (e == 0) continue;
        for (int i = 0; i < c; ++i) {
            exps.push_back(e);
            total += e;
        }
    }
    if (total > max_total_exponent)
        throw BudgetError("build_D: total exponent exceeds enumeration budget",
                          std::pow(static_cast<double>(p), 2.0 * total));
    return FiniteHermModule(p, std::move(exps));
}

int Submodule::length_over(const FiniteHermModule& D) const {
    // |B| = (p^2)^length
    std::uint64_t n = elements.size();
    int len = 0;
    std::uint64_t q = static_cast<std::uint64_t>(D.p()) * D.p();
    while (n > 1) {
        n /= q;
        ++len;
    }
    return len;
}

bool Submodule::contains(std::uint32_t x) const {
    return std::binary_search(elements.begin(), elements.end(), x);
}

bool Submodule::contains_all(const std::vector<std::uint32_t>& xs) const {
    for (auto x : xs)
        if (!contains(x)) return false;
    return true;
}

Submodule span(const FiniteHermModule& D, const std::vector<std::uint32_t>& gens) {
    std::set<std::uint32_t> elems = {0};
    long pa = 1;
    for (int i = 0; i < D.max_exponent(); ++i) pa *= D.p();
    for (auto g : gens) {
        // orbit of g under scalars, then sumset with the current span
        std::set<std::uint32_t> orbit;
        for (long u = 0; u < pa; ++u)
            for (long v = 0; v < pa; ++v) orbit.insert(D.scalar_mul(u, v, g));
        std::set<std::uint32_t> next;
        for (auto e : elems)
            for (auto o : orbit) next.insert(D.add(e, o));
        elems = std::move(next);
    }
    Submodule B;
    B.elements.assign(elems.begin(), elems.end());
    B.generators = gens;
    return B;
}

Submodule extend(const FiniteHermModule& D, const Submodule& base, std::uint32_t g) {
    long pa = 1;
    for (int i = 0; i < D.max_exponent(); ++i) pa *= D.p();
    std::set<std::uint32_t> orbit;
    for (long u = 0; u < pa; ++u)
        for (long v = 0; v < pa; ++v) orbit.insert(D.scalar_mul(u, v, g));
    std::set<std::uint32_t> elems;
    for (auto e : base.elements)
        for (auto o : orbit) elems.insert(D.add(e, o));
    Submodule B;
    B.elements.assign(elems.begin(), elems.end());
    B.generators = base.generators;
    B.generators.push_back(g);
    return B;
}

Submodule orthogonal(const FiniteHermModule& D, const Submodule& B) {
    Submodule out;
    const auto& gens = B.generators.empty() ? B.elements : B.generators;
    for (std::uint32_t x = 0; x < D.size(); ++x) {
        bool ok = true;
        for (auto g : gens)
            if (!D.pairing_is_zero(x, g)) {
                ok = false;
                break;
            }
        if (ok) out.elements.push_back(x);
    }
    out.generators = out.elements;  // elements always generate
    return out;
}

std::vector<GrElement> enumerate_grD(const FiniteHermModule& D) {
    // Work on the perp side: B in GrD corresponds to C = B^perp with
    // h(C, C) = 0 and p C^perp <= C; then B = C^perp and
    // type(B) = length(D) - 2 length(C).
    std::vector<std::uint32_t> isotropic_vectors;
    for (std::uint32_t x = 0; x < D.size(); ++x)
        if (D.pairing_is_zero(x, x)) isotropic_vectors.push_back(x);

    std::set<std::vector<std::uint32_t>> seen;
    std::vector<Submodule> frontier;
    Submodule zero = span(D, {});
    seen.insert(zero.elements);
    frontier.push_back(zero);
    std::vector<Submodule> all_isotropic = {zero};

    int max_len = D.length() / 2;
    for (int level = 0; level < max_len; ++level) {
        std::vector<Submodule> next;
        for (const auto& C : frontier) {
            for (auto g : isotropic_vectors) {
                if (C.contains(g)) continue;
                // isotropy of C + O g needs h(g, g) = 0 (have) and h(g, C) = 0
                bool compat = true;
                for (auto c : C.generators)
                    if (!D.pairing_is_zero(g, c)) {
                        compat = false;
                        break;
                    }
                if (!compat) continue;
                Submodule C2 = extend(D, C, g);
                if (C2.length_over(D) > max_len) continue;
                if (seen.insert(C2.elements).second) {
                    next.push_back(C2);
                    all_isotropic.push_back(C2);
                }
            }
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }

    std::vector<GrElement> out;
    std::set<std::vector<std::uint32_t>> emitted;
    for (const auto& C : all_isotropic) {
        Submodule B = orthogonal(D, C);
        // B^perp = (C^perp)^perp = C by nondegeneracy, so B^perp <= B holds;
        // the remaining membership condition is p B <= C.
        bool ok = true;
        for (auto x : B.elements)
            if (!C.contains(D.mul_p(x))) {
                ok = false;
                break;
            }
        if (!ok) continue;
        if (!emitted.insert(B.elements).second) continue;
        GrElement ge;
        ge.type = D.length() - 2 * C.length_over(D);
        ge.B = std::move(B);
        out.push_back(std::move(ge));
    }
    std::sort(out.begin(), out.end(),
              [](const GrElement& a, const GrElement& b) { return a.B.elements < b.B.elements; });
    return out;
}

StratumReport verify_stratum_theorems(const JordanProfile& profile, long p,
                                      int max_total_exponent) {
    StratumReport rep;
    rep.m = profile.m();
    rep.t0 = profile.t0();
    rep.det_valuation = profile.det_valuation();
    GeometricInvariants gi = geometric_invariants(profile);
    rep.irreducible_predicted = gi.irreducible;

    FiniteHermModule D = build_D(profile, p, max_total_exponent);
    if (D.length() == 0) {
        rep.expected_max_type = 0;
    } else {
        int t = rep.m;
        if ((t - rep.det_valuation) % 2 != 0) --t;
        rep.expected_max_type = t;
    }

    auto gr = enumerate_grD(D);
    if (gr.empty())
        throw CrossCheckError("verify_stratum_theorems: GrD came out empty");
    rep.observed_max_type = -1;
    for (const auto& g : gr) rep.observed_max_type = std::max(rep.observed_max_type, g.type);
    for (const auto& g : gr)
        if (g.type == rep.observed_max_type) ++rep.maximal_count;
    rep.irreducible_observed = rep.maximal_count == 1;

    rep.max_type_ok = rep.observed_max_type == rep.expected_max_type;
    rep.uniqueness_ok = rep.irreducible_observed == rep.irreducible_predicted;
    rep.pass = rep.max_type_ok && rep.uniqueness_ok;
    return rep;
}

std::string grD_poset_dot(const FiniteHermModule& D, const std::vector<GrElement>& gr) {
    std::ostringstream os;
    os << "digraph grD {\n  rankdir=BT;\n";
    for (size_t i = 0; i < gr.size(); ++i)
        os << "  n" << i << " [label=\"len " << gr[i].B.length_over(D) << ", type "
           << gr[i].type << "\"];\n";
    // Hasse edges: covering inclusions only.
    for (size_t i = 0; i < gr.size(); ++i) {
        for (size_t j = 0; j < gr.size(); ++j) {
            if (i == j) continue;
            if (gr[i].B.elements.size() >= gr[j].B.elements.size()) continue;
            if (!gr[j].B.contains_all(gr[i].B.elements)) continue;
            bool covering = true;
            for (size_t k = 0; k < gr.size() && covering; ++k) {
                if (k == i || k == j) continue;
                if (gr[k].B.elements.size() > gr[i].B.elements.size() &&
                    gr[k].B.elements.size() < gr[j].B.elements.size() &&
                    gr[k].B.contains_all(gr[i].B.elements) &&
                    gr[j].B.contains_all(gr[k].B.elements))
                    covering = false;
            }
            if (covering) os << "  n" << i << " -> n" << j << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

} // namespace ulocal
