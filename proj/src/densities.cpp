#include "ulocal/densities.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "ulocal/errors.hpp"

namespace ulocal {

namespace {

long pow_long(long b, int e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// Arithmetic in O/p^k with elements packed as a*pk + b for a + b*delta.
struct Ring {
    long p, eps;
    int k;
    long pk;   // p^k
    long q;    // p^{2k} = |O/p^k|

    Ring(long p_, long eps_, int k_) : p(p_), eps(eps_ % pow_long(p_, k_)), k(k_) {
        pk = pow_long(p, k);
        q = pk * pk;
    }

    long pack(long a, long b) const { return a * pk + b; }
    long a_of(long e) const { return e / pk; }
    long b_of(long e) const { return e % pk; }

    long add(long x, long y) const {
        long a = (a_of(x) + a_of(y)) % pk, b = (b_of(x) + b_of(y)) % pk;
        return pack(a, b);
    }
    long sub(long x, long y) const {
        long a = (a_of(x) - a_of(y) + pk) % pk, b = (b_of(x) - b_of(y) + pk) % pk;
        return pack(a, b);
    }
    long mul(long x, long y) const {
        long xa = a_of(x), xb = b_of(x), ya = a_of(y), yb = b_of(y);
        long a = (xa * ya + eps % pk * xb % pk * yb) % pk;
        long b = (xa * yb + xb * ya) % pk;
        return pack(a, b);
    }
    long conj(long x) const { return pack(a_of(x), (pk - b_of(x)) % pk); }
    long norm(long x) const {  // in Z/p^k
        long a = a_of(x), b = b_of(x);
        return ((a * a - eps % pk * b % pk * b) % pk + pk) % pk;
    }
    bool is_unit(long x) const { return a_of(x) % p != 0 || b_of(x) % p != 0; }
    long scalar(long c) const { return pack(((c % pk) + pk) % pk, 0); }

    // Inverse of a unit (lift-free: conj / norm with Z/p^k inversion).
    long inv(long x) const {
        long n = norm(x);
        long ninv = inv_zpk(n);
        long c = conj(x);
        return pack(a_of(c) * ninv % pk, b_of(c) * ninv % pk);
    }
    long inv_zpk(long n) const {
        long r0 = pk, r1 = ((n % pk) + pk) % pk, t0 = 0, t1 = 1;
        while (r1 != 0) {
            long qq = r0 / r1;
            long r2 = r0 - qq * r1, t2 = t0 - qq * t1;
            r0 = r1; r1 = r2;
            t0 = t1; t1 = t2;
        }
        if (r0 != 1) throw DomainError("Ring::inv_zpk: not a unit");
        return ((t0 % pk) + pk) % pk;
    }
};

using RingMatrix = std::vector<std::vector<long>>;  // packed ring elements

RingMatrix reduce_matrix(const Ring& R, const HermMatrix& M) {
    RingMatrix out(M.n(), std::vector<long>(M.n()));
    for (int i = 0; i < M.n(); ++i)
        for (int j = 0; j < M.n(); ++j) {
            long a = static_cast<long>(M.at(i, j).a() % static_cast<residue_t>(R.pk));
            long b = static_cast<long>(M.at(i, j).b() % static_cast<residue_t>(R.pk));
            out[i][j] = R.pack(a, b);
        }
    return out;
}

bool ring_matrix_hermitian(const Ring& R, const RingMatrix& M) {
    for (size_t i = 0; i < M.size(); ++i)
        for (size_t j = 0; j < M.size(); ++j)
            if (M[j][i] != R.conj(M[i][j])) return false;
    return true;
}

// ---- path 1: diagonal histogram over Z/p^k (n = 1 and Schur leaves) ----

// G_coeffs[s] = #{x in O/p^k : sum_r c_r N(x_r) = s} via convolution.
std::vector<unsigned long long> norm_histogram(const Ring& R, const std::vector<long>& coeffs) {
    std::vector<unsigned long long> acc(R.pk, 0);
    acc[0] = 1;
    for (long c : coeffs) {
        std::vector<unsigned long long> g(R.pk, 0);
        for (long e = 0; e < R.q; ++e) g[R.norm(e) * (c % R.pk) % R.pk] += 1;
        std::vector<unsigned long long> next(R.pk, 0);
        for (long s = 0; s < R.pk; ++s) {
            if (acc[s] == 0) continue;
            for (long t = 0; t < R.pk; ++t) {
                if (g[t] == 0) continue;
                next[(s + t) % R.pk] += acc[s] * g[t];
            }
        }
        acc = std::move(next);
    }
    return acc;
}

// ---- path 2: rank-one row histograms for n = 2 ----

struct RowHistogram {
    // index = ((n1 * q + z) * pk + n2) over (Z/p^k, O/p^k, Z/p^k)
    std::vector<unsigned long long> dense;
    struct Entry {
        long n1, z, n2;
        unsigned long long cnt;
    };
    std::vector<Entry> support;
};

RowHistogram row_histogram(const Ring& R, long coeff) {
    RowHistogram H;
    std::size_t total = static_cast<std::size_t>(R.pk) * R.q * R.pk;
    H.dense.assign(total, 0);
    long c = ((coeff % R.pk) + R.pk) % R.pk;
    for (long v1 = 0; v1 < R.q; ++v1) {
        long n1 = R.norm(v1) * c % R.pk;
        long cv1 = R.conj(v1);
        for (long v2 = 0; v2 < R.q; ++v2) {
            long z = R.mul(R.scalar(c), R.mul(v1, R.conj(v2)));
            long n2 = R.norm(v2) * c % R.pk;
            std::size_t idx = (static_cast<std::size_t>(n1) * R.q + z) * R.pk + n2;
            H.dense[idx] += 1;
        }
        (void)cv1;
    }
    for (long n1 = 0; n1 < R.pk; ++n1)
        for (long z = 0; z < R.q; ++z)
            for (long n2 = 0; n2 < R.pk; ++n2) {
                std::size_t idx = (static_cast<std::size_t>(n1) * R.q + z) * R.pk + n2;
                if (H.dense[idx]) H.support.push_back({n1, z, n2, H.dense[idx]});
            }
    return H;
}

unsigned __int128 count_n2_rows(const Ring& R, const std::vector<long>& coeffs,
                                const RingMatrix& T, int threads);

// ---- engine ----

class CountEngine {
public:
    CountEngine(long p, long eps, int k, const DensityOptions& opt)
        : R_(p, eps, k), opt_(opt) {}

    Integer count(const HermMatrix& S, const HermMatrix& T) {
        RingMatrix Sr = reduce_matrix(R_, S);
        RingMatrix Tr = reduce_matrix(R_, T);
        if (!ring_matrix_hermitian(R_, Sr) || !ring_matrix_hermitian(R_, Tr))
            throw DomainError("brute_count: inputs not hermitian mod p^k");

        std::vector<long> diag_coeffs;
        bool s_diag = diagonal_p_powers(Sr, diag_coeffs);

        unsigned __int128 c;
        if (opt_.force_generic || !s_diag) {
            c = count_generic(Sr, Tr);
        } else {
            bool s_identity = true;
            for (long v : diag_coeffs)
                if (v != 1) s_identity = false;
            c = count_structured(diag_coeffs, s_identity, Tr);
        }
        return u128_to_integer(c);
    }

private:
    Ring R_;
    DensityOptions opt_;

    static Integer u128_to_integer(unsigned __int128 v) {
        Integer hi(static_cast<unsigned long>(v >> 64));
        Integer lo(static_cast<unsigned long>(v));
        return (hi << 64) + lo;
    }

    // True when S is diag(p^{c_r}) mod p^k; fills the diagonal values.
    bool diagonal_p_powers(const RingMatrix& S, std::vector<long>& vals) {
        int m = static_cast<int>(S.size());
        vals.clear();
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                if (i == j) continue;
                if (S[i][j] != 0) return false;
            }
        for (int i = 0; i < m; ++i) {
            long d = S[i][i];
            if (R_.b_of(d) != 0) return false;
            long a = R_.a_of(d);
            // p-power or zero mod p^k
            long v = a;
            while (v % R_.p == 0 && v != 0) v /= R_.p;
            if (v != 1 && a != 0) return false;
            vals.push_back(a);
        }
        return true;
    }

    unsigned __int128 count_structured(std::vector<long> coeffs, bool s_identity,
                                       RingMatrix T) {
        int n = static_cast<int>(T.size());
        int m = static_cast<int>(coeffs.size());

        if (n == 1) {
            double est = static_cast<double>(R_.q) * m + static_cast<double>(R_.pk) * R_.pk * m;
            if (est > opt_.budget) throw BudgetError("brute_count: histogram over budget", est);
            auto H = norm_histogram(R_, coeffs);
            long t = R_.a_of(T[0][0]);
            if (R_.b_of(T[0][0]) != 0) return 0;  // diagonal targets are real
            return H[t];
        }

        if (s_identity) {
            // Pull a unit pivot of T to the front if one exists, then split
            // off the first column (exact orthogonal decomposition against a
            // unit-norm vector) leaving the Schur complement.
            int piv = -1;
            for (int i = 0; i < n; ++i)
                if (R_.is_unit(T[i][i])) { piv = i; break; }
            if (piv < 0) {
                // try to create a unit diagonal from a unit off-diagonal entry
                for (int i = 0; i < n && piv < 0; ++i)
                    for (int j = 0; j < n; ++j) {
                        if (i == j || !R_.is_unit(T[i][j])) continue;
                        apply_transvection(T, i, j);
                        piv = i;
                        break;
                    }
            }
            if (piv >= 0) {
                if (piv != 0) swap_index(T, 0, piv);
                if (m < n) return 0;  // cannot represent with fewer columns... rows
                long t11 = T[0][0];
                if (R_.b_of(t11) != 0) throw CrossCheckError("count: non-real diagonal");
                auto H = norm_histogram(R_, coeffs);
                unsigned long long first = H[R_.a_of(t11)];
                if (n == 1) return first;
                // Schur complement T'_{ij} = T_{ij} - conj(T_{0i}) T_{0j} / T_{00}
                long t11_inv = R_.inv(t11);
                RingMatrix T2(n - 1, std::vector<long>(n - 1));
                for (int i = 1; i < n; ++i)
                    for (int j = 1; j < n; ++j) {
                        long corr = R_.mul(R_.mul(R_.conj(T[0][i]), T[0][j]), t11_inv);
                        T2[i - 1][j - 1] = R_.sub(T[i][j], corr);
                    }
                if (!ring_matrix_hermitian(R_, T2))
                    throw CrossCheckError("count: Schur complement lost hermitian symmetry");
                std::vector<long> sub_coeffs(m - 1, 1);
                unsigned __int128 rest = count_structured(sub_coeffs, true, T2);
                return static_cast<unsigned __int128>(first) * rest;
            }
        }

        if (n == 2 && m <= 3) {
            double est = static_cast<double>(R_.q) * R_.q * m;
            double supp = static_cast<double>(R_.pk) * R_.pk * R_.pk;
            if (m == 3) est += supp * supp;
            if (est > opt_.budget) throw BudgetError("brute_count: row histogram over budget", est);
            return count_n2_rows(R_, coeffs, T, opt_.threads);
        }

        // Fall back to plain column enumeration.
        RingMatrix S(m, std::vector<long>(m, 0));
        for (int i = 0; i < m; ++i) S[i][i] = R_.pack(coeffs[i], 0);
        return count_generic(S, T);
    }

    void swap_index(RingMatrix& T, int i, int j) {
        int n = static_cast<int>(T.size());
        for (int s = 0; s < n; ++s) std::swap(T[i][s], T[j][s]);
        for (int s = 0; s < n; ++s) std::swap(T[s][i], T[s][j]);
    }

    // Basis change e_i <- e_i + u e_j with u in {1, delta}, chosen so the new
    // T_ii is a unit.  Solution sets are in bijection, so counts agree.
    void apply_transvection(RingMatrix& T, int i, int j) {
        long w = T[j][i];
        long u = (R_.a_of(w) % R_.p != 0) ? R_.pack(1, 0) : R_.pack(0, 1);
        int n = static_cast<int>(T.size());
        for (int s = 0; s < n; ++s) T[i][s] = R_.add(T[i][s], R_.mul(u, T[j][s]));
        long uc = R_.conj(u);
        for (int s = 0; s < n; ++s) T[s][i] = R_.add(T[s][i], R_.mul(T[s][j], uc));
        if (!R_.is_unit(T[i][i]))
            throw CrossCheckError("count: transvection failed to create a unit pivot");
    }

    // Plain column-recursive enumeration with leading-minor pruning; shards
    // over first-column residues.
    unsigned __int128 count_generic(const RingMatrix& S, const RingMatrix& T) {
        int m = static_cast<int>(S.size());
        int n = static_cast<int>(T.size());
        double column_space = std::pow(static_cast<double>(R_.q), m);
        double est = 0, level = 1;
        for (int c = 1; c <= n; ++c) {
            est += level * column_space;
            level *= column_space / std::pow(static_cast<double>(R_.pk), 2 * c - 1);
            if (level < 1) level = 1;
        }
        if (est > opt_.budget)
            throw BudgetError("brute_count: generic enumeration over budget", est);

        std::uint64_t space = 1;
        for (int i = 0; i < m; ++i) space *= static_cast<std::uint64_t>(R_.q);

        int threads = std::max(1, opt_.threads);
        std::vector<unsigned __int128> partial(threads, 0);
        std::vector<std::thread> pool;
        std::uint64_t chunk = (space + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            std::uint64_t lo = t * chunk, hi = std::min(space, lo + chunk);
            pool.emplace_back([&, lo, hi, t]() {
                std::vector<std::vector<long>> cols(n, std::vector<long>(m));
                unsigned __int128 acc = 0;
                for (std::uint64_t first = lo; first < hi; ++first) {
                    decode_column(first, cols[0]);
                    if (pair_value(S, cols[0], cols[0]) != T[0][0]) continue;
                    acc += enumerate_from(S, T, cols, 1, space);
                }
                partial[t] = acc;
            });
        }
        for (auto& th : pool) th.join();
        unsigned __int128 total = 0;
        for (int t = 0; t < threads; ++t) total += partial[t];
        return total;
    }

    void decode_column(std::uint64_t idx, std::vector<long>& col) const {
        for (size_t i = 0; i < col.size(); ++i) {
            col[i] = static_cast<long>(idx % static_cast<std::uint64_t>(R_.q));
            idx /= static_cast<std::uint64_t>(R_.q);
        }
    }

    long pair_value(const RingMatrix& S, const std::vector<long>& u,
                    const std::vector<long>& v) const {
        long acc = 0;
        int m = static_cast<int>(u.size());
        for (int r = 0; r < m; ++r) {
            if (u[r] == 0) continue;
            for (int s = 0; s < m; ++s) {
                if (S[r][s] == 0 || v[s] == 0) continue;
                acc = R_.add(acc, R_.mul(u[r], R_.mul(S[r][s], R_.conj(v[s]))));
            }
        }
        return acc;
    }

    unsigned __int128 enumerate_from(const RingMatrix& S, const RingMatrix& T,
                                     std::vector<std::vector<long>>& cols, int c,
                                     std::uint64_t space) {
        int n = static_cast<int>(T.size());
        if (c == n) return 1;
        unsigned __int128 acc = 0;
        for (std::uint64_t idx = 0; idx < space; ++idx) {
            decode_column(idx, cols[c]);
            bool ok = pair_value(S, cols[c], cols[c]) == T[c][c];
            for (int i = 0; i < c && ok; ++i)
                ok = pair_value(S, cols[i], cols[c]) == T[i][c];
            if (!ok) continue;
            acc += enumerate_from(S, T, cols, c + 1, space);
        }
        return acc;
    }
};

unsigned __int128 count_n2_rows(const Ring& R, const std::vector<long>& coeffs,
                                const RingMatrix& T, int threads) {
    int m = static_cast<int>(coeffs.size());
    // Target components.
    if (R.b_of(T[0][0]) != 0 || R.b_of(T[1][1]) != 0) return 0;
    long t1 = R.a_of(T[0][0]), t2 = R.a_of(T[1][1]);
    long tz = T[0][1];

    std::vector<RowHistogram> H;
    H.reserve(m);
    for (int r = 0; r < m; ++r) H.push_back(row_histogram(R, coeffs[r]));

    auto dense_at = [&](const RowHistogram& h, long n1, long z, long n2) -> unsigned long long {
        std::size_t idx = (static_cast<std::size_t>(n1) * R.q + z) * R.pk + n2;
        return h.dense[idx];
    };

    if (m == 1) return dense_at(H[0], t1, tz, t2);

    if (m == 2) {
        unsigned __int128 acc = 0;
        for (const auto& e : H[0].support) {
            long n1 = (t1 - e.n1 + R.pk) % R.pk;
            long n2 = (t2 - e.n2 + R.pk) % R.pk;
            long z = R.sub(tz, e.z);
            acc += static_cast<unsigned __int128>(e.cnt) * dense_at(H[1], n1, z, n2);
        }
        return acc;
    }

    // m == 3: split the outer support across threads; fold in shard order.
    int nt = std::max(1, threads);
    std::vector<unsigned __int128> partial(nt, 0);
    std::vector<std::thread> pool;
    std::size_t outer = H[0].support.size();
    std::size_t chunk = (outer + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
        std::size_t lo = t * chunk, hi = std::min(outer, lo + chunk);
        pool.emplace_back([&, lo, hi, t]() {
            unsigned __int128 acc = 0;
            for (std::size_t i = lo; i < hi; ++i) {
                const auto& e1 = H[0].support[i];
                long r1 = (t1 - e1.n1 + R.pk) % R.pk;
                long r2 = (t2 - e1.n2 + R.pk) % R.pk;
                long rz = R.sub(tz, e1.z);
                for (const auto& e2 : H[1].support) {
                    long n1 = (r1 - e2.n1 + R.pk) % R.pk;
                    long n2 = (r2 - e2.n2 + R.pk) % R.pk;
                    long z = R.sub(rz, e2.z);
                    unsigned long long v = dense_at(H[2], n1, z, n2);
                    if (v) acc += static_cast<unsigned __int128>(e1.cnt) * e2.cnt * v;
                }
            }
            partial[t] = acc;
        });
    }
    for (auto& th : pool) th.join();
    unsigned __int128 total = 0;
    for (int t = 0; t < nt; ++t) total += partial[t];
    return total;
}

} // namespace

int ell(const HermMatrix& T) {
    const PrimeContext& ctx = T.ctx();
    int n = T.n();
    auto dv = T.det_valuation();
    if (!dv) throw DomainError("ell: matrix singular to working precision");

    // adjugate via cofactors
    int worst = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            // minor (j, i)
            std::vector<std::vector<OkElement>> sub;
            for (int r = 0; r < n; ++r) {
                if (r == j) continue;
                std::vector<OkElement> row;
                for (int c = 0; c < n; ++c) {
                    if (c == i) continue;
                    row.push_back(T.at(r, c));
                }
                sub.push_back(std::move(row));
            }
            OkElement cof;
            if (n == 1) {
                cof = OkElement::one(ctx);
            } else {
                HermMatrix tmp(ctx, n - 1);
                for (int r = 0; r < n - 1; ++r)
                    for (int c = 0; c < n - 1; ++c) tmp.set(r, c, sub[r][c]);
                cof = tmp.determinant();
            }
            auto v = cof.valuation();
            int gap = v ? *dv - *v : 0;  // vanishing cofactor imposes nothing
            worst = std::max(worst, gap);
        }
    }
    return std::max(0, worst);
}

Integer brute_count(const DensityRequest& req, const DensityOptions& opt) {
    const PrimeContext& ctx = req.S.ctx();
    if (!ctx.same_as(req.T.ctx()))
        throw ContextMismatchError("brute_count: S and T over different contexts");
    if (req.S.n() < req.T.n())
        throw DomainError("brute_count: need m >= n");
    if (req.k < 1 || req.k > ctx.precision())
        throw DomainError("brute_count: k out of range for context precision");
    CountEngine engine(ctx.p(), ctx.epsilon(), req.k, opt);
    return engine.count(req.S, req.T);
}

Rational density_bruteforce(const DensityRequest& req, const DensityOptions& opt) {
    long p = req.S.ctx().p();
    int m = req.S.n(), n = req.T.n();
    Integer c = brute_count(req, opt);
    Integer denom = 1;
    mpz_ui_pow_ui(denom.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(req.k) * n * (2 * m - n));
    Rational out(c, denom);
    out.canonicalize();
    if (opt.check_stabilization) {
        DensityRequest next = req;
        next.k = req.k + 1;
        Rational again = density_bruteforce(next, DensityOptions{opt.budget, opt.threads,
                                                                 opt.force_generic, false});
        if (again != out)
            throw CrossCheckError("density_bruteforce: value not stable in k "
                                  "(k below ell(T)+1, or a counting bug)");
    }
    return out;
}

RationalPoly shimura_poly(long p, int n) {
    if (n < 1) throw DomainError("shimura_poly: n must be >= 1");
    RationalPoly acc = RationalPoly::constant(1);
    for (int l = 1; l <= n; ++l) {
        Integer pl;
        mpz_ui_pow_ui(pl.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(l));
        // 1 - (-1)^l p^{-l} X
        Rational s = Rational(Integer(1), pl);
        s.canonicalize();
        if (l % 2 == 1) s = -s;
        acc = acc * (RationalPoly::constant(1) - RationalPoly::monomial(s, 1));
    }
    return acc;
}

RationalPoly nagaoka_poly(long p, int a, int b) {
    if (a < 0 || a > b) throw DomainError("nagaoka_poly: need 0 <= a <= b");
    Rational pinv(1, p);
    Rational pinv2 = pinv * pinv;
    RationalPoly head = (RationalPoly::constant(1) + RationalPoly::monomial(pinv, 1)) *
                        (RationalPoly::constant(1) - RationalPoly::monomial(pinv2, 1));
    RationalPoly sum;
    for (int l = 0; l <= a; ++l) {
        RationalPoly inner;
        for (int k = 0; k <= a + b - 2 * l; ++k) {
            Rational c = (k % 2 == 0) ? Rational(1) : Rational(-1);
            inner = inner + RationalPoly::monomial(c, k);
        }
        Integer pl;
        mpz_ui_pow_ui(pl.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(l));
        RationalPoly plxl = RationalPoly::monomial(Rational(pl), l);
        sum = sum + plxl * inner;
    }
    return head * sum;
}

BinaryDerivative alpha_derivative_binary(long p, int a, int b) {
    if (a > b) std::swap(a, b);
    if ((a + b) % 2 == 0) throw DomainError("alpha_derivative_binary: a+b must be odd");
    RationalPoly F = nagaoka_poly(p, a, b);
    if (F.evaluate(1) != 0)
        throw CrossCheckError("alpha_derivative_binary: F(1) != 0 despite odd parity");
    BinaryDerivative out;
    out.alpha_prime = -F.derivative().evaluate(1);
    Rational s(0);
    Integer pl(1);
    for (int l = 0; l <= a; ++l) {
        s += Rational(pl) * Rational(a + b - 2 * l + 1);
        pl *= p;
    }
    out.normalized = s / 2;
    return out;
}

Rational derivative_ratio(long p, int n, int a, int b) {
    if (a > b) std::swap(a, b);
    if (n < 2) throw DomainError("derivative_ratio: n must be >= 2");
    if ((a + b) % 2 == 0) throw DomainError("derivative_ratio: a+b must be odd");

    BinaryDerivative bd = alpha_derivative_binary(p, a, b);

    // alpha_p(1_n, 1_{n-2}) = prod_{l=1}^{n-2} (1 - (-1)^l p^{-l-2})
    Rational alpha_rep(1);
    for (int l = 1; l <= n - 2; ++l) {
        Integer pl;
        mpz_ui_pow_ui(pl.get_mpz_t(), static_cast<unsigned long>(p),
                      static_cast<unsigned long>(l + 2));
        Rational term = Rational(Integer(1), pl);
        term.canonicalize();
        alpha_rep *= (l % 2 == 0) ? Rational(1 - term) : Rational(1 + term);
    }
    Rational alpha_ss = shimura_poly(p, n).evaluate(1);
    Rational route_density = alpha_rep * bd.alpha_prime / alpha_ss;
    const Rational& route_formula = bd.normalized;
    if (route_density != route_formula)
        throw CrossCheckError("derivative_ratio: density route disagrees with closed formula");
    return route_formula;
}

Rational closed_density_unimodular(long p, int m, int n) {
    if (m < n || n < 1) throw DomainError("closed_density_unimodular: need m >= n >= 1");
    Integer pmn;
    mpz_ui_pow_ui(pmn.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(m - n));
    Rational x = Rational(Integer(1), pmn);
    x.canonicalize();
    if ((m - n) % 2 == 1) x = -x;
    return shimura_poly(p, n).evaluate(x);
}

Rational closed_density_binary(long p, int m, int a, int b) {
    if (m < 2) throw DomainError("closed_density_binary: need m >= 2");
    if (a > b) std::swap(a, b);
    Integer pr;
    mpz_ui_pow_ui(pr.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(m - 2));
    Rational x = Rational(Integer(1), pr);
    x.canonicalize();
    if ((m - 2) % 2 == 1) x = -x;
    return nagaoka_poly(p, a, b).evaluate(x);
}

} // namespace ulocal
