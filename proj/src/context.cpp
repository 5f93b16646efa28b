#include "ulocal/context.hpp"

#include <limits>
#include <string>

namespace ulocal {

namespace {

unsigned __int128 u128(residue_t x) { return static_cast<unsigned __int128>(x); }

} // namespace

PrimeContext::PrimeContext(long p, int precision, long epsilon)
    : p_(p), epsilon_(epsilon), precision_(precision) {
    if (p < 3 || !is_prime(p))
        throw DomainError("PrimeContext: p must be an odd prime, got " + std::to_string(p));
    if (precision < 1)
        throw DomainError("PrimeContext: precision must be >= 1");
    if (epsilon_ == 0)
        epsilon_ = least_nonresidue(p);
    if (!is_nonresidue(epsilon_, p))
        throw DomainError("PrimeContext: epsilon = " + std::to_string(epsilon_) +
                          " is a quadratic residue mod " + std::to_string(p));

    // Guard the modulus so that x*y never overflows unsigned __int128.
    residue_t m = 1;
    const residue_t cap = std::numeric_limits<residue_t>::max() / 2;
    for (int i = 0; i < precision; ++i) {
        if (m > cap / static_cast<residue_t>(p))
            throw DomainError("PrimeContext: p^precision too large for residue arithmetic");
        m *= static_cast<residue_t>(p);
    }
    modulus_ = m;
}

residue_t PrimeContext::pow_p(int k) const {
    if (k < 0 || k > precision_)
        throw DomainError("PrimeContext::pow_p: exponent out of range");
    residue_t r = 1;
    for (int i = 0; i < k; ++i) r *= static_cast<residue_t>(p_);
    return r;
}

residue_t PrimeContext::add(residue_t x, residue_t y) const {
    residue_t s = x + y;               // x, y < 2^63, no overflow
    return s >= modulus_ ? s - modulus_ : s;
}

residue_t PrimeContext::sub(residue_t x, residue_t y) const {
    return x >= y ? x - y : x + (modulus_ - y);
}

residue_t PrimeContext::mul(residue_t x, residue_t y) const {
    return static_cast<residue_t>((u128(x) * u128(y)) % u128(modulus_));
}

residue_t PrimeContext::neg(residue_t x) const {
    return x == 0 ? 0 : modulus_ - x;
}

residue_t PrimeContext::inv(residue_t x) const {
    if (x % static_cast<residue_t>(p_) == 0)
        throw DomainError("PrimeContext::inv: residue is not a unit");
    // Extended Euclid on (x, p^N); gcd is 1 for units.
    long long r0 = static_cast<long long>(modulus_), r1 = static_cast<long long>(x % modulus_);
    long long t0 = 0, t1 = 1;
    while (r1 != 0) {
        long long q = r0 / r1;
        long long r2 = r0 - q * r1;
        long long t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    long long t = t0 % static_cast<long long>(modulus_);
    if (t < 0) t += static_cast<long long>(modulus_);
    return static_cast<residue_t>(t);
}

residue_t PrimeContext::reduce(long long x) const {
    long long m = static_cast<long long>(modulus_);
    long long r = x % m;
    if (r < 0) r += m;
    return static_cast<residue_t>(r);
}

std::optional<int> PrimeContext::valuation(residue_t x) const {
    if (x == 0) return std::nullopt;
    int v = 0;
    while (x % static_cast<residue_t>(p_) == 0) {
        x /= static_cast<residue_t>(p_);
        ++v;
    }
    return v;
}

bool PrimeContext::is_prime(long n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (long d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

bool PrimeContext::is_nonresidue(long e, long p) {
    long r = e % p;
    if (r < 0) r += p;
    if (r == 0) return false;
    // Euler criterion: e^((p-1)/2) == -1 mod p.
    long long acc = 1, base = r, exp = (p - 1) / 2;
    while (exp > 0) {
        if (exp & 1) acc = (acc * base) % p;
        base = (base * base) % p;
        exp >>= 1;
    }
    return acc == p - 1;
}

long PrimeContext::least_nonresidue(long p) {
    for (long e = 2; e < p; ++e)
        if (is_nonresidue(e, p)) return e;
    throw DomainError("least_nonresidue: none found (p not an odd prime?)");
}

} // namespace ulocal
