#include "dmom/arith.hpp"

#include <algorithm>
#include <numeric>

#include "dmom/errors.hpp"

namespace dmom {

std::vector<u64> Factorization::primes() const {
    std::vector<u64> out;
    out.reserve(factors.size());
    for (const auto& f : factors) out.push_back(f.prime);
    return out;
}

Factorization factorize(u64 n) {
    if (n == 0) throw DomainError("factorize: n must be positive");
    Factorization f;
    f.n = n;
    u64 m = n;
    auto strip = [&](u64 p) {
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e > 0) f.factors.push_back({p, e});
    };
    strip(2);
    strip(3);
    for (u64 p = 5; p <= m / p; p += 6) {
        strip(p);
        strip(p + 2);
    }
    if (m > 1) f.factors.push_back({m, 1});
    return f;
}

int mobius(u64 n) {
    const auto f = factorize(n);
    for (const auto& pe : f.factors)
        if (pe.exponent > 1) return 0;
    return (f.factors.size() % 2 == 0) ? 1 : -1;
}

u64 euler_phi(const Factorization& f) {
    u64 r = 1;
    for (const auto& [p, e] : f.factors) {
        r *= p - 1;
        for (int i = 1; i < e; ++i) r *= p;
    }
    return r;
}

u64 euler_phi(u64 n) { return euler_phi(factorize(n)); }

// Multiplicative: at p^1 it is p-2, at p^e (e >= 2) it is p^e - 2p^(e-1) + p^(e-2).
u64 phi_star(u64 q) {
    const auto f = factorize(q);
    u64 r = 1;
    for (const auto& [p, e] : f.factors) {
        if (e == 1) {
            r *= p - 2;
        } else {
            u64 pe2 = 1;
            for (int i = 0; i < e - 2; ++i) pe2 *= p;
            r *= pe2 * (p - 1) * (p - 1);
        }
    }
    return r;
}

Rational phi_star_via_c_sum(u64 q) {
    const u64 ph = euler_phi(q);
    Rational sum = 0;
    for (const auto& [c, d] : coprime_splittings(q)) {
        const int mu = mobius(c);
        if (mu == 0) continue;
        const u64 pc = euler_phi(c);
        sum += Rational(mu, boost::multiprecision::cpp_int(pc) * pc);
    }
    return Rational(boost::multiprecision::cpp_int(ph) * ph, q) * sum;
}

std::vector<u64> divisors(const Factorization& f) {
    std::vector<u64> ds{1};
    for (const auto& [p, e] : f.factors) {
        const std::size_t base = ds.size();
        u64 pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

std::vector<u64> divisors(u64 n) { return divisors(factorize(n)); }

u64 divisor_count(u64 n) {
    u64 r = 1;
    for (const auto& pe : factorize(n).factors) r *= static_cast<u64>(pe.exponent + 1);
    return r;
}

std::vector<std::pair<u64, u64>> coprime_splittings(u64 q) {
    std::vector<std::pair<u64, u64>> out;
    for (u64 d : divisors(q))
        if (gcd(d, q / d) == 1) out.emplace_back(q / d, d);
    return out;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (u64 p = 5; p <= n / p; p += 6)
        if (n % p == 0 || n % (p + 2) == 0) return false;
    return true;
}

std::vector<u64> primes_between(u64 lo, u64 hi) {
    std::vector<u64> out;
    for (u64 n = lo; n <= hi; ++n)
        if (is_prime(n)) out.push_back(n);
    return out;
}

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 powmod(u64 base, u64 e, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (e > 0) {
        if (e & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

u64 mod_inverse(u64 a, u64 m) {
    if (m == 1) return 0;
    i64 t = 0, nt = 1;
    i64 r = static_cast<i64>(m), nr = static_cast<i64>(a % m);
    while (nr != 0) {
        const i64 qt = r / nr;
        t = std::exchange(nt, t - qt * nt);
        r = std::exchange(nr, r - qt * nr);
    }
    if (r != 1) throw DomainError("mod_inverse: not invertible");
    return residue(t, m);
}

u64 residue(i64 n, u64 m) {
    const i64 mm = static_cast<i64>(m);
    i64 r = n % mm;
    if (r < 0) r += mm;
    return static_cast<u64>(r);
}

std::vector<std::uint32_t> divisor_count_table(u64 n_max) {
    std::vector<std::uint32_t> d(n_max + 1, 0);
    for (u64 i = 1; i <= n_max; ++i)
        for (u64 j = i; j <= n_max; j += i) ++d[j];
    return d;
}

}  // namespace dmom
