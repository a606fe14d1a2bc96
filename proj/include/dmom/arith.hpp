#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace dmom {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using Rational = boost::multiprecision::cpp_rational;

struct PrimePower {
    u64 prime;
    int exponent;
    bool operator==(const PrimePower&) const = default;
};

struct Factorization {
    u64 n = 1;
    std::vector<PrimePower> factors;

    std::vector<u64> primes() const;
};

Factorization factorize(u64 n);

int mobius(u64 n);
u64 euler_phi(u64 n);
u64 euler_phi(const Factorization& f);

// Number of primitive characters mod q.
u64 phi_star(u64 q);

// phi(q)^2/q * sum over unitary c | q of mu(c)/phi(c)^2, evaluated exactly.
Rational phi_star_via_c_sum(u64 q);

u64 divisor_count(u64 n);
std::vector<u64> divisors(u64 n);
std::vector<u64> divisors(const Factorization& f);

// (c, d) with cd = q and gcd(c, d) = 1, ordered by increasing d.
std::vector<std::pair<u64, u64>> coprime_splittings(u64 q);

bool is_prime(u64 n);
std::vector<u64> primes_between(u64 lo, u64 hi);

u64 gcd(u64 a, u64 b);
u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 e, u64 m);
u64 mod_inverse(u64 a, u64 m);
// Representative of n in [0, m), for any signed n.
u64 residue(i64 n, u64 m);

// d(n) for n = 0..n_max (entry 0 is 0).
std::vector<std::uint32_t> divisor_count_table(u64 n_max);

}  // namespace dmom
