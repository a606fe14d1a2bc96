#include <doctest.h>

#include <random>

#include "dmom/arith.hpp"
#include "dmom/errors.hpp"

using namespace dmom;

TEST_CASE("factorize small and composite moduli") {
    CHECK(factorize(1).factors.empty());
    CHECK(factorize(12).factors == std::vector<PrimePower>{{2, 2}, {3, 1}});
    CHECK(factorize(1517).factors == std::vector<PrimePower>{{37, 1}, {41, 1}});
    CHECK(factorize(999983ull * 1000003ull).factors == std::vector<PrimePower>{{999983, 1}, {1000003, 1}});
    CHECK_THROWS_AS(factorize(0), DomainError);
}

TEST_CASE("factorization reconstructs n with increasing primes") {
    for (u64 n = 1; n <= 5000; ++n) {
        const auto f = factorize(n);
        u64 prod = 1, last = 0;
        for (const auto& [p, e] : f.factors) {
            CHECK(p > last);
            CHECK(e >= 1);
            last = p;
            for (int i = 0; i < e; ++i) prod *= p;
        }
        CHECK(prod == n);
    }
}

TEST_CASE("mobius, phi, divisor count") {
    CHECK(mobius(1) == 1);
    CHECK(mobius(6) == 1);
    CHECK(mobius(12) == 0);
    CHECK(mobius(30) == -1);
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(9) == 6);
    CHECK(euler_phi(1517) == 1440);
    CHECK(divisor_count(1) == 1);
    CHECK(divisor_count(12) == 6);
    CHECK(divisor_count(1517) == 4);
    CHECK(divisors(12) == std::vector<u64>{1, 2, 3, 4, 6, 12});
}

TEST_CASE("multiplicativity on random coprime pairs") {
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<u64> dist(1, 1000000);
    int tested = 0;
    while (tested < 300) {
        const u64 m = dist(rng), n = dist(rng);
        if (gcd(m, n) != 1 || m * n > 1000000000000ull) continue;
        ++tested;
        CHECK(mobius(m * n) == mobius(m) * mobius(n));
        CHECK(euler_phi(m * n) == euler_phi(m) * euler_phi(n));
        CHECK(divisor_count(m * n) == divisor_count(m) * divisor_count(n));
    }
}

TEST_CASE("sum of phi over divisors is n") {
    for (u64 n = 1; n <= 10000; ++n) {
        u64 s = 0;
        for (u64 d : divisors(n)) s += euler_phi(d);
        REQUIRE(s == n);
    }
}

TEST_CASE("primitive character count") {
    CHECK(phi_star(1) == 1);
    CHECK(phi_star(2) == 0);
    CHECK(phi_star(5) == 3);
    CHECK(phi_star(9) == 4);
    CHECK(phi_star_via_c_sum(5) == 3);
    CHECK(phi_star_via_c_sum(9) == 4);
    CHECK(phi_star_via_c_sum(45) == Rational(phi_star(45)));
    for (u64 q = 1; q <= 2000; ++q) {
        i64 direct = 0;
        for (u64 d : divisors(q)) direct += static_cast<i64>(euler_phi(d)) * mobius(q / d);
        REQUIRE(static_cast<i64>(phi_star(q)) == direct);
        REQUIRE(phi_star_via_c_sum(q) == Rational(direct));
    }
}

TEST_CASE("unitary splittings") {
    using P = std::pair<u64, u64>;
    CHECK(coprime_splittings(12) == std::vector<P>{{12, 1}, {4, 3}, {3, 4}, {1, 12}});
    CHECK(coprime_splittings(7) == std::vector<P>{{7, 1}, {1, 7}});
    CHECK(coprime_splittings(1517).size() == 4);
    CHECK(coprime_splittings(1) == std::vector<P>{{1, 1}});
}

TEST_CASE("modular helpers") {
    CHECK(mod_inverse(3, 7) == 5);
    CHECK(residue(-1, 5) == 4);
    CHECK(powmod(2, 10, 1000) == 24);
    CHECK_THROWS_AS(mod_inverse(2, 4), DomainError);
    CHECK(primes_between(10, 30) == std::vector<u64>{11, 13, 17, 19, 23, 29});
    const auto dt = divisor_count_table(100);
    for (u64 n = 1; n <= 100; ++n) CHECK(dt[n] == divisor_count(n));
}
