#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dmom/arith.hpp"
#include "dmom/verify.hpp"

namespace dmom {

// Comma-separated items: "n", "a..b", "primes:a..b", "semiprimes-balanced:a..b".  Sorted, unique.
std::vector<u64> parse_q_spec(const std::string& spec);
// q = p1 p2 with distinct primes both in [q^0.45, q^0.55].
bool is_balanced_semiprime(u64 q);
// "re,im" or "re"
cplx parse_shift(const std::string& s);

struct PilotConstants {
    double c6 = 0, c6_observed = 0;
    double c6_prime = 0, c6_prime_observed = 0;
    double c10 = 0, c10_observed = 0;
    double slope = 0;
};

// Observed maxima times 1.5, rounded up to two significant digits.
PilotConstants run_pilot(int threads);
double freeze_constant(double observed);

// Entry point of the dmom executable; returns the process exit code.
int run_cli(int argc, char** argv);

}  // namespace dmom
