#pragma once

#include <complex>
#include <map>
#include <mutex>
#include <string>

#include "dmom/lfunc.hpp"

namespace dmom {

enum class Parity { Even, Odd, AllPrimitive, AllCharacters };

std::string to_string(Parity p);
Parity parse_parity(const std::string& s);

struct MomentValue {
    u64 q = 0;
    cplx alpha = 0.0;
    cplx beta = 0.0;
    Parity parity = Parity::Even;
    cplx value = 0.0;
    u64 character_count = 0;
    double est_numeric_error = 0.0;
};

// Sum of L(1/2+alpha, chi) L(1/2+beta, conj chi) over the parity class.
MomentValue shifted_moment(u64 q, cplx alpha, cplx beta, Parity parity, const EvalSettings& cfg = {});
MomentValue moment_even(u64 q, cplx alpha, cplx beta, const EvalSettings& cfg = {});
MomentValue moment_odd(u64 q, cplx alpha, cplx beta, const EvalSettings& cfg = {});
MomentValue moment_all_primitive(u64 q, cplx alpha, cplx beta, const EvalSettings& cfg = {});
MomentValue moment_all_characters(u64 q, const EvalSettings& cfg = {});

// T(k) = sum over d | k of (d/phi(d)) * moment_all_characters(d).
double t_recover(u64 k, const EvalSettings& cfg = {});

// Memoizes moment_all_characters across many T(k).
class TRecover {
  public:
    explicit TRecover(EvalSettings cfg = {}) : cfg_(cfg) {}
    double operator()(u64 k);
    double all_characters(u64 q);

  private:
    EvalSettings cfg_;
    std::mutex mu_;
    std::map<u64, double> cache_;
};

struct TSeries {
    double value = 0.0;
    double cutoff = 0.0;      // largest 2 pi n / k included
    u64 terms = 0;
    double tail_bound = 0.0;  // rigorous bound on the omitted terms, given the kernel bound
};

// Tail bound for the omitted part of the series when n <= n_max is summed.
double t_series_tail_bound(u64 k, u64 n_max);
// cutoff <= 0 picks the smallest power-of-two multiple of 1000 with tail < 1e-7.
TSeries t_series(u64 k, double cutoff = 0.0, int threads = 1);

// S(p, h) = sum over primitive chi mod p of |L(1/2, chi)|^2 chi(h).
cplx twisted_moment_complex(u64 p, i64 h, const EvalSettings& cfg = {});
double twisted_moment(u64 p, i64 h, const EvalSettings& cfg = {});

}  // namespace dmom
