#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dmom/moments.hpp"

namespace dmom {

struct MomentRow {
    u64 q = 0;
    Parity parity = Parity::Even;
    cplx alpha = 0.0;
    cplx beta = 0.0;
    cplx lhs = 0.0;
    cplx main = 0.0;
    cplx secondary = 0.0;
    cplx residual = 0.0;
    double residual_norm = 0.0;    // |residual| / q^{1/4}
    double residual_norm_d = 0.0;  // |residual| / (q^{1/4} d(q))
    u64 divisor_count = 0;
    double D = 0.0;
    double error_budget = 0.0;
    u64 near_sqrt_divisors = 0;
    std::optional<double> runtime_ms;
};

// Odd and all-primitive rows need zero shifts.  D <= 0 means sqrt(q).
MomentRow residual_row(u64 q, cplx alpha, cplx beta, Parity parity, double D = 0.0, const EvalSettings& cfg = {});
MomentRow residual_even(u64 q, cplx alpha, cplx beta, const EvalSettings& cfg = {});

struct SweepOptions {
    cplx alpha = 0.0;
    cplx beta = 0.0;
    Parity parity = Parity::Even;
    double D = 0.0;
    int threads = 1;
    bool timing = false;
    EvalSettings eval;
};

// Rows sorted by q.
std::vector<MomentRow> sweep(std::vector<u64> moduli, const SweepOptions& opt);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    u64 n_points = 0;
};

// Least squares of log y against log x; needs 5 positive points.
FitResult fit_power_law(const std::vector<double>& x, const std::vector<double>& y);
FitResult fit_error_exponent(const std::vector<MomentRow>& rows, u64 q_min = 0);

struct HbRow {
    u64 k = 0;
    double t_recover = 0.0;
    double hb_main = 0.0;
    double remainder = 0.0;  // t_recover - hb_main
    std::optional<double> t_series;
};

struct HbLimitEstimate {
    u64 k = 0;           // triple (k, 2k, 4k)
    double c0 = 0.0;     // Aitken limit
    double power = 0.0;  // fitted decay exponent of the triple
};

struct HbProbe {
    std::vector<HbRow> rows;
    std::vector<HbLimitEstimate> estimates;
    double c0 = 0.0;         // estimate from the largest triple
    double c0_spread = 0.0;  // max - min over estimates
    bool c0_stable = false;  // spread <= 5e-4 max(1, |c0|)
    FitResult decay;         // |R(k) - c0| against k, k >= decay_k_min
    u64 decay_k_min = 0;
    std::string law;         // "k^-1/2" or "k^-1", whichever exponent is nearer the fitted slope
    double max_series_diff = 0.0;
};

// Remainders for arbitrary k lists; Aitken triples are formed wherever k, 2k, 4k all appear.
HbProbe hb_expansion_probe_values(const std::vector<std::pair<u64, double>>& remainders, u64 decay_k_min = 200);
HbProbe hb_expansion_probe(const std::vector<u64>& ks, bool series_check = false, int threads = 1,
                           u64 decay_k_min = 200);
// {200, 250, ..., 500} together with their doubles and quadruples.
std::vector<u64> default_hb_grid();

struct ReciprocityRow {
    u64 h = 0;
    u64 p = 0;
    double s_ph = 0.0;
    double s_hp = 0.0;  // S(h, -p)
    double rhs = 0.0;
    double residual = 0.0;
    double bound_scale = 0.0;  // h + log p + sqrt(p/h) log p
    double ratio = 0.0;
    bool large_case = false;   // -p = 1 mod h
    bool beyond_range = false; // h > p^{2/3}
};

std::vector<ReciprocityRow> reciprocity_probe(const std::vector<std::pair<u64, u64>>& pairs, int threads = 1);

struct KernelCell {
    std::string name;
    cplx alpha = 0.0;
    cplx beta = 0.0;
    cplx delta = 0.0;
    cplx numeric = 0.0;
    cplx reference = 0.0;
    double diff = 0.0;
    double tolerance = 0.0;
    bool ok = false;
    std::string error;
};

std::vector<KernelCell> kernel_probe();

}  // namespace dmom
