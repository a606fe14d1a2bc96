#include "dmom/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>

#include "dmom/arith.hpp"
#include "dmom/errors.hpp"
#include "dmom/kernels.hpp"
#include "dmom/mainterms.hpp"
#include "dmom/parallel.hpp"

namespace dmom {

MomentRow residual_row(u64 q, cplx alpha, cplx beta, Parity parity, double D, const EvalSettings& cfg) {
    if (parity == Parity::AllCharacters) throw DomainError("residual_row: no main terms for the all-characters sum");
    if (parity != Parity::Even && (alpha != 0.0 || beta != 0.0))
        throw DomainError("residual_row: odd and all-primitive rows need zero shifts");
    if (q < 3) throw DomainError("residual_row: q must be at least 3");
    MomentRow r;
    r.q = q;
    r.parity = parity;
    r.alpha = alpha;
    r.beta = beta;
    r.lhs = shifted_moment(q, alpha, beta, parity, cfg).value;
    switch (parity) {
        case Parity::Even:
            r.main = main_even(q, alpha, beta);
            r.secondary = secondary_even(q, alpha, beta, cfg);
            break;
        case Parity::Odd:
            r.main = odd_main(q);
            r.secondary = odd_secondary(q, cfg);
            break;
        default:
            r.main = allprim_main(q);
            r.secondary = allprim_secondary(q, cfg);
            break;
    }
    r.residual = r.lhs - r.main - r.secondary;
    const double q4 = std::pow(static_cast<double>(q), 0.25);
    r.divisor_count = divisor_count(q);
    r.residual_norm = std::abs(r.residual) / q4;
    r.residual_norm_d = r.residual_norm / static_cast<double>(r.divisor_count);
    r.D = D > 0 ? D : std::sqrt(static_cast<double>(q));
    r.error_budget = error_budget(q, r.D);
    r.near_sqrt_divisors = dmom::near_sqrt_divisors(q);
    return r;
}

MomentRow residual_even(u64 q, cplx alpha, cplx beta, const EvalSettings& cfg) {
    return residual_row(q, alpha, beta, Parity::Even, 0.0, cfg);
}

std::vector<MomentRow> sweep(std::vector<u64> moduli, const SweepOptions& opt) {
    std::sort(moduli.begin(), moduli.end());
    moduli.erase(std::unique(moduli.begin(), moduli.end()), moduli.end());
    if (moduli.empty()) throw DomainError("sweep: no moduli");
    std::vector<MomentRow> rows(moduli.size());
    parallel_for(moduli.size(), opt.threads, [&](std::size_t i) {
        const auto t0 = std::chrono::steady_clock::now();
        rows[i] = residual_row(moduli[i], opt.alpha, opt.beta, opt.parity, opt.D, opt.eval);
        if (opt.timing)
            rows[i].runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    });
    return rows;
}

FitResult fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DomainError("fit_power_law: size mismatch");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0) || !(y[i] > 0)) continue;
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    const std::size_t n = lx.size();
    if (n < 5) throw DomainError("fit_power_law: need at least 5 positive points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx == 0) throw DomainError("fit_power_law: x values are all equal");
    FitResult f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r_squared = syy == 0 ? 1.0 : sxy * sxy / (sxx * syy);
    f.n_points = n;
    return f;
}

FitResult fit_error_exponent(const std::vector<MomentRow>& rows, u64 q_min) {
    std::vector<double> x, y;
    for (const auto& r : rows) {
        if (r.q < q_min || std::abs(r.residual) == 0) continue;
        x.push_back(static_cast<double>(r.q));
        y.push_back(std::abs(r.residual));
    }
    if (x.size() < 5) throw DomainError("fit_error_exponent: need at least 5 rows with nonzero residual");
    return fit_power_law(x, y);
}

std::vector<u64> default_hb_grid() {
    std::vector<u64> ks;
    for (u64 k = 200; k <= 500; k += 50)
        for (u64 m : {1, 2, 4}) ks.push_back(k * m);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    return ks;
}

HbProbe hb_expansion_probe_values(const std::vector<std::pair<u64, double>>& remainders, u64 decay_k_min) {
    HbProbe probe;
    std::map<u64, double> R(remainders.begin(), remainders.end());
    for (const auto& [k, r] : R) {
        HbRow row;
        row.k = k;
        row.remainder = r;
        probe.rows.push_back(row);
    }
    for (const auto& [k, r1] : R) {
        const auto i2 = R.find(2 * k), i4 = R.find(4 * k);
        if (i2 == R.end() || i4 == R.end()) continue;
        const double r2 = i2->second, r3 = i4->second;
        const double den = (r3 - r2) - (r2 - r1);
        HbLimitEstimate e;
        e.k = k;
        e.c0 = den == 0 ? r3 : r3 - (r3 - r2) * (r3 - r2) / den;
        const double ratio = (r1 - r2) / (r2 - r3);
        e.power = ratio > 0 ? std::log2(ratio) : NAN;
        probe.estimates.push_back(e);
    }
    if (probe.estimates.empty()) throw DomainError("hb_expansion_probe: no (k, 2k, 4k) triple in the k list");
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& e : probe.estimates) {
        lo = std::min(lo, e.c0);
        hi = std::max(hi, e.c0);
    }
    probe.c0 = probe.estimates.back().c0;
    probe.c0_spread = hi - lo;
    probe.c0_stable = probe.c0_spread <= 5e-4 * std::max(1.0, std::abs(probe.c0));
    probe.decay_k_min = decay_k_min;
    std::vector<double> x, y;
    for (const auto& [k, r] : R) {
        if (k < decay_k_min) continue;
        x.push_back(static_cast<double>(k));
        y.push_back(std::abs(r - probe.c0));
    }
    probe.decay = fit_power_law(x, y);
    probe.law = std::abs(probe.decay.slope + 0.5) <= std::abs(probe.decay.slope + 1.0) ? "k^-1/2" : "k^-1";
    return probe;
}

HbProbe hb_expansion_probe(const std::vector<u64>& ks, bool series_check, int threads, u64 decay_k_min) {
    for (u64 k : ks)
        if (k == 0 || k > 3000) throw DomainError("hb_expansion_probe: k must lie in [1, 3000]");
    TRecover T;
    std::vector<HbRow> rows(ks.size());
    parallel_for(ks.size(), threads, [&](std::size_t i) {
        rows[i].k = ks[i];
        rows[i].t_recover = T(ks[i]);
        rows[i].hb_main = hb_main(static_cast<double>(ks[i]));
        rows[i].remainder = rows[i].t_recover - rows[i].hb_main;
    });
    // the series is costly beyond k ~ 100, so it is checked only there
    if (series_check)
        for (auto& r : rows)
            if (r.k <= 100) r.t_series = t_series(r.k, 0.0, threads).value;
    std::vector<std::pair<u64, double>> rem;
    for (const auto& r : rows) rem.emplace_back(r.k, r.remainder);
    HbProbe probe = hb_expansion_probe_values(rem, decay_k_min);
    std::sort(rows.begin(), rows.end(), [](const HbRow& a, const HbRow& b) { return a.k < b.k; });
    rows.erase(std::unique(rows.begin(), rows.end(), [](const HbRow& a, const HbRow& b) { return a.k == b.k; }),
               rows.end());
    probe.rows = rows;
    for (const auto& r : rows)
        if (r.t_series) probe.max_series_diff = std::max(probe.max_series_diff, std::abs(*r.t_series - r.t_recover));
    return probe;
}

std::vector<ReciprocityRow> reciprocity_probe(const std::vector<std::pair<u64, u64>>& pairs, int threads) {
    for (auto [h, p] : pairs) {
        if (!is_prime(h) || !is_prime(p)) throw DomainError("reciprocity_probe: h and p must be prime");
        if (h >= p) throw DomainError("reciprocity_probe: need h < p");
    }
    std::vector<ReciprocityRow> rows(pairs.size());
    parallel_for(pairs.size(), threads, [&](std::size_t i) {
        auto& r = rows[i];
        r.h = pairs[i].first;
        r.p = pairs[i].second;
        const double hd = static_cast<double>(r.h), pd = static_cast<double>(r.p);
        r.s_ph = twisted_moment(r.p, static_cast<i64>(r.h));
        r.s_hp = twisted_moment(r.h, -static_cast<i64>(r.p));
        r.rhs = thm10_rhs(r.p, r.h, r.s_hp);
        r.residual = r.s_ph - r.rhs;
        r.bound_scale = hd + std::log(pd) + std::sqrt(pd / hd) * std::log(pd);
        r.ratio = std::abs(r.residual) / r.bound_scale;
        r.large_case = residue(-static_cast<i64>(r.p), r.h) == 1 % r.h;
        r.beyond_range = hd > std::pow(pd, 2.0 / 3.0);
    });
    std::sort(rows.begin(), rows.end(),
              [](const ReciprocityRow& a, const ReciprocityRow& b) { return std::pair(a.p, a.h) < std::pair(b.p, b.h); });
    return rows;
}

namespace {

KernelCell run_cell(std::string name, cplx alpha, cplx beta, cplx delta, double tol,
                    const std::function<cplx()>& numeric, const std::function<cplx()>& reference) {
    KernelCell c;
    c.name = std::move(name);
    c.alpha = alpha;
    c.beta = beta;
    c.delta = delta;
    c.tolerance = tol;
    try {
        c.numeric = numeric();
        c.reference = reference();
        c.diff = std::abs(c.numeric - c.reference);
        c.ok = c.diff < tol;
    } catch (const std::exception& e) {
        c.error = e.what();
        c.diff = NAN;
    }
    return c;
}

std::string contour_name(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "contour shift Re s = 1 vs 2 at x = %g", x);
    return buf;
}

}  // namespace

std::vector<KernelCell> kernel_probe() {
    constexpr double pi = std::numbers::pi;
    const cplx I{0, 1};
    std::vector<KernelCell> cells;
    cells.push_back(run_cell("closed form at delta = 0", 0, 0, 0, 1e-12, [] { return script_k_combined(0, 0, 0); },
                             [] { return cplx(pi); }));
    for (auto [a, b] : {std::pair<cplx, cplx>{0, 0}, {0.02, 0.01}, {0.01 * I, -0.005 * I}}) {
        for (int which = 0; which < 2; ++which) {
            const cplx delta = which == 0 ? cplx(0) : -a - b;
            cells.push_back(run_cell(which == 0 ? "quadrature at delta = 0" : "quadrature at delta = -alpha-beta", a,
                                     b, delta, 1e-6,
                                     [=] { return script_k_quadrature(delta, a, b) + script_k_quadrature(delta, b, a); },
                                     [=] { return script_k_combined(delta, a, b); }));
        }
    }
    for (double x : {0.5, 2.0, 10.0}) {
        QuadratureOptions l1, l2;
        l1.line = 1.0;
        l2.line = 2.0;
        const double scale = std::max(1.0, std::abs(kernel_K(x, 0.02, 0.01, l1)));
        cells.push_back(run_cell(contour_name(x), 0.02, 0.01, 0,
                                 1e-10 * scale, [=] { return kernel_K(x, 0.02, 0.01, l1); },
                                 [=] { return kernel_K(x, 0.02, 0.01, l2); }));
    }
    cells.push_back(run_cell("series kernel residue at s = 0", 0, 0, 0, 1e-8,
                             [] { return contour_residue([](cplx s) { return hb_khat(s); }, 0.0, 0.1, 48); },
                             [=] { return std::exp(-I * (pi / 4)) * std::sqrt(pi); }));
    return cells;
}

}  // namespace dmom
