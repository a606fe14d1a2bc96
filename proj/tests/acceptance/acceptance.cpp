// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dmom/arith.hpp"
#include "dmom/characters.hpp"
#include "dmom/kernels.hpp"
#include "dmom/lfunc.hpp"
#include "dmom/mainterms.hpp"
#include "dmom/moments.hpp"
#include "dmom/report.hpp"
#include "dmom/special.hpp"
#include "dmom/verify.hpp"

using namespace dmom;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool ok = true;
    std::string detail;
};

struct Frozen {
    double c6, c6_prime, c10, slope_ceiling;
};

Frozen load_fixture(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    const auto j = nlohmann::json::parse(f);
    return {j["c6"]["value"], j["c6_prime"]["value"], j["c10"]["value"], j["prime_fit_slope"]["ceiling"]};
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > limit_s) {
        o.ok = false;
        o.detail += fmt(" [over time limit %.0f s]", limit_s);
    }
    if (!o.ok) ++failures;
    std::printf("%s %d %s: %s (%.1f s)\n", o.ok ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
    std::fflush(stdout);
}

Outcome exact_identities() {
    std::mt19937_64 rng(1);
    u64 checked = 0;
    for (u64 q = 1; q <= 150; ++q) {
        std::uniform_int_distribution<i64> u(1, 10 * static_cast<i64>(q));
        for (int t = 0; t < 100;) {
            const i64 m = u(rng), n = u(rng);
            if (gcd(static_cast<u64>(m * n), q) != 1) continue;
            ++t;
            ++checked;
            const cplx d = orthogonality_direct(q, m, n);
            if (std::abs(d - static_cast<double>(orthogonality_closed(q, m, n))) > 1e-8)
                return {false, "orthogonality mismatch at q = " + std::to_string(q)};
        }
    }
    for (u64 c = 1; c <= 30; ++c)
        for (u64 d = 1; d <= 30; ++d) {
            if (gcd(c, d) != 1) continue;
            for (i64 r = 0; r < static_cast<i64>(d); ++r) {
                if (gcd(static_cast<u64>(r), d) != 1) continue;
                ++checked;
                if (std::abs(exp_sum_direct(c, d, r) - exp_sum_closed(c, d, r)) > 1e-9)
                    return {false, "exponential sum mismatch at c = " + std::to_string(c) + ", d = " + std::to_string(d)};
            }
        }
    for (u64 q = 1; q <= 2000; ++q) {
        ++checked;
        if (phi_star_via_c_sum(q) != Rational(phi_star(q))) return {false, "phi* mismatch at q = " + std::to_string(q)};
    }
    return {true, std::to_string(checked) + " identities, zero failures"};
}

Outcome special_functions() {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> sr(-0.9, 2.0), si(-30, 30), ar(0.05, 1.0);
    double worst = 0;
    for (int t = 0; t < 500; ++t) {
        const cplx s{sr(rng), si(rng)};
        if (std::abs(s - 1.0) < 0.1) continue;
        const double a = ar(rng);
        worst = std::max(worst, std::abs(hurwitz_zeta(s, a) - std::pow(a, -s) - hurwitz_zeta(s, a + 1)));
    }
    if (worst > 1e-9) return {false, fmt("Hurwitz recurrence error %.3g", worst)};
    if (std::abs(riemann_zeta(2.0) - pi * pi / 6) > 1e-13) return {false, "zeta(2)"};
    if (std::abs(gamma_fn(0.5) - std::sqrt(pi)) > 1e-14) return {false, "Gamma(1/2)"};
    double fe = 0;
    u64 count = 0;
    for (u64 h = 3; h <= 100; ++h) {
        const auto g = character_group(h);
        for (cplx w : {cplx(0.3, 2.0), cplx(0.5, 0.0)}) {
            const auto L = l_values(*g, w), Lc = l_values(*g, 1.0 - w);
            for (std::size_t k = 0; k < g->size(); ++k) {
                if (!g->is_primitive(k)) continue;
                ++count;
                const cplx X = functional_factor(w, g->character(k));
                fe = std::max(fe, std::abs(L[k] - X * Lc[g->conj_index(k)]));
            }
        }
    }
    if (fe > 1e-8) return {false, fmt("functional equation error %.3g", fe)};
    return {true, std::to_string(count) + fmt(" functional equations, max error %.2g", fe) +
                      fmt(", Hurwitz recurrence max error %.2g", worst)};
}

Outcome kernel_suite() {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-0.05, 0.05);
    double closed = std::abs(script_k_combined(0, 0, 0) - pi);
    for (int t = 0; t < 20; ++t) closed = std::max(closed, std::abs(script_k_combined(0, {u(rng), u(rng)}, {u(rng), u(rng)}) - pi));
    if (closed > 1e-12) return {false, fmt("closed form differs from pi by %.3g", closed)};
    double quad = 0;
    for (const auto& c : kernel_probe()) {
        if (!c.ok) return {false, c.name + " failed: " + (c.error.empty() ? fmt("diff %.3g", c.diff) : c.error)};
        if (c.name.rfind("quadrature", 0) == 0) quad = std::max(quad, c.diff);
    }
    const cplx res = contour_residue([](cplx s) { return hb_khat(s); }, 0.0, 0.1, 48);
    const double rerr = std::abs(res - std::exp(cplx(0, -pi / 4)) * std::sqrt(pi));
    if (rerr > 1e-8) return {false, fmt("series kernel residue error %.3g", rerr)};
    return {true, fmt("closed form %.2g", closed) + fmt(", quadrature matrix max diff %.2g", quad) + fmt(", residue error %.2g", rerr)};
}

Outcome prime_residuals(const Frozen& fz) {
    SweepOptions opt;
    const auto rows = sweep(primes_between(100, 2000), opt);
    double worst = 0;
    for (const auto& r : rows)
        if (r.q == 101 || r.q == 211 || r.q == 401 || r.q == 601 || r.q == 1009) {
            worst = std::max(worst, r.residual_norm);
            if (r.residual_norm > fz.c6)
                return {false, "q = " + std::to_string(r.q) + fmt(": |residual|/q^(1/4) = %.4g", r.residual_norm) +
                                   fmt(" > C6 = %.3g", fz.c6)};
        }
    const auto fit = fit_error_exponent(rows, 100);
    const bool ok = fit.slope <= fz.slope_ceiling;
    return {ok, fmt("max |residual|/q^(1/4) = %.4g", worst) + fmt(" <= C6 = %.3g", fz.c6) +
                    fmt("; fitted exponent %.3f over ", fit.slope) + std::to_string(fit.n_points) + " primes" +
                    fmt(" (ceiling %.2f)", fz.slope_ceiling)};
}

Outcome semiprimes(const Frozen& fz) {
    double worst = 0;
    for (u64 q : {37 * 41, 43 * 47, 53 * 59}) {
        const auto r = residual_even(q, 0.0, 0.0);
        worst = std::max(worst, r.residual_norm);
        if (r.residual_norm > fz.c6_prime)
            return {false, "q = " + std::to_string(q) + fmt(": %.4g", r.residual_norm) + fmt(" > C6' = %.3g", fz.c6_prime)};
    }
    return {true, fmt("max |residual|/q^(1/4) = %.4g", worst) + fmt(" <= C6' = %.3g", fz.c6_prime)};
}

Outcome shifted(const Frozen& fz) {
    const cplx I{0, 1};
    double worst = 0, sym = 0;
    for (u64 q : {101, 211})
        for (auto [a, b] : {std::pair<cplx, cplx>{0.01, 0.02}, {0.01 * I, -0.005 * I}, {0.02, 0.0}}) {
            if (!ShiftPair{a, b, q}.within_guard()) return {false, "shift outside the 1/log q guard"};
            const auto r = residual_even(q, a, b);
            worst = std::max(worst, r.residual_norm);
            if (r.residual_norm > 2 * fz.c6) return {false, "q = " + std::to_string(q) + fmt(": %.4g > 2 C6", r.residual_norm)};
            sym = std::max(sym, std::abs(moment_even(q, a, b).value - moment_even(q, b, a).value));
        }
    if (sym >= 1e-10) return {false, fmt("shift symmetry error %.3g", sym)};
    return {true, fmt("max |residual|/q^(1/4) = %.4g", worst) + fmt(" <= 2 C6 = %.3g", 2 * fz.c6) +
                      fmt(", symmetry error %.2g", sym)};
}

Outcome t_structure() {
    TRecover T;
    double diff = 0;
    for (u64 k = 2; k <= 50; ++k) diff = std::max(diff, std::abs(t_series(k, 0.0, 1).value - T(k)));
    if (diff >= 1e-4) return {false, fmt("series and inversion differ by %.3g", diff)};
    const auto probe = hb_expansion_probe(default_hb_grid());
    if (!probe.c0_stable) return {false, fmt("c0 estimate unstable, spread %.3g", probe.c0_spread)};
    return {true, fmt("series vs inversion max diff %.2g", diff) + fmt("; c0 = %.3g", probe.c0) +
                      fmt(" (spread %.2g over k in [200, 2000])", probe.c0_spread) + "; remainder fits " + probe.law +
                      fmt(" (fitted exponent %.4f)", probe.decay.slope)};
}

Outcome reciprocity(const Frozen& fz) {
    std::vector<std::pair<u64, u64>> pairs;
    for (u64 h : {3, 5, 7, 11, 13})
        for (u64 p : {211, 401, 601, 1009})
            if (static_cast<double>(h) < std::pow(static_cast<double>(p), 2.0 / 3.0)) pairs.emplace_back(h, p);
    double worst = 0, imag = 0;
    for (const auto& r : reciprocity_probe(pairs)) {
        worst = std::max(worst, r.ratio);
        if (r.ratio > fz.c10)
            return {false, "(h, p) = (" + std::to_string(r.h) + ", " + std::to_string(r.p) + fmt("): ratio %.4g", r.ratio) +
                               fmt(" > C10 = %.3g", fz.c10)};
        imag = std::max(imag, std::abs(twisted_moment_complex(r.p, static_cast<i64>(r.h)).imag()));
    }
    if (imag >= 1e-9) return {false, fmt("imaginary part %.3g", imag)};
    return {true, std::to_string(pairs.size()) + fmt(" pairs, max ratio %.4g", worst) + fmt(" <= C10 = %.3g", fz.c10) +
                      fmt(", max imaginary part %.2g", imag)};
}

Outcome determinism() {
    std::vector<u64> qs = primes_between(100, 700);
    for (u64 q : {1517, 2021, 3127, 360, 1155}) qs.push_back(q);
    std::string reference[2];
    for (int threads : {1, 2, 4, 1}) {
        for (Parity par : {Parity::Even, Parity::AllPrimitive}) {
            SweepOptions opt;
            opt.parity = par;
            opt.threads = threads;
            const auto rows = sweep(qs, opt);
            std::ostringstream out;
            write_csv(moment_report(rows, false), out);
            write_json(moment_report(rows, false), out);
            const int slot = par == Parity::Even ? 0 : 1;
            if (reference[slot].empty())
                reference[slot] = out.str();
            else if (out.str() != reference[slot])
                return {false, "report differs at " + std::to_string(threads) + " threads"};
        }
    }
    std::string hb_ref;
    for (int threads : {1, 3}) {
        std::ostringstream out;
        write_json(hb_report(hb_expansion_probe(default_hb_grid(), false, threads)), out);
        if (hb_ref.empty())
            hb_ref = out.str();
        else if (out.str() != hb_ref)
            return {false, "expansion probe report differs across thread counts"};
    }
    return {true, "sweep and probe reports byte-identical over reruns with 1, 2, 3, 4 threads"};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string fixture = argc > 1 ? argv[1] : DMOM_FIXTURE;
    Frozen fz;
    try {
        fz = load_fixture(fixture);
    } catch (const std::exception& e) {
        std::printf("FAIL fixture: %s\n", e.what());
        return 1;
    }
    criterion(1, "exact identities", 60, exact_identities);
    criterion(2, "special functions", 120, special_functions);
    criterion(3, "kernels", 120, kernel_suite);
    criterion(4, "prime moduli residuals", 300, [&] { return prime_residuals(fz); });
    criterion(5, "balanced semiprime residuals", 180, [&] { return semiprimes(fz); });
    criterion(6, "shifted residuals", 120, [&] { return shifted(fz); });
    criterion(7, "T(k) structure", 600, t_structure);
    criterion(8, "twisted reciprocity", 300, [&] { return reciprocity(fz); });
    criterion(9, "determinism", 600, determinism);
    return failures == 0 ? 0 : 1;
}
