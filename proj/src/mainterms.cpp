#include "dmom/mainterms.hpp"

#include <cmath>
#include <numbers>

#include "dmom/arith.hpp"
#include "dmom/characters.hpp"
#include "dmom/errors.hpp"
#include "dmom/kernels.hpp"
#include "dmom/parallel.hpp"
#include "dmom/special.hpp"

namespace dmom {

namespace {

constexpr double kPi = std::numbers::pi;

double prime_log_sum(const Factorization& f) {
    double s = 0;
    for (const auto& pp : f.factors) {
        const double p = static_cast<double>(pp.prime);
        s += std::log(p) / (p - 1.0);
    }
    return s;
}

void require_q(u64 q, const char* who) {
    if (q < 3) throw DomainError(std::string(who) + ": q must be at least 3");
}

// h(z) = log Gamma(1/2-z) + log cos(pi/2 (1/2-z)) + log sqrt(2/pi); odd, h(0) = 0.
cplx h_fn(cplx z) {
    return log_gamma(0.5 - z) + std::log(std::cos(kPi / 2.0 * (0.5 - z))) + 0.5 * std::log(2.0 / kPi);
}
cplx h_prime(cplx z) { return -digamma(0.5 - z) + kPi / 2.0 * std::tan(kPi / 2.0 * (0.5 - z)); }

// (P(y) - P(0)) / y with P(y) = prod_{p | q} (1 - p^{-1-y}).
cplx euler_difference(const Factorization& f, double P0, cplx y) {
    if (y == 0.0) return P0 * prime_log_sum(f);
    cplx S = 0;
    for (const auto& pp : f.factors) {
        const double p = static_cast<double>(pp.prime);
        S += log1p(-dmom::expm1(-y * std::log(p)) / (p - 1.0));
    }
    return P0 * expm1_over(S) * (S / y);
}

cplx laurent_tail(cplx x) {
    cplx s = 0, pw = 1;
    double fact = 1;
    for (int n = 0; n < 4; ++n) {
        if (n > 0) fact *= n;
        s += (n % 2 ? -1.0 : 1.0) * kStieltjes[n] * pw / fact;
        pw *= x;
    }
    return s;
}

cplx euler_product(const Factorization& f, cplx s) {
    cplx P = 1;
    for (const auto& pp : f.factors) P *= 1.0 - std::pow(static_cast<double>(pp.prime), -s);
    return P;
}

// L_q(s, psi) for every psi mod m, with the Euler factors of primes dividing q but not m removed.
std::vector<cplx> restricted_l_values(const CharacterGroup& g, const Factorization& fq, cplx s,
                                      const EvalSettings& cfg) {
    auto L = l_values(g, s, cfg);
    const u64 m = g.modulus();
    for (const auto& pp : fq.factors) {
        if (m % pp.prime == 0) continue;
        const cplx ps = std::pow(static_cast<double>(pp.prime), -s);
        for (std::size_t k = 0; k < g.size(); ++k) L[k] *= 1.0 - g.value(k, static_cast<i64>(pp.prime)) * ps;
    }
    return L;
}

// zeta_q(1 + x) with the pole taken from x itself rather than from the rounded 1 + x.
cplx zeta_q_one_plus(cplx x, const Factorization& f) {
    return (hurwitz_zeta_regular(1.0 + x, 1.0) + 1.0 / x) * euler_product(f, 1.0 + x);
}

struct Splitting {
    u64 c, d, m, M;
    double weight;  // mu^2(c) / phi(c)
};

std::vector<Splitting> splittings(const Factorization& f) {
    std::vector<Splitting> out;
    for (auto [c, d] : coprime_splittings(f.n)) {
        const u64 m = std::min(c, d), M = std::max(c, d);
        if (mobius(c) == 0) continue;
        out.push_back({c, d, m, M, 1.0 / static_cast<double>(euler_phi(c))});
    }
    return out;
}

// sum over psi mod `mod` with parity filter of tau(conj psi) conj psi(arg) L_q(1/2, psi)^2
cplx zero_shift_sum(u64 mod, i64 arg, int parity, const Factorization& fq, const EvalSettings& cfg) {
    const auto g = character_group(mod);
    const auto taus = g->gauss_sums();
    const auto L = restricted_l_values(*g, fq, 0.5, cfg);
    std::vector<cplx> terms;
    for (std::size_t k = 0; k < g->size(); ++k) {
        if (parity != 0 && g->parity(k) != parity) continue;
        const std::size_t kb = g->conj_index(k);
        terms.push_back(taus[kb] * g->value(kb, arg) * L[k] * L[k]);
    }
    return pairwise_sum(terms);
}

double real_checked(cplx v, double scale, const char* who) {
    if (std::abs(v.imag()) > 1e-9 * std::max(1.0, scale))
        throw NumericError(std::string(who) + ": imaginary part exceeds tolerance");
    return v.real();
}

}  // namespace

double hb_A() { return kEulerGamma - std::log(8.0 * kPi); }
double hb_B() {
    const double z = riemann_zeta(0.5).real();
    return 2.0 * z * z;
}

cplx main_even(u64 q, cplx alpha, cplx beta) {
    require_q(q, "main_even");
    ShiftPair{alpha, beta, q}.validate();
    const cplx x = alpha + beta;
    if (std::abs(x) <= 1e-6) return main_even_limit(q, alpha, beta);
    const auto f = factorize(q);
    const double ps = static_cast<double>(phi_star(q));
    return ps / 2.0 * (zeta_q_one_plus(x, f) + x_plus(q, alpha, beta) * zeta_q_one_plus(-x, f));
}

cplx main_even_limit(u64 q, cplx alpha, cplx beta) {
    require_q(q, "main_even_limit");
    const cplx x = alpha + beta;
    if (std::abs(x) >= 1e-3) throw DomainError("main_even_limit: |alpha + beta| must be below 1e-3");
    const auto f = factorize(q);
    const double P0 = static_cast<double>(euler_phi(q)) / static_cast<double>(q);
    const cplx a = (alpha - beta) / 2.0;
    const double lq = std::log(static_cast<double>(q) / (2.0 * kPi));
    const cplx slope = std::abs(x) < 1e-6 ? h_prime(a) : (h_fn(a + x / 2.0) - h_fn(a - x / 2.0)) / x;
    const cplx L_over_x = -lq + slope;
    const cplx X = std::exp(L_over_x * x);
    const cplx one_minus_X_over_x = -L_over_x * expm1_over(L_over_x * x);
    const cplx Px = euler_product(f, 1.0 + x), Pmx = euler_product(f, 1.0 - x);
    const cplx bracket = euler_difference(f, P0, x) + euler_difference(f, P0, -x) + Pmx * one_minus_X_over_x +
                         Px * laurent_tail(x) + X * Pmx * laurent_tail(-x);
    return static_cast<double>(phi_star(q)) / 2.0 * bracket;
}

cplx secondary_even(u64 q, cplx alpha, cplx beta, const EvalSettings& cfg) {
    require_q(q, "secondary_even");
    ShiftPair{alpha, beta, q}.validate();
    const auto f = factorize(q);
    const double qd = static_cast<double>(q);
    auto G = [&](cplx z) {
        return gamma_fn(0.5 - z) * std::cos(kPi / 2.0 * (0.5 - z)) * std::exp((0.5 - z) * std::log(qd / (2.0 * kPi)));
    };
    const cplx Ga = G(alpha), Gb = G(beta);
    const auto parts = splittings(f);
    std::vector<cplx> per(parts.size());
    parallel_for(parts.size(), 1, [&](std::size_t i) {
        const auto& sp = parts[i];
        const auto g = character_group(sp.m);
        const auto taus = g->gauss_sums();
        const auto Lpa = restricted_l_values(*g, f, 0.5 + alpha, cfg);
        const auto Lmb = restricted_l_values(*g, f, 0.5 - beta, cfg);
        const auto Lpb = beta == alpha ? Lpa : restricted_l_values(*g, f, 0.5 + beta, cfg);
        const auto Lma = beta == alpha ? Lmb : restricted_l_values(*g, f, 0.5 - alpha, cfg);
        std::vector<cplx> terms;
        for (std::size_t k = 0; k < g->size(); ++k) {
            if (g->parity(k) != 1) continue;
            const std::size_t kb = g->conj_index(k);
            terms.push_back(taus[kb] * g->value(kb, static_cast<i64>(sp.M)) *
                            (Gb * Lpa[k] * Lmb[k] + Ga * Lpb[k] * Lma[k]));
        }
        per[i] = sp.weight / static_cast<double>(euler_phi(sp.m)) * pairwise_sum(terms);
    });
    return 2.0 * static_cast<double>(euler_phi(q)) / qd * pairwise_sum(per);
}

double corollary6_secondary(u64 q, const EvalSettings& cfg) {
    require_q(q, "corollary6_secondary");
    const auto f = factorize(q);
    std::vector<cplx> per;
    for (const auto& sp : splittings(f))
        per.push_back(sp.weight / static_cast<double>(euler_phi(sp.m)) *
                      zero_shift_sum(sp.m, static_cast<i64>(sp.M), 1, f, cfg));
    const double scale = 2.0 * static_cast<double>(euler_phi(q)) / std::sqrt(static_cast<double>(q));
    return real_checked(scale * pairwise_sum(per), scale, "corollary6_secondary");
}

double even_main(u64 q) {
    require_q(q, "even_main");
    const auto f = factorize(q);
    const double qd = static_cast<double>(q);
    return static_cast<double>(phi_star(q)) / 2.0 * static_cast<double>(euler_phi(f)) / qd *
           (std::log(qd / (2.0 * kPi)) + 2.0 * kEulerGamma + digamma_half() - kPi / 2.0 + 2.0 * prime_log_sum(f));
}

double odd_main(u64 q) { return even_main(q) + static_cast<double>(phi_star(q)) / 2.0 *
                                                     static_cast<double>(euler_phi(q)) / static_cast<double>(q) * kPi; }

double allprim_main(u64 q) {
    require_q(q, "allprim_main");
    const auto f = factorize(q);
    const double qd = static_cast<double>(q);
    return static_cast<double>(phi_star(q)) * static_cast<double>(euler_phi(f)) / qd *
           (std::log(qd / (2.0 * kPi)) + 2.0 * kEulerGamma + digamma_half() + 2.0 * prime_log_sum(f));
}

double odd_secondary(u64 q, const EvalSettings& cfg) {
    require_q(q, "odd_secondary");
    const auto f = factorize(q);
    std::vector<cplx> per;
    for (const auto& sp : splittings(f)) {
        const i64 arg = sp.c < sp.d ? -static_cast<i64>(sp.d) : static_cast<i64>(sp.c);
        per.push_back(sp.weight / static_cast<double>(euler_phi(sp.m)) * zero_shift_sum(sp.m, arg, -1, f, cfg));
    }
    const double scale = 2.0 * static_cast<double>(euler_phi(q)) / std::sqrt(static_cast<double>(q));
    return real_checked(cplx(0, -1) * scale * pairwise_sum(per), scale, "odd_secondary");
}

double odd_secondary_literal(u64 q, const EvalSettings& cfg) {
    require_q(q, "odd_secondary_literal");
    const auto f = factorize(q);
    std::vector<cplx> per;
    for (const auto& sp : splittings(f)) {
        per.push_back(sp.weight / static_cast<double>(euler_phi(sp.c)) *
                      zero_shift_sum(sp.c, -static_cast<i64>(sp.d), -1, f, cfg));
        per.push_back(sp.weight / static_cast<double>(euler_phi(sp.d)) *
                      zero_shift_sum(sp.d, static_cast<i64>(sp.c), -1, f, cfg));
    }
    const double scale = 2.0 * static_cast<double>(euler_phi(q)) / std::sqrt(static_cast<double>(q));
    return real_checked(cplx(0, -1) * scale * pairwise_sum(per), scale, "odd_secondary_literal");
}

double allprim_secondary(u64 q, const EvalSettings& cfg) {
    require_q(q, "allprim_secondary");
    const auto f = factorize(q);
    std::vector<cplx> per;
    for (const auto& sp : splittings(f)) {
        const i64 arg = sp.c < sp.d ? -static_cast<i64>(sp.d) : static_cast<i64>(sp.c);
        const cplx s = zero_shift_sum(sp.m, arg, 1, f, cfg) + cplx(0, -1) * zero_shift_sum(sp.m, arg, -1, f, cfg);
        per.push_back(sp.weight / static_cast<double>(euler_phi(sp.m)) * s);
    }
    const double scale = 2.0 * static_cast<double>(euler_phi(q)) / std::sqrt(static_cast<double>(q));
    return real_checked(scale * pairwise_sum(per), scale, "allprim_secondary");
}

double hb_main(double k) {
    if (k < 1) throw DomainError("hb_main: k must be at least 1");
    return k * std::log(k) + hb_A() * k + hb_B() * std::sqrt(k);
}

double thm10_rhs(u64 p, u64 h, double s_hp) {
    if (!is_prime(p) || !is_prime(h)) throw DomainError("thm10_rhs: p and h must be prime");
    if (h >= p) throw DomainError("thm10_rhs: need h < p");
    const double pd = static_cast<double>(p), hd = static_cast<double>(h);
    return std::sqrt(pd / hd) * s_hp + pd / std::sqrt(hd) * (std::log(pd / hd) + hb_A()) + hb_B() / 2.0 * std::sqrt(pd);
}

double error_budget(u64 q, double D, double eps) {
    if (q < 1) throw DomainError("error_budget: q must be positive");
    if (D < 1 || D > static_cast<double>(q)) throw DomainError("error_budget: need 1 <= D <= q");
    const double qd = static_cast<double>(q);
    double small = 0, large = 0;
    for (u64 d : divisors(q)) {
        const double dd = static_cast<double>(d), ph = static_cast<double>(euler_phi(d));
        if (dd <= D)
            small += ph * std::pow(dd, 1.5);
        else
            large += ph / std::pow(dd, 1.5);
    }
    return small / qd + std::sqrt(qd) * large + std::pow(qd, eps) + std::pow(qd, eps - 1.0) * D * D;
}

u64 near_sqrt_divisors(u64 q, double eps) {
    const double lo = std::pow(static_cast<double>(q), 0.5 - eps), hi = std::pow(static_cast<double>(q), 0.5 + eps);
    u64 n = 0;
    for (u64 d : divisors(q))
        if (static_cast<double>(d) > lo && static_cast<double>(d) < hi) ++n;
    return n;
}

MainTermBreakdown main_terms_even(u64 q, cplx alpha, cplx beta, double D, const EvalSettings& cfg) {
    MainTermBreakdown b;
    b.q = q;
    b.alpha = alpha;
    b.beta = beta;
    b.D = D > 0 ? D : std::sqrt(static_cast<double>(q));
    b.leading = main_even(q, alpha, beta);
    b.secondary = secondary_even(q, alpha, beta, cfg);
    b.error_budget = error_budget(q, b.D);
    return b;
}

}  // namespace dmom
