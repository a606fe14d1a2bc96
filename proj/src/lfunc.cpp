#include "dmom/lfunc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "dmom/errors.hpp"
#include "dmom/special.hpp"

namespace dmom {

namespace {

// B_2k / (2k)! for k = 1..15
template <class T>
const std::array<T, 15>& bernoulli_over_factorial() {
    static const std::array<T, 15> table = [] {
        constexpr long double b[15] = {
            1.0L / 6, -1.0L / 30, 1.0L / 42, -1.0L / 30, 5.0L / 66, -691.0L / 2730, 7.0L / 6, -3617.0L / 510,
            43867.0L / 798, -174611.0L / 330, 854513.0L / 138, -236364091.0L / 2730, 8553103.0L / 6,
            -23749461029.0L / 870, 8615841276005.0L / 14322,
        };
        std::array<T, 15> out{};
        long double fact = 1.0L;
        for (int k = 1; k <= 15; ++k) {
            fact *= static_cast<long double>(2 * k - 1) * static_cast<long double>(2 * k);
            out[k - 1] = static_cast<T>(b[k - 1] / fact);
        }
        return out;
    }();
    return table;
}

int cutoff_for(cplx s, const EvalSettings& cfg) {
    if (cfg.em_cutoff > 0) return std::max(cfg.em_cutoff, 10);
    return std::max(20, static_cast<int>(std::ceil(2.0 * std::abs(s.imag()))) + 10);
}

template <class T>
std::complex<T> cexpm1(std::complex<T> z) {
    const T x = z.real(), y = z.imag();
    const T sh = std::sin(y / 2);
    return {std::expm1(x) * std::cos(y) - 2 * sh * sh, std::exp(x) * std::sin(y)};
}

// Euler-Maclaurin; when regular is set the 1/(s-1) pole part is subtracted.
template <class T>
std::complex<T> hurwitz_em(std::complex<T> s, T a, int N, int M, bool regular) {
    using C = std::complex<T>;
    if (M < 1 || M > 15) throw DomainError("hurwitz_zeta: bernoulli_terms must be in [1, 15]");
    C sum = 0;
    for (int n = 0; n < N; ++n) sum += std::exp(-s * std::log(static_cast<T>(n) + a));
    const T x = static_cast<T>(N) + a;
    const T lx = std::log(x);
    const C xs = std::exp(-s * lx);
    const C sm1 = s - T(1);
    C integral;
    if (regular) {
        const C u = -sm1 * lx;
        const C ratio = (std::abs(u) < T(1e-6)) ? C(1) + u / T(2) + u * u / T(6) : cexpm1(u) / u;
        integral = -lx * ratio;
    } else {
        integral = x * xs / sm1;
    }
    C tail = xs / T(2);
    const auto& c = bernoulli_over_factorial<T>();
    C poch = s;             // (s)_{2k-1}
    C xp = xs / x;          // x^{-s-2k+1}
    const T inv_x2 = T(1) / (x * x);
    for (int k = 1; k <= M; ++k) {
        tail += c[k - 1] * poch * xp;
        poch *= (s + T(2 * k - 1)) * (s + T(2 * k));
        xp *= inv_x2;
    }
    return sum + integral + tail;
}

cplx hurwitz_dispatch(cplx s, double a, const EvalSettings& cfg, bool regular) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("hurwitz_zeta: a must be positive");
    if (!regular && std::abs(s - 1.0) < kPoleGuard) throw PoleError("hurwitz_zeta: pole at s = 1");
    const int N = cutoff_for(s, cfg);
    if (cfg.precision == Precision::Extended) {
        const auto r = hurwitz_em<long double>({s.real(), s.imag()}, a, N, cfg.bernoulli_terms, regular);
        return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
    }
    return hurwitz_em<double>(s, a, N, cfg.bernoulli_terms, regular);
}

}  // namespace

cplx hurwitz_zeta(cplx s, double a, const EvalSettings& cfg) { return hurwitz_dispatch(s, a, cfg, false); }

cplx hurwitz_zeta_regular(cplx s, double a, const EvalSettings& cfg) { return hurwitz_dispatch(s, a, cfg, true); }

double hurwitz_tail_bound(cplx s, double a, const EvalSettings& cfg) {
    const int N = cutoff_for(s, cfg);
    const int M = cfg.bernoulli_terms;
    const double x = N + a;
    const auto& c = bernoulli_over_factorial<double>();
    double poch = 1.0;
    for (int j = 0; j < 2 * M + 1; ++j) poch *= std::abs(s + static_cast<double>(j));
    const double next = (M < 15) ? std::abs(c[M]) : std::abs(c[14]) / (4.0 * std::numbers::pi * std::numbers::pi);
    // Remainder is at most the next term times |s + 2M + 1| / (Re s + 2M + 1).
    const double widen = std::abs(s + (2.0 * M + 1.0)) / (s.real() + 2.0 * M + 1.0);
    return next * poch * std::pow(x, -s.real() - 2.0 * M - 1.0) * widen;
}

cplx riemann_zeta(cplx s, const EvalSettings& cfg) {
    if (std::abs(s - 1.0) < kPoleGuard) throw PoleError("riemann_zeta: pole at s = 1");
    return hurwitz_zeta_regular(s, 1.0, cfg) + 1.0 / (s - 1.0);
}

cplx zeta_q(cplx s, u64 q, const EvalSettings& cfg) {
    cplx z = riemann_zeta(s, cfg);
    for (u64 p : factorize(q).primes()) z *= 1.0 - std::exp(-s * std::log(static_cast<double>(p)));
    return z;
}

cplx dirichlet_l(cplx s, const DirichletCharacter& chi, const EvalSettings& cfg) {
    const u64 q = chi.modulus();
    const bool principal = chi.is_principal();
    if (principal && std::abs(s - 1.0) < kPoleGuard) throw PoleError("dirichlet_l: pole of the principal L-function");
    cplx sum = 0;
    for (u64 a = 1; a <= q; ++a) {
        const cplx v = chi(static_cast<i64>(a));
        if (v == 0.0) continue;
        sum += v * hurwitz_zeta_regular(s, static_cast<double>(a) / static_cast<double>(q), cfg);
    }
    if (principal) sum += static_cast<double>(euler_phi(q)) / (s - 1.0);
    return std::exp(-s * std::log(static_cast<double>(q))) * sum;
}

cplx l_restricted(cplx s, const DirichletCharacter& psi, u64 q, const EvalSettings& cfg) {
    if (q % psi.modulus() != 0) throw DomainError("l_restricted: modulus of psi must divide q");
    cplx v = dirichlet_l(s, psi, cfg);
    for (u64 p : factorize(q).primes())
        v *= 1.0 - psi(static_cast<i64>(p)) * std::exp(-s * std::log(static_cast<double>(p)));
    return v;
}

std::vector<cplx> hurwitz_vector(cplx s, u64 q, const EvalSettings& cfg) {
    std::vector<cplx> h(q);
    for (u64 a = 1; a <= q; ++a)
        h[a % q] = hurwitz_zeta_regular(s, static_cast<double>(a) / static_cast<double>(q), cfg);
    return h;
}

namespace {

std::vector<cplx> finish_l_values(const CharacterGroup& g, cplx s, std::vector<cplx> sums) {
    const u64 q = g.modulus();
    const bool near_pole = std::abs(s - 1.0) < kPoleGuard;
    if (near_pole) throw PoleError("l_values: the principal character has a pole at s = 1");
    sums[g.principal_index()] += static_cast<double>(g.order()) / (s - 1.0);
    const cplx scale = std::exp(-s * std::log(static_cast<double>(q)));
    for (auto& v : sums) v *= scale;
    return sums;
}

}  // namespace

std::vector<cplx> l_values(const CharacterGroup& g, cplx s, const EvalSettings& cfg) {
    return finish_l_values(g, s, g.transform(hurwitz_vector(s, g.modulus(), cfg)));
}

std::vector<cplx> l_values_naive(const CharacterGroup& g, cplx s, const EvalSettings& cfg) {
    return finish_l_values(g, s, g.transform_naive(hurwitz_vector(s, g.modulus(), cfg)));
}

cplx functional_factor(cplx w, const DirichletCharacter& psi) {
    const double q = static_cast<double>(psi.modulus());
    const cplx s = 1.0 - w;
    const cplx half_turn = cplx(0.0, std::numbers::pi / 2.0) * s;
    const double sign = static_cast<double>(psi.parity());
    return gauss_sum(psi) * std::exp((s - 1.0) * std::log(q) - s * std::log(2.0 * std::numbers::pi)) * gamma_fn(s) *
           (std::exp(-half_turn) + sign * std::exp(half_turn));
}

}  // namespace dmom
