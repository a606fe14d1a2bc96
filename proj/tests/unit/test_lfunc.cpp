#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dmom/errors.hpp"
#include "dmom/lfunc.hpp"
#include "dmom/special.hpp"

using namespace dmom;

namespace {
constexpr double pi = std::numbers::pi;
bool close(cplx a, cplx b, double tol) { return std::abs(a - b) < tol; }
bool rel_close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

// 40-digit reference values (tools/reference_values.py)
constexpr double kZetaHalf = -1.460354508809586812889499152515298;
constexpr double kLHalfChi5 = 0.2317509475040157558833836617608772;
constexpr double kL1Chi5 = 0.4304089409640040388894332329506054;
constexpr double kLHalfChi3 = 0.4808675576968286261812200632355899;
}  // namespace

TEST_CASE("gamma and digamma") {
    CHECK(rel_close(gamma_fn(0.5), std::sqrt(pi), 1e-14));
    CHECK(rel_close(gamma_fn({0.3, 0.2}), {1.980358172823442539139671523102072, -1.414576008373303314885548682739034}, 1e-13));
    CHECK(rel_close(gamma_fn({0.5, 10}), {3.378724376234235797029511001038e-7, 1.689369839038918911205107039722e-7}, 1e-13));
    CHECK(rel_close(gamma_fn({-2.5, 0.5}), {-0.333875203522432337403277270339566, -0.206457307963608414918287607563873}, 1e-13));
    const cplx z{0.3, 0.2};
    CHECK(rel_close(gamma_fn(z + 1.0), z * gamma_fn(z), 1e-14));
    CHECK(rel_close(digamma({0.3, -0.4}), {-1.280091788851282084554695333770440, -2.030105778096179631003003371005470}, 1e-13));
    CHECK(digamma_half() == doctest::Approx(-1.963510026021423479440976332998756).epsilon(1e-15));
    CHECK(std::abs(digamma(0.5).real() - digamma_half()) < 1e-14);
    CHECK_THROWS_AS(gamma_fn(-2.0), PoleError);
    CHECK_THROWS_AS(gamma_fn(0.0), PoleError);
}

TEST_CASE("complex expm1 and log1p keep relative accuracy") {
    const cplx z{1e-12, -3e-13};
    CHECK(rel_close(dmom::expm1(z), z + z * z / 2.0, 1e-15));
    CHECK(rel_close(dmom::log1p(z), z - z * z / 2.0, 1e-15));
    CHECK(rel_close(dmom::expm1(cplx{0.7, 2.0}), std::exp(cplx{0.7, 2.0}) - 1.0, 1e-15));
}

TEST_CASE("hurwitz zeta reference values") {
    CHECK(rel_close(hurwitz_zeta(2.0, 1.0), pi * pi / 6, 1e-14));
    CHECK(close(hurwitz_zeta(0.5, 1.0), kZetaHalf, 1e-13));
    CHECK(close(hurwitz_zeta({0.3, 5}, 0.7), {-0.640450887547146777471811687391304, 0.937203402365239670443737930366935}, 1e-12));
    CHECK(close(hurwitz_zeta({0.5, 40}, 0.25), {-0.990251577933584551073495463010517, -2.741042033889554760096350275666172}, 1e-12));
    CHECK(close(hurwitz_zeta({-0.5, 1}, 0.1), {-0.283103048556245487171275990564400, -0.033587513559137948094100440148664}, 1e-12));
    CHECK(rel_close(hurwitz_zeta(2.0, 0.01), 10001.62121352831280378923502042894, 1e-14));
    CHECK_THROWS_AS(hurwitz_zeta(1.0, 0.5), PoleError);
    CHECK_THROWS_AS(hurwitz_zeta(1.0 + 1e-9, 0.5), PoleError);
    CHECK_NOTHROW(hurwitz_zeta_regular(1.0, 0.5));
    CHECK(close(hurwitz_zeta_regular(1.0, 1.0), kEulerGamma, 1e-13));
}

TEST_CASE("hurwitz recurrence, conjugation, tail bound") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> sr(-0.9, 2.0), si(-50, 50), ar(0.05, 0.95);
    for (int t = 0; t < 200; ++t) {
        const cplx s{sr(rng), si(rng)};
        if (std::abs(s - 1.0) < 0.1) continue;
        const double a = ar(rng);
        const cplx lhs = hurwitz_zeta(s, a) - std::exp(-s * std::log(a));
        CHECK(close(lhs, hurwitz_zeta(s, a + 1.0), 1e-12 * std::max(1.0, std::abs(lhs))));
        CHECK(close(std::conj(hurwitz_zeta(s, a)), hurwitz_zeta(std::conj(s), a), 1e-12));
        CHECK(hurwitz_tail_bound(s, a) < 1e-13);
    }
    for (int t = 0; t < 100; ++t) {
        const cplx s{sr(rng), si(rng)};
        if (std::abs(s - 1.0) < 0.1) continue;
        const double a = ar(rng) * 0.5;
        // zeta(s, a) - a^{-s} = zeta(s, a + 1) and zeta(s, a) = zeta(s, 2a)/... use the a + 1/2 split:
        // zeta(s, a) + zeta(s, a + 1/2) = 2^s zeta(s, 2a)
        const cplx lhs = hurwitz_zeta(s, a) + hurwitz_zeta(s, a + 0.5);
        const cplx rhs = std::exp(s * std::log(2.0)) * hurwitz_zeta(s, 2 * a);
        CHECK(close(lhs, rhs, 1e-11 * std::max(1.0, std::abs(rhs))));
    }
    EvalSettings ext;
    ext.precision = Precision::Extended;
    CHECK(close(hurwitz_zeta({0.5, 40}, 0.25, ext), hurwitz_zeta({0.5, 40}, 0.25), 1e-12));
}

TEST_CASE("dirichlet L reference values") {
    CharacterGroup g5(5), g3(3);
    const auto chi5 = g5.character(2);
    const auto chi3 = g3.character(1);
    CHECK(close(dirichlet_l(0.5, chi5), kLHalfChi5, 1e-13));
    CHECK(close(dirichlet_l(1.0, chi5), kL1Chi5, 1e-13));
    CHECK(close(dirichlet_l(1.0, chi5), 2 / std::sqrt(5.0) * std::log((1 + std::sqrt(5.0)) / 2), 1e-13));
    CHECK(close(dirichlet_l(0.5, chi3), kLHalfChi3, 1e-13));
    CHECK(close(dirichlet_l(2.0, g5.character(0)), pi * pi / 6 * (1 - 1.0 / 25), 1e-12));
    CHECK_THROWS_AS(dirichlet_l(1.0, g5.character(0)), PoleError);
    const auto chi = g5.character(1);
    CHECK(close(dirichlet_l(0.5, g5.character(g5.conj_index(1))), std::conj(dirichlet_l(0.5, chi)), 1e-13));
}

TEST_CASE("restricted zeta and L") {
    CHECK(close(zeta_q(0.7, 1), riemann_zeta(0.7), 1e-15));
    CHECK(close(zeta_q(2.0, 2), pi * pi / 8, 1e-14));
    CHECK(close(zeta_q(0.5, 6), (1 - std::pow(2, -0.5)) * (1 - std::pow(3, -0.5)) * kZetaHalf, 1e-14));
    CHECK_THROWS_AS(zeta_q(1.0, 6), PoleError);
    CharacterGroup g1(1), g5(5);
    CHECK(close(l_restricted(0.5, g1.character(0), 35), zeta_q(0.5, 35), 1e-14));
    const auto psi = g5.character(2);
    CHECK(close(l_restricted(0.5, psi, 35), dirichlet_l(0.5, psi) * (1.0 - psi(7) * std::pow(7, -0.5)), 1e-14));
    CHECK(close(l_restricted(0.5, psi, 5), dirichlet_l(0.5, psi), 1e-15));
    for (u64 q = 1; q <= 100; ++q) {
        CharacterGroup g(q);
        for (cplx s : {cplx(2, 0), cplx(0.5, 0), cplx(0.5, 1)})
            REQUIRE(close(dirichlet_l(s, g.character(0)), zeta_q(s, q), 1e-10));
    }
}

TEST_CASE("bulk L-values agree with the direct path") {
    for (u64 q = 1; q <= 500; q += (q < 60 ? 1 : 13)) {
        CharacterGroup g(q);
        for (cplx s : {cplx(0.5, 0), cplx(0.52, 0.01)}) {
            const auto fast = l_values(g, s);
            const auto slow = l_values_naive(g, s);
            for (std::size_t k = 0; k < g.size(); ++k) REQUIRE(close(fast[k], slow[k], 1e-12 * q));
            for (std::size_t k = 0; k < g.size(); k += 17) REQUIRE(close(fast[k], dirichlet_l(s, g.character(k)), 1e-12 * q));
        }
    }
}

TEST_CASE("functional equation for primitive characters") {
    for (u64 h = 3; h <= 100; ++h) {
        CharacterGroup g(h);
        const auto L = l_values(g, 0.5);
        const auto taus = g.gauss_sums();
        for (std::size_t k = 0; k < g.size(); ++k) {
            if (!g.is_primitive(k)) continue;
            const std::size_t kb = g.conj_index(k);
            const cplx iota = g.parity(k) == 1 ? cplx(1, 0) : cplx(0, 1);
            REQUIRE(close(taus[kb] * L[k], std::sqrt(double(h)) * iota * L[kb], 1e-8));
        }
    }
    for (u64 q = 3; q <= 50; ++q) {
        CharacterGroup g(q);
        for (std::size_t k = 0; k < g.size(); ++k) {
            if (!g.is_primitive(k)) continue;
            const auto chi = g.character(k);
            const auto chib = g.character(g.conj_index(k));
            for (cplx s : {cplx(0.3, 0), cplx(0.7, 0), cplx(0.5, 0.1)})
                REQUIRE(close(dirichlet_l(1.0 - s, chib), functional_factor(1.0 - s, chib) * dirichlet_l(s, chi), 1e-8));
        }
    }
}
