#include "dmom/special.hpp"

#include <cmath>
#include <numbers>

#include "dmom/errors.hpp"

namespace dmom {

namespace {

constexpr double kPi = std::numbers::pi;

// B_2k for k = 1..10
constexpr double kBernoulli[10] = {
    1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6, -3617.0 / 510, 43867.0 / 798,
    -174611.0 / 330,
};

constexpr double kShift = 15.0;

bool near_nonpositive_integer(cplx z) {
    if (z.real() > 0.5) return false;
    const double r = std::round(z.real());
    return std::abs(z - cplx(r, 0.0)) < 1e-14;
}

}  // namespace

cplx log_gamma(cplx z) {
    if (near_nonpositive_integer(z)) throw PoleError("log_gamma: pole at a nonpositive integer");
    if (z.real() < 0.5)
        return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma(1.0 - z);
    cplx shift_sum = 0.0;
    cplx w = z;
    while (w.real() < kShift) {
        shift_sum += std::log(w);
        w += 1.0;
    }
    const cplx inv = 1.0 / w, inv2 = inv * inv;
    cplx series = 0.0, p = inv;
    for (int k = 1; k <= 10; ++k) {
        series += kBernoulli[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * p;
        p *= inv2;
    }
    return (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * kPi) + series - shift_sum;
}

cplx gamma_fn(cplx z) { return std::exp(log_gamma(z)); }

cplx digamma(cplx z) {
    if (near_nonpositive_integer(z)) throw PoleError("digamma: pole at a nonpositive integer");
    if (z.real() < 0.5) return digamma(1.0 - z) - kPi / std::tan(kPi * z);
    cplx shift_sum = 0.0;
    cplx w = z;
    while (w.real() < kShift) {
        shift_sum += 1.0 / w;
        w += 1.0;
    }
    const cplx inv = 1.0 / w, inv2 = inv * inv;
    cplx series = 0.0, p = inv2;
    for (int k = 1; k <= 10; ++k) {
        series += kBernoulli[k - 1] / (2.0 * k) * p;
        p *= inv2;
    }
    return std::log(w) - 0.5 * inv - series - shift_sum;
}

double digamma_half() { return -kEulerGamma - 2.0 * std::numbers::ln2; }

cplx expm1(cplx z) {
    const double x = z.real(), y = z.imag();
    const double s = std::sin(0.5 * y);
    return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

cplx log1p(cplx z) {
    const double x = z.real(), y = z.imag();
    return {0.5 * std::log1p(2.0 * x + x * x + y * y), std::atan2(y, 1.0 + x)};
}

cplx expm1_over(cplx z) {
    if (std::abs(z) < 1e-5) return 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0;
    return expm1(z) / z;
}

}  // namespace dmom
