#pragma once

#include <complex>

namespace dmom {

using cplx = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
// Laurent coefficients of zeta(1+x) = 1/x + sum (-1)^n gamma_n x^n / n!
inline constexpr double kStieltjes[4] = {
    0.57721566490153286060651209008240243,
    -0.07281584548367672486058637587490132,
    -0.009690363192872318484530386035212529,
    0.002053834420303345866160046542753384,
};

cplx log_gamma(cplx z);
cplx gamma_fn(cplx z);
cplx digamma(cplx z);
// Gamma'/Gamma(1/2) = -gamma - log 4
double digamma_half();

cplx expm1(cplx z);
cplx log1p(cplx z);
// expm1(z)/z, continuous at 0
cplx expm1_over(cplx z);

}  // namespace dmom
