#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "dmom/arith.hpp"

namespace dmom {

using cplx = std::complex<double>;

// Trapezoid rule on the vertical line Re s = line, |Im s| <= half_width.
// Without an explicit line, Re s follows the saddle log|x|/2 on a grid
// 0.25 + 0.5 Z (never closer than 0.75 to the pole at 0).
struct QuadratureOptions {
    double step = 0.1;
    double half_width = 12.0;
    std::optional<double> line;
};

struct ShiftPair {
    cplx alpha;
    cplx beta;
    u64 modulus_hint = 3;

    // |alpha|, |beta| <= 5/log(max(q,3)); a soft guard.
    bool within_guard() const;
    // alpha + beta = +-1 is rejected outright.
    void validate() const;
};

cplx f_factor(cplx s, cplx alpha, cplx beta);
cplx khat(cplx s, cplx alpha, cplx beta);
// Residue of khat at s = 0.
cplx residue_r(cplx beta);

// K_{alpha,beta}(x).  Complex x is accepted (|arg x| <= pi/2) for contour rotation.
cplx kernel_K(cplx x, cplx alpha, cplx beta, const QuadratureOptions& opt = {});

// 2 Gamma(1/2-beta) cos(pi/2 (1/2-beta)) Gamma(1/2+beta+delta) sin(pi/2 (1/2-beta-delta))
cplx script_k_combined(cplx delta, cplx alpha, cplx beta);
// Integral of (e^{ix} + e^{-ix}) K_{alpha,beta}(x) x^delta over (0, inf), numerically.
cplx script_k_quadrature(cplx delta, cplx alpha, cplx beta);

cplx x_plus(u64 q, cplx alpha, cplx beta);
cplx x_minus(u64 q, cplx alpha, cplx beta);

// Gamma(s+1/2) e^{-i pi s/2} e^{s^2} cos(pi s)/s
cplx hb_ghat(cplx s);
cplx hb_kernel_K(cplx x, const QuadratureOptions& opt = {});
// Mellin transform of hb_kernel_K.
cplx hb_khat(cplx s);
// (1/2 pi) * integral of |hb_ghat(c + it)| dt, so that |K(x)| <= bound * x^{-c}.
double hb_kernel_bound(double c);

// Tabulated kernel for repeated evaluation at real x > 0.
class HbKernelTable {
  public:
    explicit HbKernelTable(const QuadratureOptions& opt = {});
    cplx operator()(double x) const;

  private:
    struct Band {
        double c;
        std::vector<double> re, im;  // hb_ghat(c + i t_j) * h / (2 pi)
    };
    const Band& band_for(double log_x) const;

    QuadratureOptions opt_;
    std::vector<Band> bands_;
};

// (1/2 pi i) * circle integral of f around center.
cplx contour_residue(const std::function<cplx(cplx)>& f, cplx center, double radius, int nodes = 64);

// Tanh-sinh quadrature on [a, b]; tolerates integrable endpoint singularities.
cplx tanh_sinh(const std::function<cplx(double)>& f, double a, double b, double tol = 1e-12);

}  // namespace dmom
