#pragma once

#include "dmom/lfunc.hpp"

namespace dmom {

// gamma - log 8 pi and 2 zeta(1/2)^2
double hb_A();
double hb_B();

// phi*(q)/2 (zeta_q(1+x) + X+(q,alpha,beta) zeta_q(1-x)), x = alpha + beta.
// |x| <= 1e-6 is routed to main_even_limit.
cplx main_even(u64 q, cplx alpha, cplx beta);
// Same bracket with the pole at x = 0 removed analytically; needs |x| < 1e-3.
cplx main_even_limit(u64 q, cplx alpha, cplx beta);

// The sqrt(q)-scale sum over unitary splittings q = cd and even psi mod min(c, d).
cplx secondary_even(u64 q, cplx alpha, cplx beta, const EvalSettings& cfg = {});
double corollary6_secondary(u64 q, const EvalSettings& cfg = {});

// Zero shifts only.
double even_main(u64 q);
double odd_main(u64 q);
double allprim_main(u64 q);
double odd_secondary(u64 q, const EvalSettings& cfg = {});
// Both odd sums over psi mod c and psi mod d for every splitting, as first displayed.
double odd_secondary_literal(u64 q, const EvalSettings& cfg = {});
double allprim_secondary(u64 q, const EvalSettings& cfg = {});

double hb_main(double k);

// sqrt(p/h) S(h,-p) + (p/sqrt h)(log(p/h) + A) + (B/2) sqrt p
double thm10_rhs(u64 p, u64 h, double s_hp);

// Four-term error scale with unit constants.
double error_budget(u64 q, double D, double eps = 0.05);
// Divisors of q in (q^{1/2-eps}, q^{1/2+eps}).
u64 near_sqrt_divisors(u64 q, double eps = 0.05);

struct MainTermBreakdown {
    u64 q = 0;
    cplx alpha = 0.0;
    cplx beta = 0.0;
    cplx leading = 0.0;
    cplx secondary = 0.0;
    double error_budget = 0.0;
    double D = 0.0;
};

// D <= 0 means sqrt(q).
MainTermBreakdown main_terms_even(u64 q, cplx alpha, cplx beta, double D = 0.0, const EvalSettings& cfg = {});

}  // namespace dmom
