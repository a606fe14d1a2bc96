#pragma once

#include <complex>
#include <vector>

#include "dmom/characters.hpp"

namespace dmom {

enum class Precision { Double, Extended };

struct EvalSettings {
    int em_cutoff = 0;  // 0: max(20, ceil(2|Im s|) + 10)
    int bernoulli_terms = 12;
    double target_abs_error = 1e-12;
    Precision precision = Precision::Double;
};

// Points closer than this to s = 1 are rejected for functions with a pole there.
inline constexpr double kPoleGuard = 1e-8;

cplx hurwitz_zeta(cplx s, double a, const EvalSettings& cfg = {});
// zeta(s, a) - 1/(s - 1); finite at s = 1.
cplx hurwitz_zeta_regular(cplx s, double a, const EvalSettings& cfg = {});
// Size of the first omitted Euler-Maclaurin correction.
double hurwitz_tail_bound(cplx s, double a, const EvalSettings& cfg = {});

cplx riemann_zeta(cplx s, const EvalSettings& cfg = {});
cplx zeta_q(cplx s, u64 q, const EvalSettings& cfg = {});

cplx dirichlet_l(cplx s, const DirichletCharacter& chi, const EvalSettings& cfg = {});
// L(s, psi) with the Euler factors at every p | q removed.
cplx l_restricted(cplx s, const DirichletCharacter& psi, u64 q, const EvalSettings& cfg = {});

// Entry a mod q holds zeta(s, a/q) - 1/(s-1) for a = 1..q.
std::vector<cplx> hurwitz_vector(cplx s, u64 q, const EvalSettings& cfg = {});
// L(s, chi) for every character of g, in index order.
std::vector<cplx> l_values(const CharacterGroup& g, cplx s, const EvalSettings& cfg = {});
std::vector<cplx> l_values_naive(const CharacterGroup& g, cplx s, const EvalSettings& cfg = {});

// X(w, psi) with L(w, psi) = X(w, psi) L(1 - w, conj psi) for primitive psi.
cplx functional_factor(cplx w, const DirichletCharacter& psi);

}  // namespace dmom
