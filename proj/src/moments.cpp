#include "dmom/moments.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "dmom/errors.hpp"
#include "dmom/kernels.hpp"
#include "dmom/parallel.hpp"

namespace dmom {

namespace {

constexpr double kPerLBudget = 1e-12;

struct ClassSums {
    std::vector<cplx> even, odd, all_primitive, all;
};

ClassSums class_terms(u64 q, cplx alpha, cplx beta, const EvalSettings& cfg) {
    const auto g = character_group(q);
    const auto la = l_values(*g, 0.5 + alpha, cfg);
    const auto lb = (beta == alpha) ? la : l_values(*g, 0.5 + beta, cfg);
    ClassSums out;
    for (std::size_t k = 0; k < g->size(); ++k) {
        const cplx t = la[k] * lb[g->conj_index(k)];
        out.all.push_back(t);
        if (!g->is_primitive(k)) continue;
        out.all_primitive.push_back(t);
        (g->parity(k) == 1 ? out.even : out.odd).push_back(t);
    }
    return out;
}

}  // namespace

std::string to_string(Parity p) {
    switch (p) {
        case Parity::Even: return "even";
        case Parity::Odd: return "odd";
        case Parity::AllPrimitive: return "all-primitive";
        case Parity::AllCharacters: return "all-characters";
    }
    return "?";
}

Parity parse_parity(const std::string& s) {
    if (s == "even") return Parity::Even;
    if (s == "odd") return Parity::Odd;
    if (s == "all-primitive" || s == "all") return Parity::AllPrimitive;
    if (s == "all-characters") return Parity::AllCharacters;
    throw DomainError("unknown parity class: " + s);
}

MomentValue shifted_moment(u64 q, cplx alpha, cplx beta, Parity parity, const EvalSettings& cfg) {
    if (q == 0) throw DomainError("moment: q must be positive");
    if (parity != Parity::AllCharacters && q < 3)
        throw DomainError("moment: primitive parity classes need q >= 3");
    ShiftPair{alpha, beta, q}.validate();
    const auto terms = class_terms(q, alpha, beta, cfg);
    const std::vector<cplx>* v = nullptr;
    switch (parity) {
        case Parity::Even: v = &terms.even; break;
        case Parity::Odd: v = &terms.odd; break;
        case Parity::AllPrimitive: v = &terms.all_primitive; break;
        case Parity::AllCharacters: v = &terms.all; break;
    }
    MomentValue m;
    m.q = q;
    m.alpha = alpha;
    m.beta = beta;
    m.parity = parity;
    m.value = pairwise_sum(*v);
    m.character_count = v->size();
    m.est_numeric_error = 2.0 * static_cast<double>(m.character_count) * static_cast<double>(q) * kPerLBudget;
    return m;
}

MomentValue moment_even(u64 q, cplx alpha, cplx beta, const EvalSettings& cfg) {
    return shifted_moment(q, alpha, beta, Parity::Even, cfg);
}
MomentValue moment_odd(u64 q, cplx alpha, cplx beta, const EvalSettings& cfg) {
    return shifted_moment(q, alpha, beta, Parity::Odd, cfg);
}
MomentValue moment_all_primitive(u64 q, cplx alpha, cplx beta, const EvalSettings& cfg) {
    return shifted_moment(q, alpha, beta, Parity::AllPrimitive, cfg);
}
MomentValue moment_all_characters(u64 q, const EvalSettings& cfg) {
    return shifted_moment(q, 0.0, 0.0, Parity::AllCharacters, cfg);
}

double TRecover::all_characters(u64 q) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (auto it = cache_.find(q); it != cache_.end()) return it->second;
    }
    const double v = moment_all_characters(q, cfg_).value.real();
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(q, v);
    return v;
}

double TRecover::operator()(u64 k) {
    if (k == 0) throw DomainError("t_recover: k must be positive");
    std::vector<double> terms;
    for (u64 d : divisors(k))
        terms.push_back(static_cast<double>(d) / static_cast<double>(euler_phi(d)) * all_characters(d));
    return pairwise_sum(terms);
}

double t_recover(u64 k, const EvalSettings& cfg) {
    TRecover r(cfg);
    return r(k);
}

namespace {

const std::array<double, 7>& kernel_bounds() {
    static const std::array<double, 7> b = [] {
        std::array<double, 7> out{};
        for (int c = 2; c <= 8; ++c) out[c - 2] = hb_kernel_bound(c);
        return out;
    }();
    return b;
}

const HbKernelTable& hb_table() {
    static const HbKernelTable table;
    return table;
}

}  // namespace

// |K(x)| <= B(c) x^{-c} and sum_{n>N} d(n) n^{-s} <= s N^{1-s} ((log N + 1)/(s-1) + 1/(s-1)^2).
double t_series_tail_bound(u64 k, u64 n_max) {
    const double kk = static_cast<double>(k);
    const double N = static_cast<double>(std::max<u64>(n_max, 2));
    const auto& B = kernel_bounds();
    double best = INFINITY;
    for (int c = 2; c <= 8; ++c) {
        const double s = 0.5 + c;
        const double dsum = s * std::pow(N, 1.0 - s) * ((std::log(N) + 1.0) / (s - 1.0) + 1.0 / ((s - 1.0) * (s - 1.0)));
        const double bound = 4.0 * std::sqrt(kk / (2.0 * std::numbers::pi)) * B[c - 2] *
                             std::pow(2.0 * std::numbers::pi / kk, -c) * dsum;
        best = std::min(best, bound);
    }
    return best;
}

TSeries t_series(u64 k, double cutoff, int threads) {
    if (k == 0) throw DomainError("t_series: k must be positive");
    const double kk = static_cast<double>(k);
    const double two_pi = 2.0 * std::numbers::pi;
    auto n_for = [&](double x) { return static_cast<u64>(std::floor(x * kk / two_pi)); };
    if (cutoff <= 0.0) {
        cutoff = 1000.0;
        while (t_series_tail_bound(k, n_for(cutoff)) > 1e-7) {
            cutoff *= 2.0;
            if (cutoff > 1e7) throw NumericError("t_series: no cutoff certifies the tail");
        }
    }
    TSeries r;
    r.cutoff = cutoff;
    const u64 N = n_for(cutoff);
    r.terms = N;
    r.tail_bound = t_series_tail_bound(k, N);
    if (r.tail_bound > 1e-6) throw NumericError("t_series: cutoff too small to certify the tail below 1e-6");
    const auto d = divisor_count_table(N);
    const auto& K = hb_table();
    constexpr u64 chunk = 1 << 14;
    const std::size_t n_chunks = static_cast<std::size_t>((N + chunk - 1) / chunk);
    std::vector<double> partial(n_chunks, 0.0);
    parallel_for(n_chunks, threads, [&](std::size_t c) {
        const u64 lo = 1 + c * chunk, hi = std::min<u64>(N, lo + chunk - 1);
        std::vector<double> v;
        v.reserve(hi - lo + 1);
        for (u64 n = lo; n <= hi; ++n) {
            const double nd = static_cast<double>(n);
            v.push_back(d[n] / std::sqrt(nd) * K(two_pi * nd / kk).real());
        }
        partial[c] = pairwise_sum(v);
    });
    r.value = 4.0 * std::sqrt(kk / two_pi) * pairwise_sum(partial);
    return r;
}

cplx twisted_moment_complex(u64 p, i64 h, const EvalSettings& cfg) {
    if (!is_prime(p)) throw DomainError("twisted_moment: p must be prime");
    if (residue(h, p) == 0) throw DomainError("twisted_moment: p must not divide h");
    const auto g = character_group(p);
    const auto L = l_values(*g, 0.5, cfg);
    const u64 abs_h = static_cast<u64>(h < 0 ? -h : h);
    std::vector<cplx> terms;
    for (std::size_t k = 0; k < g->size(); ++k) {
        if (!g->is_primitive(k)) continue;
        cplx chi_h = g->value(k, static_cast<i64>(abs_h % p));
        if (h < 0) chi_h *= static_cast<double>(g->parity(k));
        terms.push_back(std::norm(L[k]) * chi_h);
    }
    return pairwise_sum(terms);
}

double twisted_moment(u64 p, i64 h, const EvalSettings& cfg) {
    const cplx s = twisted_moment_complex(p, h, cfg);
    if (std::abs(s.imag()) >= 1e-9) throw NumericError("twisted_moment: imaginary part exceeds 1e-9");
    return s.real();
}

}  // namespace dmom
