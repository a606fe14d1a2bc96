#include "dmom/characters.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

#include "dmom/errors.hpp"

namespace dmom {

namespace {

std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

u64 primitive_root_mod_prime(u64 p) {
    if (p == 2) return 1;
    const auto f = factorize(p - 1);
    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        for (const auto& pe : f.factors)
            if (powmod(g, (p - 1) / pe.prime, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw NumericError("no primitive root found");
}

}  // namespace

cplx e_frac(i64 num, u64 den) {
    i64 r = static_cast<i64>(residue(num, den));
    if (2 * r > static_cast<i64>(den)) r -= static_cast<i64>(den);
    if (r == 0) return {1.0, 0.0};
    if (2 * r == static_cast<i64>(den)) return {-1.0, 0.0};
    if (4 * r == static_cast<i64>(den)) return {0.0, 1.0};
    if (-4 * r == static_cast<i64>(den)) return {0.0, -1.0};
    const double t = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
    return {std::cos(t), std::sin(t)};
}

CharacterGroup::CharacterGroup(u64 q) : q_(q) {
    if (q == 0) throw DomainError("character_group: q must be positive");
    const auto fact = factorize(q);
    phi_ = euler_phi(fact);

    for (const auto& [p, e] : fact.factors) {
        Block b{p, e, 1, comps_.size(), 0, {}};
        for (int i = 0; i < e; ++i) b.prime_power *= p;
        const u64 pe = b.prime_power;
        b.local_log.assign(pe, {-1, -1});
        if (p == 2 && e == 1) {
            b.local_log[1] = {0, 0};
        } else if (p == 2 && e == 2) {
            comps_.push_back({2, 4, 3, 2});
            b.local_log[1] = {0, 0};
            b.local_log[3] = {1, 0};
        } else if (p == 2) {
            const u64 n5 = pe / 4;
            comps_.push_back({2, pe, pe - 1, 2});
            comps_.push_back({2, pe, 5, n5});
            u64 x = 1;
            for (u64 i = 0; i < n5; ++i) {
                b.local_log[x] = {0, static_cast<i64>(i)};
                b.local_log[pe - x] = {1, static_cast<i64>(i)};
                x = x * 5 % pe;
            }
        } else {
            u64 g = primitive_root_mod_prime(p);
            if (e >= 2 && powmod(g, p - 1, p * p) == 1) g += p;
            const u64 n = pe / p * (p - 1);
            comps_.push_back({p, pe, g, n});
            u64 x = 1;
            for (u64 i = 0; i < n; ++i) {
                b.local_log[x] = {static_cast<i64>(i), 0};
                x = mulmod(x, g, pe);
            }
        }
        b.n_comps = comps_.size() - b.first_comp;
        blocks_.push_back(std::move(b));
    }

    for (const auto& c : comps_) N_ = std::lcm(N_, c.order);
    strides_.assign(comps_.size(), 1);
    for (std::size_t i = comps_.size(); i-- > 1;) strides_[i - 1] = strides_[i] * comps_[i].order;

    flat_log_.assign(q, -1);
    unit_of_flat_.assign(phi_, 0);
    for (u64 a = 0; a < q; ++a) {
        if (gcd(a, q) != 1) continue;
        i64 flat = 0;
        for (const auto& b : blocks_) {
            const auto& l = b.local_log[a % b.prime_power];
            for (std::size_t j = 0; j < b.n_comps; ++j)
                flat += l[j] * static_cast<i64>(strides_[b.first_comp + j]);
        }
        flat_log_[a] = flat;
        unit_of_flat_[static_cast<u64>(flat)] = a;
    }

    roots_.resize(N_);
    for (u64 m = 0; m < N_; ++m) roots_[m] = e_frac(static_cast<i64>(m), N_);

    parity_.resize(phi_);
    conductor_.resize(phi_);
    for (std::size_t k = 0; k < phi_; ++k) {
        const auto lab = label(k);
        parity_[k] = value_exponent(k, -1) == 0 ? 1 : -1;
        u64 f = 1;
        for (const auto& b : blocks_) {
            const u64 j = block_conductor_exponent(b, lab);
            for (u64 i = 0; i < j; ++i) f *= b.prime;
        }
        conductor_[k] = f;
    }
}

// Least j such that the block part of the character is trivial on 1 + p^j Z.
u64 CharacterGroup::block_conductor_exponent(const Block& b, const std::vector<u64>& lab) const {
    bool trivial = true;
    for (std::size_t j = 0; j < b.n_comps; ++j)
        if (lab[b.first_comp + j] != 0) trivial = false;
    if (trivial) return 0;
    const int j0 = (b.prime == 2) ? 2 : 1;
    u64 pj = 1;
    for (int j = 0; j < j0; ++j) pj *= b.prime;
    for (int j = j0; j < b.exponent; ++j, pj *= b.prime) {
        const auto& l = b.local_log[(1 + pj) % b.prime_power];
        u64 m = 0;
        for (std::size_t i = 0; i < b.n_comps; ++i) {
            const auto& c = comps_[b.first_comp + i];
            m = (m + static_cast<u64>(l[i]) % c.order * lab[b.first_comp + i] % c.order * (N_ / c.order)) % N_;
        }
        if (m == 0) return static_cast<u64>(j);
    }
    return static_cast<u64>(b.exponent);
}

bool CharacterGroup::is_unit(i64 a) const { return flat_log_[residue(a, q_)] >= 0; }

std::vector<u64> CharacterGroup::log(i64 a) const {
    const i64 flat = flat_log_[residue(a, q_)];
    if (flat < 0) throw DomainError("log: residue is not a unit");
    return label(static_cast<std::size_t>(flat));
}

u64 CharacterGroup::exp(const std::vector<u64>& logs) const { return unit_of_flat_[index_of(logs)]; }

std::vector<u64> CharacterGroup::label(std::size_t index) const {
    std::vector<u64> lab(comps_.size());
    for (std::size_t i = 0; i < comps_.size(); ++i) lab[i] = (index / strides_[i]) % comps_[i].order;
    return lab;
}

std::size_t CharacterGroup::index_of(const std::vector<u64>& lab) const {
    if (lab.size() != comps_.size()) throw DomainError("index_of: label has wrong length");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < comps_.size(); ++i) idx += (lab[i] % comps_[i].order) * strides_[i];
    return idx;
}

std::size_t CharacterGroup::conj_index(std::size_t index) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < comps_.size(); ++i) {
        const u64 k = (index / strides_[i]) % comps_[i].order;
        idx += ((comps_[i].order - k) % comps_[i].order) * strides_[i];
    }
    return idx;
}

i64 CharacterGroup::value_exponent(std::size_t index, i64 a) const {
    const i64 flat = flat_log_[residue(a, q_)];
    if (flat < 0) return -1;
    u64 m = 0;
    for (std::size_t i = 0; i < comps_.size(); ++i) {
        const u64 n = comps_[i].order;
        const u64 k = (index / strides_[i]) % n;
        const u64 l = (static_cast<u64>(flat) / strides_[i]) % n;
        m = (m + k * l % n * (N_ / n)) % N_;
    }
    return static_cast<i64>(m);
}

cplx CharacterGroup::value(std::size_t index, i64 a) const {
    const i64 m = value_exponent(index, a);
    return m < 0 ? cplx{0.0, 0.0} : roots_[static_cast<u64>(m)];
}

u64 CharacterGroup::conductor_by_induction(std::size_t index) const {
    for (u64 f : divisors(q_)) {
        bool induced = true;
        for (u64 a = 1 % f; a < q_ && induced; a += f)
            if (flat_log_[a] >= 0 && value_exponent(index, static_cast<i64>(a)) != 0) induced = false;
        if (induced) return f;
    }
    return q_;
}

DirichletCharacter CharacterGroup::character(std::size_t index) const {
    if (index >= phi_) throw DomainError("character: index out of range");
    std::vector<i64> exps(q_);
    for (u64 a = 0; a < q_; ++a) exps[a] = value_exponent(index, static_cast<i64>(a));
    return DirichletCharacter(q_, label(index), parity_[index], conductor_[index], N_, std::move(exps));
}

std::vector<cplx> CharacterGroup::transform(const std::vector<cplx>& f) const {
    if (f.size() != q_) throw DomainError("transform: input length must equal the modulus");
    if (comps_.empty()) {
        cplx s = 0;
        for (u64 a = 0; a < q_; ++a)
            if (flat_log_[a] >= 0) s += f[a];
        return {s};
    }
    auto* buf = fftw_alloc_complex(phi_);
    for (u64 a = 0; a < q_; ++a) {
        if (flat_log_[a] < 0) continue;
        buf[flat_log_[a]][0] = f[a].real();
        buf[flat_log_[a]][1] = f[a].imag();
    }
    std::vector<int> dims;
    for (const auto& c : comps_) dims.push_back(static_cast<int>(c.order));
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::vector<cplx> out(phi_);
    for (u64 k = 0; k < phi_; ++k) out[k] = {buf[k][0], buf[k][1]};
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(buf);
    return out;
}

std::vector<cplx> CharacterGroup::transform_naive(const std::vector<cplx>& f) const {
    if (f.size() != q_) throw DomainError("transform: input length must equal the modulus");
    std::vector<cplx> out(phi_);
    for (std::size_t k = 0; k < phi_; ++k) {
        cplx s = 0;
        for (u64 a = 0; a < q_; ++a) {
            const i64 m = value_exponent(k, static_cast<i64>(a));
            if (m >= 0) s += roots_[static_cast<u64>(m)] * f[a];
        }
        out[k] = s;
    }
    return out;
}

std::vector<cplx> CharacterGroup::gauss_sums() const {
    std::vector<cplx> f(q_);
    for (u64 a = 0; a < q_; ++a) f[a] = e_frac(static_cast<i64>(a), q_);
    return transform(f);
}

std::shared_ptr<const CharacterGroup> character_group(u64 q) {
    static std::mutex mu;
    static std::map<u64, std::shared_ptr<const CharacterGroup>> cache;
    static u64 cached_size = 0;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(q); it != cache.end()) return it->second;
    }
    auto g = std::make_shared<const CharacterGroup>(q);
    std::lock_guard<std::mutex> lock(mu);
    if (cached_size > (u64{1} << 24)) {
        cache.clear();
        cached_size = 0;
    }
    auto [it, inserted] = cache.emplace(q, g);
    if (inserted) cached_size += q;
    return it->second;
}

DirichletCharacter::DirichletCharacter(u64 q, std::vector<u64> label, int parity, u64 conductor, u64 order,
                                       std::vector<i64> exponents)
    : q_(q), label_(std::move(label)), parity_(parity), conductor_(conductor), N_(order), exps_(std::move(exponents)) {}

bool DirichletCharacter::is_principal() const {
    for (u64 k : label_)
        if (k != 0) return false;
    return true;
}

cplx DirichletCharacter::operator()(i64 n) const {
    const i64 m = exponent_at(n);
    return m < 0 ? cplx{0.0, 0.0} : e_frac(m, N_);
}

std::vector<cplx> DirichletCharacter::value_table() const {
    std::vector<cplx> v(q_);
    for (u64 a = 0; a < q_; ++a) v[a] = (*this)(static_cast<i64>(a));
    return v;
}

cplx gauss_sum(const DirichletCharacter& chi) {
    const u64 q = chi.modulus();
    const u64 N = chi.root_order();
    cplx s = 0;
    for (u64 a = 0; a < q; ++a) {
        const i64 m = chi.exponent_at(static_cast<i64>(a));
        if (m < 0) continue;
        s += e_frac(m * static_cast<i64>(q) + static_cast<i64>(a * N), N * q);
    }
    return s;
}

namespace {

void require_coprime(u64 q, i64 m, i64 n) {
    if (gcd(residue(m, q), q) != 1 || gcd(residue(n, q), q) != 1)
        throw DomainError("orthogonality: arguments must be coprime to q");
}

i64 divisor_sum_closed(u64 q, i64 diff) {
    i64 s = 0;
    for (u64 d : divisors(q))
        if (residue(diff, d) == 0) s += static_cast<i64>(euler_phi(d)) * mobius(q / d);
    return s;
}

}  // namespace

cplx orthogonality_direct(u64 q, i64 m, i64 n) {
    require_coprime(q, m, n);
    const auto g = character_group(q);
    const u64 N = g->exponent();
    cplx s = 0;
    for (std::size_t k = 0; k < g->size(); ++k) {
        if (!g->is_primitive(k)) continue;
        s += g->root(static_cast<u64>(g->value_exponent(k, m)) + N - static_cast<u64>(g->value_exponent(k, n)));
    }
    return s;
}

i64 orthogonality_closed(u64 q, i64 m, i64 n) {
    require_coprime(q, m, n);
    return divisor_sum_closed(q, m - n);
}

cplx even_orthogonality_direct(u64 q, i64 m, i64 n) {
    require_coprime(q, m, n);
    const auto g = character_group(q);
    const u64 N = g->exponent();
    cplx s = 0;
    for (std::size_t k = 0; k < g->size(); ++k) {
        if (!g->is_primitive(k) || g->parity(k) != 1) continue;
        s += g->root(static_cast<u64>(g->value_exponent(k, m)) + N - static_cast<u64>(g->value_exponent(k, n)));
    }
    return s;
}

Rational even_orthogonality(u64 q, i64 m, i64 n) {
    require_coprime(q, m, n);
    return Rational(divisor_sum_closed(q, m - n) + divisor_sum_closed(q, m + n), 2);
}

cplx exp_sum_direct(u64 c, u64 d, i64 r) {
    if (c == 0 || d == 0) throw DomainError("exp_sum: c and d must be positive");
    if (gcd(residue(r, d), d) != 1) throw DomainError("exp_sum: r must be coprime to d");
    const u64 cd = c * d;
    cplx s = 0;
    for (u64 a = residue(r, d); a < cd; a += d)
        if (gcd(a, cd) == 1) s += e_frac(static_cast<i64>(a), cd);
    return s;
}

cplx exp_sum_closed(u64 c, u64 d, i64 r) {
    if (c == 0 || d == 0) throw DomainError("exp_sum: c and d must be positive");
    if (gcd(residue(r, d), d) != 1) throw DomainError("exp_sum: r must be coprime to d");
    if (gcd(c, d) != 1) return 0.0;
    const u64 cbar = mod_inverse(c % d, d);
    return static_cast<double>(mobius(c)) * e_frac(static_cast<i64>(mulmod(residue(r, d), cbar, d)), d);
}

}  // namespace dmom
