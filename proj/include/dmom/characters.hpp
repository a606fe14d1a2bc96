#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

#include "dmom/arith.hpp"

namespace dmom {

using cplx = std::complex<double>;

// e(num/den) = exp(2 pi i num/den), reduced exactly before the trig call.
cplx e_frac(i64 num, u64 den);

struct CyclicComponent {
    u64 prime;
    u64 prime_power;
    u64 generator;  // residue mod prime_power
    u64 order;
};

class DirichletCharacter;

// Dual group of (Z/qZ)*.  Characters are indexed 0..phi(q)-1 in lexicographic
// label order; label k sends the unit with log vector l to e(sum k_i l_i / n_i).
class CharacterGroup {
  public:
    explicit CharacterGroup(u64 q);

    u64 modulus() const { return q_; }
    u64 order() const { return phi_; }
    std::size_t size() const { return static_cast<std::size_t>(phi_); }
    // Values of every character are N-th roots of unity, N = lcm of component orders.
    u64 exponent() const { return N_; }
    const std::vector<CyclicComponent>& components() const { return comps_; }

    bool is_unit(i64 a) const;
    std::vector<u64> log(i64 a) const;
    u64 exp(const std::vector<u64>& logs) const;

    std::vector<u64> label(std::size_t index) const;
    std::size_t index_of(const std::vector<u64>& label) const;
    std::size_t conj_index(std::size_t index) const;
    std::size_t principal_index() const { return 0; }

    // chi_index(a) = e(m/N); returns -1 when gcd(a, q) > 1.
    i64 value_exponent(std::size_t index, i64 a) const;
    cplx value(std::size_t index, i64 a) const;
    cplx root(u64 m) const { return roots_[m % N_]; }

    int parity(std::size_t index) const { return parity_[index]; }
    u64 conductor(std::size_t index) const { return conductor_[index]; }
    bool is_primitive(std::size_t index) const { return conductor_[index] == q_; }
    // Literal definition: least f | q with chi(a) = 1 for every unit a = 1 mod f.
    u64 conductor_by_induction(std::size_t index) const;

    DirichletCharacter character(std::size_t index) const;

    // out[k] = sum over units a of chi_k(a) f[a], f indexed by residue 0..q-1.
    std::vector<cplx> transform(const std::vector<cplx>& f) const;
    std::vector<cplx> transform_naive(const std::vector<cplx>& f) const;

    std::vector<cplx> gauss_sums() const;

  private:
    struct Block {
        u64 prime;
        int exponent;
        u64 prime_power;
        std::size_t first_comp;
        std::size_t n_comps;
        std::vector<std::array<i64, 2>> local_log;  // per residue mod prime_power
    };

    u64 block_conductor_exponent(const Block& b, const std::vector<u64>& label) const;

    u64 q_;
    u64 phi_;
    u64 N_ = 1;
    std::vector<CyclicComponent> comps_;
    std::vector<Block> blocks_;
    std::vector<u64> strides_;
    std::vector<i64> flat_log_;      // residue -> row-major log index, -1 if not a unit
    std::vector<u64> unit_of_flat_;  // inverse
    std::vector<cplx> roots_;
    std::vector<int> parity_;
    std::vector<u64> conductor_;
};

std::shared_ptr<const CharacterGroup> character_group(u64 q);

class DirichletCharacter {
  public:
    DirichletCharacter(u64 q, std::vector<u64> label, int parity, u64 conductor, u64 order,
                       std::vector<i64> exponents);

    u64 modulus() const { return q_; }
    const std::vector<u64>& label() const { return label_; }
    int parity() const { return parity_; }
    u64 conductor() const { return conductor_; }
    bool is_primitive() const { return conductor_ == q_; }
    bool is_principal() const;
    u64 root_order() const { return N_; }

    i64 exponent_at(i64 n) const { return exps_[residue(n, q_)]; }
    cplx operator()(i64 n) const;
    std::vector<cplx> value_table() const;

  private:
    u64 q_;
    std::vector<u64> label_;
    int parity_;
    u64 conductor_;
    u64 N_;
    std::vector<i64> exps_;
};

cplx gauss_sum(const DirichletCharacter& chi);

cplx orthogonality_direct(u64 q, i64 m, i64 n);
i64 orthogonality_closed(u64 q, i64 m, i64 n);
cplx even_orthogonality_direct(u64 q, i64 m, i64 n);
Rational even_orthogonality(u64 q, i64 m, i64 n);

// Sum of e(a/(cd)) over a mod cd with gcd(a, cd) = 1 and a = r mod d.
cplx exp_sum_direct(u64 c, u64 d, i64 r);
cplx exp_sum_closed(u64 c, u64 d, i64 r);

}  // namespace dmom
