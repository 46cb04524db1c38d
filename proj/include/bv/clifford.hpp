#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "bv/poly.hpp"
#include "bv/rat.hpp"

namespace bv {

// 32x32 integer matrix; gamma matrices, the pairing and all antisymmetrized
// products are exact integer objects.
struct Mat32 {
    std::array<std::array<std::int64_t, 32>, 32> a{};
    static Mat32 identity();
    Mat32 operator*(const Mat32& o) const;
    Mat32 operator+(const Mat32& o) const;
    Mat32 operator-(const Mat32& o) const;
    Mat32 operator*(std::int64_t k) const;
    bool operator==(const Mat32& o) const { return a == o.a; }
    Mat32 transpose() const;
    bool is_zero() const;
};

using Mat16 = std::array<std::array<std::int64_t, 16>, 16>;

/// Explicit real Majorana-Weyl spinor machinery in signature (9,1).
///
/// The 32-dimensional spin space is H (x) Lambda* R^3 with basis index
/// 8*q + S: quaternion unit q in {1,i,j,k}, exterior monomial S as a bitmask
/// over {e1,e2,e3}. Even exterior degree is the left-handed half, odd the
/// right-handed half. All structure (gamma matrices, the symmetric pairing T,
/// the metric eta) is constructed from this realization, never postulated.
class Clifford {
public:
    Clifford();

    // gamma^mu, mu = 0..9, built from c^+-(e_i) and quaternion multiplications
    const Mat32& gamma(int mu) const { return gamma_[mu]; }
    // symmetric pairing T(alpha, beta), chirality-off-diagonal
    const Mat32& pairing() const { return T_; }
    // eta read off the anticommutators: diag(-1, +1, ..., +1) in index order 0..9
    int eta(int mu, int nu) const { return mu != nu ? 0 : (mu == 0 ? -1 : 1); }

    // antisymmetrized gamma^{mu_1...mu_k}; exact (the 1/k! divides exactly)
    Mat32 gamma_antisym(const std::vector<int>& indices) const;

    // chirality bases: positions of the 16 basis vectors of each half in the
    // 32-dim index space; the minus half is T-dual adapted so the pairing is
    // componentwise (see below)
    const std::array<int, 16>& plus_indices() const { return plus_idx_; }

    // Adapted 16x16 blocks. In the adapted bases the pairing between opposite
    // chiralities is the identity, so T^{(r)}(u, v) = sum P_AB u_A v_B with
    // P = pairing_block(...). Blocks stay integer because the raw pairing is
    // a signed permutation.
    // gamma block mapping chirality chi -> opposite, in adapted coordinates
    Mat16 gamma_block(int mu, int chi_plus) const;
    // pairing matrix of T(gamma^{indices} u, v) for u of the given chirality
    Mat16 pairing_block(const std::vector<int>& indices, int chi_plus_of_u) const;

    // embed adapted 16-vector into raw 32 coordinates / project back
    std::array<std::int64_t, 32> embed(int chi_plus, const std::array<std::int64_t, 16>& v) const;

    // verification helpers used by the check suites
    bool check_anticommutators() const;         // gamma^m gamma^n + gamma^n gamma^m = 2 eta
    bool check_pairing_symmetric() const;
    bool check_pairing_chirality_offdiag() const;
    bool check_pairing_nondegenerate() const;
    bool check_gamma_selfadjoint() const;       // T(gamma a, b) = T(a, gamma b)
    bool check_gamma2_antiadjoint() const;      // T(gamma^{mn} a, b) = -T(a, gamma^{mn} b)
    bool check_commute_lemma(int k) const;      // all index tuples at level k, all mu
    bool check_exterior_inner_symmetry() const; // <b,a> = (-1)^C(3,2) <a,b> on Lambda* R^3

private:
    std::array<Mat32, 10> gamma_;
    Mat32 T_;
    std::array<int, 16> plus_idx_, minus_idx_;
    // adapted minus basis vectors in raw coordinates (signed permutation of
    // the raw minus basis)
    std::array<std::array<std::int64_t, 32>, 16> minus_adapted_;
};

// process-wide instance; all matrices are computed once and shared
const Clifford& clifford();

/// Chirality-tagged 16-component vector of jet polynomials.
struct SpinorVector {
    bool plus_chirality = true;
    std::array<Poly, 16> c;

    static SpinorVector zero(const ModelAlgebra& m, bool plus);
    SpinorVector operator+(const SpinorVector& o) const;
    SpinorVector operator-(const SpinorVector& o) const;
    SpinorVector scaled(const Poly& left) const;   // left multiplication componentwise
    SpinorVector scaled(const Rat& k) const;
};

// gamma^mu acting on a spinor vector (flips chirality)
SpinorVector gamma_apply(const Clifford& cl, int mu, const SpinorVector& v);

// T^{mu_1...mu_k}(a, b) as a jet polynomial; bilinear with the components
// multiplied in the written order (Koszul signs arise from the product)
Poly spinor_pairing(const Clifford& cl, const std::vector<int>& indices,
                    const SpinorVector& a, const SpinorVector& b);

} // namespace bv
