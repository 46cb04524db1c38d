#pragma once

#include <cstdint>

#include "bv/models.hpp"

namespace bv {

/// Exterior algebra on the dual of the Lorentz algebra so(9,1): 45 odd
/// degree-1 generators eps_{mu nu} = -eps_{nu mu}, 0 <= mu < nu <= 9, with
/// the differential dual to the bracket. Elements carry jet-polynomial
/// coefficients.
class LorentzCE {
public:
    LorentzCE();

    static int pair_index(int mu, int nu);                // mu < nu
    static std::pair<int, int> pair_of(int index);
    static constexpr int num_generators = 45;

    // structure constants [rho_a, rho_b] = sum_c f(a,b,c) rho_c
    int structure_constant(int a, int b, int c) const { return f_[a][b][c]; }

private:
    std::int8_t f_[45][45][45];
};

const LorentzCE& lorentz_ce();

/// Sum of (eps-monomial) x (density) terms; eps-monomials are bitmasks over
/// the 45 generators, canonically ordered by index with Koszul signs.
class CEElement {
public:
    explicit CEElement(const ModelAlgebra* m = nullptr) : model_(m) {}

    const std::map<std::uint64_t, Poly>& terms() const { return terms_; }
    bool is_zero() const;
    void add(std::uint64_t emask, const Poly& p);
    CEElement operator+(const CEElement& o) const;
    CEElement operator-(const CEElement& o) const;
    CEElement operator*(const Rat& c) const;

    CEElement truncated(int K) const;
    Poly component(std::uint64_t emask) const;

private:
    const ModelAlgebra* model_;
    std::map<std::uint64_t, Poly> terms_;
};

// the Chevalley-Eilenberg differential; acts on the eps factors only
CEElement ce_diff(const CEElement& x);

// bracket with densities on the left of the eps factors:
// [x1 (x) w1, x2 (x) w2] = (-1)^(deg w1 pa x2) [x1,x2] (x) w1 w2
CEElement ce_bracket(const CEElement& a, const CEElement& b, int K = INT32_MAX);

// d squares to zero on every generator (exact structure-constant arithmetic)
bool ce_d_squared_zero();

struct LorentzCheckOutcome {
    bool currents_closed = true;      // s M ∈ im D + F^K for the tested pairs
    bool algebra_matches = true;      // (M_a, M_b) = f_ab^c M_c mod (im D + F^K)
    bool translation_invariant = true;  // (M, D) ≡ 0 for the tested pairs
    std::string detail;
};

// the eps-degree-1 and eps-degree-2 components of the extended master
// equation, realized as the listed functional identities
LorentzCheckOutcome extended_master_check(const SuperModel& M,
                                          const std::vector<std::pair<int, int>>& pairs,
                                          int spot_translation_pairs = 5);

} // namespace bv
