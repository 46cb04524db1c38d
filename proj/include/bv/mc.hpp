#pragma once

#include <optional>

#include "bv/tw.hpp"

namespace bv {

/// Bounds for the constructive linear solve. The candidate space is the
/// momentum-localized subalgebra generated by the momenta, the antifields
/// x+, e+, c+ and the composite spinor tower (the supersymmetry-invariant
/// subalgebra), within the stated caps. Candidates whose filtration weight
/// exceeds the cutoff cannot influence the truncated equation and are
/// dropped up front.
struct DegreeBounds {
    int max_jet = 1;
    int max_psi_factors = 2;      // composite spinor factors per monomial
    int max_anti_factors = 2;     // x+/e+/c+ jet factors per monomial
    int max_p_factors = 1;        // polynomial momentum factors
    int laurent_total = 3;        // total inverse-momentum depth per monomial
    int laurent_per_chart = 2;
    int max_form_degree = 2;
    int K = 4;
    size_t basis_cap = 60000;     // per tuple and form degree
};

struct SolveReport {
    enum Status { solved, infeasible_at_bounds, empty_basis, cap_exceeded } status;
    size_t unknowns = 0;
    size_t equations = 0;
    size_t rank = 0;
    std::optional<TWCochain> solution;
    std::string note;
};

/// The quadratic right-hand side for the next order of the curved equation:
/// -1/2 sum_{j+k=n-1} (G_j, G_k), assembled chartwise.
TWCochain mc_rhs(const SuperModel& M, const std::vector<const TWCochain*>& lower, int K);

// every value of (delta+s)c lies in im D + F^K
bool closed_mod_exact(const SuperModel& M, const TWCochain& c, int K, std::string* err = nullptr);

/// Bounded-degree exact solve of (delta+s)X = -target modulo im D per chart
/// tuple and form component, with face compatibility across tuples. Returns
/// a verified solution (residual re-substituted and checked) or an honest
/// infeasibility report for these bounds.
SolveReport solve_linear(const SuperModel& M, const TWCochain& target,
                         const std::vector<ChartTuple>& tuples, int total_degree,
                         const DegreeBounds& bounds);

/// Membership in the momentum-localized supersymmetry-invariant subalgebra:
/// eliminate the tower antifields and the positive-jet thetas in favor of the
/// composite spinors; membership is then syntactic.
class AStar {
public:
    explicit AStar(const SuperModel& M);

    bool contains(const Poly& f) const;
    // round-trip helpers for the tests
    Poly to_composite_coordinates(const Poly& f) const;   // rewrite
    Poly from_composite_coordinates(const Poly& f) const; // expand back

    const ModelAlgebra& extended_algebra() const { return *ext_; }
    Poly psi_hat(int n, int comp, int jet = 0) const;

private:
    const SuperModel& M_;
    std::shared_ptr<const ModelAlgebra> ext_;
    // generator translation tables between the two algebras
    Poly lift(const Poly& f) const;   // superparticle -> extended, by names
    Poly lower(const Poly& f) const;  // extended -> superparticle, by names
    friend SolveReport solve_linear(const SuperModel&, const TWCochain&,
                                    const std::vector<ChartTuple>&, int, const DegreeBounds&);
};

} // namespace bv
