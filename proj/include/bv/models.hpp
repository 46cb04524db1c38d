#pragma once

#include <memory>

#include "bv/bracket.hpp"
#include "bv/clifford.hpp"
#include "bv/poly.hpp"
#include "bv/vf.hpp"

namespace bv {

/// First-order worldline particle coupled to a graviton and a
/// reparametrization ghost. The differential is derived from the action via
/// the Hamiltonian construction and cross-checked, generator by generator,
/// against the closed-form table; a mismatch is a fatal construction error.
class ParticleModel {
public:
    explicit ParticleModel(int dim = 10);

    const ModelAlgebra& algebra() const { return *algebra_; }
    int dim() const { return dim_; }
    int eta(int mu, int nu) const { return mu != nu ? 0 : (mu == 0 ? -1 : 1); }

    const Poly& action() const { return S_; }            // S
    const Poly& translation_current() const { return D_; }  // D
    const Poly& covariance_seed() const { return G_; }    // G = x+.p+ + e c+
    const EvolutionaryVF& s() const { return s_; }

    Poly gen(const std::string& name, int comp = 0, int jet = 0) const;
    // the ghost -1 cocycle of the gauge symmetry: De+ - eta x+ p
    Poly gauge_cocycle() const;

private:
    int dim_;
    std::shared_ptr<const ModelAlgebra> algebra_;
    Poly S_, D_, G_;
    EvolutionaryVF s_;
};

/// The ten-dimensional superparticle: the particle catalog extended by the
/// spinor towers theta_n, with the differential given by its closed-form
/// action on generators. Antifield images of the tower are derived from the
/// recursion for the composite spinors. Infinite tower sums are cut at the
/// instantiated range; with N >= K+2 every identity below is exact mod F^K.
class SuperModel {
public:
    SuperModel(int K = 6, int N = 8);

    const ModelAlgebra& algebra() const { return *algebra_; }
    const Clifford& cliff() const { return *cl_; }
    int K() const { return K_; }
    int N() const { return N_; }
    int eta(int mu, int nu) const { return mu != nu ? 0 : (mu == 0 ? -1 : 1); }

    const EvolutionaryVF& s() const { return s_; }

    Poly gen(const std::string& name, int comp = 0, int jet = 0) const;
    Poly zero() const { return Poly(algebra_.get()); }
    Poly rational(const Rat& c) const { return Poly(algebra_.get(), c); }

    // generator-valued spinor multiplets
    SpinorVector theta(int n, int jet = 0) const;
    SpinorVector theta_plus(int n, int jet = 0) const;

    // composite spinors Psi_n, defined for -N-1 <= n <= N-2
    SpinorVector psi(int n) const;
    int psi_min() const { return -N_ - 1; }
    int psi_max() const { return N_ - 2; }

    // named densities
    Poly density_D() const;                  // translation current with tower tail
    SpinorVector density_Q() const;          // supersymmetry current, ghost -1
    Poly density_M(int mu, int nu) const;    // Lorentz currents, ghost -1
    Poly density_G_seed() const;             // x+.p+ + e c+

    // theta corrections of the chart-local observables (per chart alpha):
    // s x^mu = -eta c p + H^mu and c-correction F_alpha = 2 H^alpha
    Poly x_correction(int alpha, int mu) const;   // R^{alpha mu}
    Poly c_correction(int alpha) const;           // F_alpha

    // Laurent coefficient 1/(2 p^alpha) used by chart localizations
    Poly half_inv_p(int alpha) const;

    // x+_mu gamma^mu v and p_mu gamma^mu v contractions
    SpinorVector contract_gamma(const std::string& field, const SpinorVector& v) const;

private:
    void build_differential();

    int K_, N_;
    std::shared_ptr<const ModelAlgebra> algebra_;
    const Clifford* cl_;
    EvolutionaryVF s_;
};

inline int binom2(int n) { return n * (n - 1) / 2; }
inline int sign_binom2(int n) { return (binom2(n) % 2 + 2) % 2 ? -1 : 1; }

} // namespace bv
