#include "bv/models.hpp"

#include <sstream>

namespace bv {

namespace {

std::vector<FieldDescriptor> particle_catalog(int dim) {
    std::vector<FieldDescriptor> cat;
    cat.push_back({"x", dim, 0, Parity::even, false, std::nullopt, '^'});
    cat.push_back({"p", dim, 0, Parity::even, false, std::nullopt, '_'});
    cat.push_back({"e", 1, 0, Parity::even, true, std::nullopt, '_'});
    cat.push_back({"c", 1, 1, Parity::odd, false, std::nullopt, '_'});
    cat.push_back({"x+", dim, -1, Parity::odd, false, "x", '_'});
    cat.push_back({"p+", dim, -1, Parity::odd, false, "p", '^'});
    cat.push_back({"e+", 1, -1, Parity::odd, false, "e", '_'});
    cat.push_back({"c+", 1, -2, Parity::even, false, "c", '_'});
    return cat;
}

} // namespace

ParticleModel::ParticleModel(int dim)
    : dim_(dim),
      algebra_(std::make_shared<const ModelAlgebra>(
          ModelAlgebra::build(particle_catalog(dim), {}))),
      s_(algebra_.get(), Parity::odd, 1) {
    const ModelAlgebra& m = *algebra_;
    auto g = [&](const char* n, int c = 0, int j = 0) { return Poly::generator(m, m.gen(n, c, j)); };

    // S = p Dx - (1/2) e eta p p + (De+ - eta x+ p) c
    Poly S(&m);
    for (int mu = 0; mu < dim_; ++mu) S += g("p", mu) * g("x", mu, 1);
    for (int mu = 0; mu < dim_; ++mu)
        S -= g("e") * g("p", mu) * g("p", mu) * Rat(eta(mu, mu), 2);
    Poly gauge = g("e+", 0, 1);
    for (int mu = 0; mu < dim_; ++mu) gauge -= g("x+", mu) * g("p", mu) * Rat(eta(mu, mu));
    S += gauge * g("c");
    S_ = S;

    s_ = hamiltonian_vf(S_);

    // cross-check against the closed-form differential on every generator
    auto expect = [&](const char* n, int c, const Poly& want) {
        const Poly* got = s_.image(m.gen(n, c));
        Poly gp = got ? *got : Poly(&m);
        if (!(gp == want))
            throw ModelError(std::string("particle differential mismatch on ") + n);
    };
    for (int mu = 0; mu < dim_; ++mu) {
        expect("p", mu, Poly(&m));
        expect("x", mu, -(g("c") * g("p", mu) * Rat(eta(mu, mu))));
        expect("x+", mu, -g("p", mu, 1));
        Poly sp = g("x", mu, 1) - g("e") * g("p", mu) * Rat(eta(mu, mu)) +
                  g("c") * g("x+", mu) * Rat(eta(mu, mu));
        expect("p+", mu, sp);
    }
    expect("e", 0, -g("c", 0, 1));
    expect("c", 0, Poly(&m));
    Poly se(&m);
    for (int mu = 0; mu < dim_; ++mu) se -= g("p", mu) * g("p", mu) * Rat(eta(mu, mu), 2);
    expect("e+", 0, se);
    expect("c+", 0, gauge);

    // D = x+ Dx + p+ Dp - e De+ + c+ Dc
    Poly D(&m);
    for (int mu = 0; mu < dim_; ++mu) D += g("x+", mu) * g("x", mu, 1);
    for (int mu = 0; mu < dim_; ++mu) D += g("p+", mu) * g("p", mu, 1);
    D -= g("e") * g("e+", 0, 1);
    D += g("c+") * g("c", 0, 1);
    D_ = D;

    Poly G(&m);
    for (int mu = 0; mu < dim_; ++mu) G += g("x+", mu) * g("p+", mu);
    G += g("e") * g("c+");
    G_ = G;

    if (D_.ghost() != std::optional<int>(-1) || D_.parity() != std::optional<Parity>(Parity::odd))
        throw ModelError("translation current grading broken");
    if (G_.ghost() != std::optional<int>(-2) || G_.parity() != std::optional<Parity>(Parity::even))
        throw ModelError("covariance seed grading broken");
}

Poly ParticleModel::gen(const std::string& name, int comp, int jet) const {
    return Poly::generator(*algebra_, algebra_->gen(name, comp, jet));
}

Poly ParticleModel::gauge_cocycle() const {
    const ModelAlgebra& m = *algebra_;
    Poly r = Poly::generator(m, m.gen("e+", 0, 1));
    for (int mu = 0; mu < dim_; ++mu)
        r -= Poly::generator(m, m.gen("x+", mu)) * Poly::generator(m, m.gen("p", mu)) *
             Rat(eta(mu, mu));
    return r;
}

// ---------------------------------------------------------------------------

static std::vector<FieldDescriptor> super_catalog(int N) {
    auto cat = particle_catalog(10);
    cat[1].invertible_at_jet0 = true;  // p_mu invertible: charts of the momentum cover
    for (int n = 0; n <= N; ++n) {
        std::string nm = "th" + std::to_string(n);
        Parity pa = (n % 2 == 0) ? Parity::odd : Parity::even;
        cat.push_back({nm, 16, n, pa, false, std::nullopt, '.'});
        cat.push_back({nm + "+", 16, -1 - n, flip(pa), false, nm, '.'});
    }
    return cat;
}

SuperModel::SuperModel(int K, int N)
    : K_(K), N_(N),
      algebra_(std::make_shared<const ModelAlgebra>(
          ModelAlgebra::build(super_catalog(N), TruncationParams{K, N, 2, 4, 100}))),
      cl_(&clifford()),
      s_(algebra_.get(), Parity::odd, 1, /*strict=*/true) {
    if (N_ < K_ + 2) throw ModelError("tower too small: need N >= K + 2");
    build_differential();
}

Poly SuperModel::gen(const std::string& name, int comp, int jet) const {
    return Poly::generator(*algebra_, algebra_->gen(name, comp, jet));
}

SpinorVector SuperModel::theta(int n, int jet) const {
    if (n < 0 || n > N_) throw ModelError("tower overflow: th" + std::to_string(n));
    SpinorVector v = SpinorVector::zero(*algebra_, n % 2 == 0);
    std::string nm = "th" + std::to_string(n);
    for (int A = 0; A < 16; ++A) v.c[A] = gen(nm, A, jet);
    return v;
}

SpinorVector SuperModel::theta_plus(int n, int jet) const {
    if (n < 0 || n > N_) throw ModelError("tower overflow: th" + std::to_string(n) + "+");
    SpinorVector v = SpinorVector::zero(*algebra_, n % 2 != 0);
    std::string nm = "th" + std::to_string(n) + "+";
    for (int A = 0; A < 16; ++A) v.c[A] = gen(nm, A, jet);
    return v;
}

SpinorVector SuperModel::contract_gamma(const std::string& field, const SpinorVector& v) const {
    SpinorVector r = SpinorVector::zero(*algebra_, !v.plus_chirality);
    for (int mu = 0; mu < 10; ++mu)
        r = r + gamma_apply(*cl_, mu, v).scaled(gen(field, mu));
    return r;
}

SpinorVector SuperModel::psi(int n) const {
    if (n < psi_min() || n > psi_max())
        throw ModelError("psi index out of tower range: " + std::to_string(n));
    if (n >= 0) {
        // D th_n + (-1)^(n+1) x+ gamma th_{n+1} + 2 c+ th_{n+2}
        SpinorVector r = theta(n, 1);
        SpinorVector xg = contract_gamma("x+", theta(n + 1));
        r = r + ((n % 2 == 0) ? xg.scaled(Rat(-1)) : xg);
        r = r + theta(n + 2).scaled(gen("c+") * Rat(2));
        return r;
    }
    if (n == -1) {
        SpinorVector r = theta_plus(0);
        r = r + contract_gamma("x+", theta(0)).scaled(Rat(1, 2));
        r = r + theta(1).scaled(gen("c+") * Rat(2));
        return r;
    }
    return theta_plus(-n - 1).scaled(Rat(sign_binom2(n + 1)));
}

void SuperModel::build_differential() {
    const ModelAlgebra& m = *algebra_;
    s_.set_weight_drop_bound(1);
    auto g = [&](const char* n, int c = 0, int j = 0) { return Poly::generator(m, m.gen(n, c, j)); };
    auto T = [&](std::vector<int> idx, const SpinorVector& a, const SpinorVector& b) {
        return spinor_pairing(*cl_, idx, a, b);
    };

    // inherited from the particle; the momentum is closed
    for (int mu = 0; mu < 10; ++mu) s_.set_image(m.gen("p", mu), Poly(&m));
    Poly se(&m);
    for (int mu = 0; mu < 10; ++mu) se -= g("p", mu) * g("p", mu) * Rat(eta(mu, mu), 2);
    s_.set_image(m.gen("e+"), se);
    Poly gauge = g("e+", 0, 1);
    for (int mu = 0; mu < 10; ++mu) gauge -= g("x+", mu) * g("p", mu) * Rat(eta(mu, mu));
    s_.set_image(m.gen("c+"), gauge);
    for (int mu = 0; mu < 10; ++mu) s_.set_image(m.gen("x+", mu), -g("p", mu, 1));

    // s th_n = (-1)^(n+1) p gamma th_{n+1} - 2 e+ th_{n+2}
    for (int n = 0; n + 2 <= N_; ++n) {
        SpinorVector img = contract_gamma("p", theta(n + 1)).scaled(Rat(n % 2 == 0 ? -1 : 1));
        img = img - theta(n + 2).scaled(g("e+") * Rat(2));
        std::string nm = "th" + std::to_string(n);
        for (int A = 0; A < 16; ++A) s_.set_image(m.gen(nm, A), img.c[A]);
    }

    // s x^mu = -eta c p + (1/2) p_nu T(g^nu g^mu th0, th1) + e+ T^mu(th1,th1)
    //          - e+ T^mu(th0,th2)
    for (int mu = 0; mu < 10; ++mu) {
        Poly img = -(g("c") * g("p", mu) * Rat(eta(mu, mu)));
        for (int nu = 0; nu < 10; ++nu) {
            SpinorVector w = gamma_apply(*cl_, nu, gamma_apply(*cl_, mu, theta(0)));
            img += g("p", nu) * T({}, w, theta(1)) * Rat(1, 2);
        }
        img += g("e+") * T({mu}, theta(1), theta(1));
        img -= g("e+") * T({mu}, theta(0), theta(2));
        s_.set_image(m.gen("x", mu), img);
    }

    // s c = -p T^mu(th1,th1) - 4 e+ T(th1,th2)
    {
        Poly img(&m);
        for (int mu = 0; mu < 10; ++mu) img -= g("p", mu) * T({mu}, theta(1), theta(1));
        img -= g("e+") * T({}, theta(1), theta(2)) * Rat(4);
        s_.set_image(m.gen("c"), img);
    }

    // s e = -Dc + x+ T^mu(th1,th1) - 4 c+ T(th1,th2)
    //       + 2 sum_n (-1)^C(n,2) T(Psi_{-n}, th_{n+1})
    {
        Poly img = -g("c", 0, 1);
        for (int mu = 0; mu < 10; ++mu) img += g("x+", mu) * T({mu}, theta(1), theta(1));
        img -= g("c+") * T({}, theta(1), theta(2)) * Rat(4);
        for (int n = 0; n + 1 <= N_; ++n)
            img += T({}, psi(-n), theta(n + 1)) * Rat(2 * sign_binom2(n));
        s_.set_image(m.gen("e"), img);
    }

    // s p+^mu = Dx^mu - eta e p + (1/2) x+_nu T(g^nu g^mu th0, th1)
    //           - c+ T^mu(th1,th1) + c+ T^mu(th0,th2)
    //           + (1/2) T^mu(Psi_0, th0) + sum_{n>=1} (-1)^C(n,2) T^mu(Psi_{-n}, th_n)
    for (int mu = 0; mu < 10; ++mu) {
        // the ghost term c x+ is inherited from the particle action, whose
        // c-dependent part the superparticle action shares verbatim
        Poly img = g("x", mu, 1) - g("e") * g("p", mu) * Rat(eta(mu, mu)) +
                   g("c") * g("x+", mu) * Rat(eta(mu, mu));
        for (int nu = 0; nu < 10; ++nu) {
            SpinorVector w = gamma_apply(*cl_, nu, gamma_apply(*cl_, mu, theta(0)));
            img += g("x+", nu) * T({}, w, theta(1)) * Rat(1, 2);
        }
        img -= g("c+") * T({mu}, theta(1), theta(1));
        img += g("c+") * T({mu}, theta(0), theta(2));
        img += T({mu}, psi(0), theta(0)) * Rat(1, 2);
        for (int n = 1; n <= N_; ++n)
            img += T({mu}, psi(-n), theta(n)) * Rat(sign_binom2(n));
        s_.set_image(m.gen("p+", mu), img);
    }

    // tower antifields, derived from the recursion on the composite spinors:
    // th_n+ for n >= 1 is a signed Psi_{-n-1}, and
    // s Psi_{-1} = p gamma Psi_0 - 2 e+ Psi_1 determines s th0+.
    auto s_psi_rhs = [&](int n) {  // (-1)^(n+1) p gamma Psi_{n+1} - 2 e+ Psi_{n+2}
        SpinorVector r = contract_gamma("p", psi(n + 1)).scaled(Rat(n % 2 == 0 ? -1 : 1));
        return r - psi(n + 2).scaled(g("e+") * Rat(2));
    };
    {
        SpinorVector rhs = s_psi_rhs(-1);
        // subtract s((1/2) x+ gamma th0 + 2 c+ th1), using the images above
        SpinorVector corr = contract_gamma("x+", theta(0)).scaled(Rat(1, 2));
        corr = corr + theta(1).scaled(g("c+") * Rat(2));
        for (int A = 0; A < 16; ++A)
            s_.set_image(m.gen("th0+", A), rhs.c[A] - s_.apply(corr.c[A]));
    }
    for (int n = 1; n <= N_; ++n) {
        SpinorVector rhs = s_psi_rhs(-n - 1).scaled(Rat(sign_binom2(n + 1)));
        std::string nm = "th" + std::to_string(n) + "+";
        for (int A = 0; A < 16; ++A) s_.set_image(m.gen(nm, A), rhs.c[A]);
    }
}

Poly SuperModel::density_D() const {
    const ModelAlgebra& m = *algebra_;
    Poly D(&m);
    for (int mu = 0; mu < 10; ++mu) D += gen("x+", mu) * gen("x", mu, 1);
    for (int mu = 0; mu < 10; ++mu) D += gen("p+", mu) * gen("p", mu, 1);
    D -= gen("e") * gen("e+", 0, 1);
    D += gen("c+") * gen("c", 0, 1);
    for (int n = 0; n <= N_; ++n)
        D += spinor_pairing(*cl_, {}, theta_plus(n), theta(n, 1));
    if (D.ghost() != std::optional<int>(-1)) throw ModelError("D grading broken");
    return D;
}

SpinorVector SuperModel::density_Q() const {
    SpinorVector q = theta_plus(0) - contract_gamma("x+", theta(0)).scaled(Rat(1, 2));
    for (auto& comp : q.c) {
        if (comp.is_zero()) continue;
        if (comp.ghost() != std::optional<int>(-1) ||
            comp.parity() != std::optional<Parity>(Parity::even))
            throw ModelError("Q grading broken");
    }
    return q;
}

Poly SuperModel::density_M(int mu, int nu) const {
    const ModelAlgebra& m = *algebra_;
    // orbital parts with unit strength; the spinor representation acts
    // through gamma^{mu nu}/2, so the tower pairing enters with one half --
    // the closure of s on the current and the so(9,1) relations pin this
    Poly M(&m);
    M += gen("x", nu) * gen("x+", mu) * Rat(eta(mu, mu));
    M -= gen("x", mu) * gen("x+", nu) * Rat(eta(nu, nu));
    M -= gen("p+", nu) * gen("p", mu) * Rat(eta(mu, mu));
    M += gen("p+", mu) * gen("p", nu) * Rat(eta(nu, nu));
    for (int n = 0; n <= N_; ++n)
        M -= spinor_pairing(*cl_, {mu, nu}, theta_plus(n), theta(n)) * Rat(1, 2);
    if (!M.is_zero() &&
        (M.ghost() != std::optional<int>(-1) || M.parity() != std::optional<Parity>(Parity::odd)))
        throw ModelError("M grading broken");
    return M;
}

Poly SuperModel::density_G_seed() const {
    Poly G(algebra_.get());
    for (int mu = 0; mu < 10; ++mu) G += gen("x+", mu) * gen("p+", mu);
    G += gen("e") * gen("c+");
    return G;
}

Poly SuperModel::x_correction(int alpha, int mu) const {
    // R^{alpha mu} = p_nu T(g^alpha g^nu g^mu th0, th0) - 4 e+ T^{alpha mu}(th0, th1)
    Poly r(algebra_.get());
    for (int nu = 0; nu < 10; ++nu) {
        SpinorVector w = gamma_apply(*cl_, alpha,
                          gamma_apply(*cl_, nu, gamma_apply(*cl_, mu, theta(0))));
        r += gen("p", nu) * spinor_pairing(*cl_, {}, w, theta(0));
    }
    r -= gen("e+") * spinor_pairing(*cl_, {alpha, mu}, theta(0), theta(1)) * Rat(4);
    return r;
}

Poly SuperModel::c_correction(int alpha) const {
    // F_alpha = p_mu T(g^mu g^alpha th0, th1) + 2 e+ T^alpha(th1,th1)
    //           - 2 e+ T^alpha(th0,th2)
    Poly r(algebra_.get());
    for (int mu = 0; mu < 10; ++mu) {
        SpinorVector w = gamma_apply(*cl_, mu, gamma_apply(*cl_, alpha, theta(0)));
        r += gen("p", mu) * spinor_pairing(*cl_, {}, w, theta(1));
    }
    r += gen("e+") * spinor_pairing(*cl_, {alpha}, theta(1), theta(1)) * Rat(2);
    r -= gen("e+") * spinor_pairing(*cl_, {alpha}, theta(0), theta(2)) * Rat(2);
    return r;
}

Poly SuperModel::half_inv_p(int alpha) const {
    return Poly::generator(*algebra_, algebra_->gen("p", alpha), -1) * Rat(eta(alpha, alpha), 2);
}

} // namespace bv
